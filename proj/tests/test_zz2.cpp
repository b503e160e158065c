#include "equihom/homcomplex.hpp"
#include "equihom/zz2.hpp"

#include <gtest/gtest.h>

using namespace equihom;

namespace {

CohomologyGroup free_group(std::size_t r) { return CohomologyGroup{r, {}}; }

} // namespace

TEST(Zz2, OrbitsHalveTheCells) {
    for (const auto &x : {gamma_complex(4), sigma(2), *gamma_power(4, 2)}) {
        auto c = equivariant_complex(x, x.cap());
        for (std::size_t d = 0; d <= x.cap(); ++d)
            EXPECT_EQ(2 * c.rank(d), x.cell_count(d));
    }
    auto g = equivariant_complex(gamma_complex(4), 1);
    EXPECT_EQ(g.rank(0), 2u);
    EXPECT_EQ(g.rank(1), 2u);
}

TEST(Zz2, FixedCellIsRejected) {
    auto x = SimplicialSet::build({"a", "b"}, 1, {{}, {}}, std::vector<Vertex>{0, 1});
    EXPECT_THROW(equivariant_complex(x, 1), Error);
    EXPECT_THROW(equivariant_complex(sigma(1, 1), 2), Error);
}

TEST(Zz2, BoundaryEntriesAreSignedGroupElements) {
    // in Γ_4 each edge orbit has boundary ±1 and ±ν on the two vertex orbits
    auto c = equivariant_complex(gamma_complex(4), 1);
    for (const auto &[ij, v] : c.boundary[1])
        EXPECT_EQ(std::abs(v.a) + std::abs(v.b), 1);
}

TEST(Zz2, OrdinaryCohomologyOfTorusAndSpheres) {
    auto t = gamma_power(4, 2, 3);
    EXPECT_EQ(ordinary_cohomology(*t, 0), free_group(1));
    EXPECT_EQ(ordinary_cohomology(*t, 1), free_group(2));
    EXPECT_EQ(ordinary_cohomology(*t, 2), free_group(1));
    auto s = sigma(2, 3);
    EXPECT_EQ(ordinary_cohomology(s, 1), free_group(0));
    EXPECT_EQ(ordinary_cohomology(s, 2), free_group(1));
    const auto &hk = *hom_k4().complex;
    EXPECT_EQ(ordinary_cohomology(hk, 0), free_group(1));
    EXPECT_EQ(ordinary_cohomology(hk, 1), free_group(0));
    EXPECT_EQ(ordinary_cohomology(hk, 2), free_group(1));
}

TEST(Zz2, ProjectivePlaneCoefficients) {
    // quotient of the antipodal 2-sphere
    auto s = sigma(2, 3);
    EXPECT_EQ(bredon_cohomology(s, 0, Coefficients::z_minus), free_group(0));
    EXPECT_EQ(bredon_cohomology(s, 1, Coefficients::z_minus), elementary_two_group(1));
    EXPECT_EQ(bredon_cohomology(s, 2, Coefficients::z_minus), free_group(1));
    EXPECT_EQ(bredon_cohomology(s, 0, Coefficients::z_plus), free_group(1));
    EXPECT_EQ(bredon_cohomology(s, 1, Coefficients::z_plus), free_group(0));
    EXPECT_EQ(bredon_cohomology(s, 2, Coefficients::z_plus), elementary_two_group(1));
    // free coefficients recover the sphere itself
    EXPECT_EQ(bredon_cohomology(s, 1, Coefficients::z_z2), free_group(0));
    EXPECT_EQ(bredon_cohomology(s, 2, Coefficients::z_z2), free_group(1));
    const auto &hk = *hom_k4().complex;
    for (std::size_t d = 0; d <= 2; ++d)
        EXPECT_EQ(bredon_cohomology(hk, d, Coefficients::z_minus),
                  bredon_cohomology(s, d, Coefficients::z_minus));
}

TEST(Zz2, BredonTableOfTori) {
    for (std::size_t L : {4u, 8u})
        for (std::size_t n = 1; n <= 3; ++n) {
            EXPECT_EQ(bredon_torus(n, L, 0), free_group(0));
            for (std::size_t d = 1; d <= n; ++d)
                EXPECT_EQ(bredon_torus(n, L, d),
                          elementary_two_group(binomial(n - 1, d - 1)))
                    << "n=" << n << " L=" << L << " d=" << d;
        }
}

TEST(Zz2, OtherCoefficientsOnTori) {
    // the diagonal half-turn quotient is again a torus
    for (std::size_t n = 1; n <= 2; ++n) {
        const auto &t = *full_torus(n, 4);
        for (std::size_t d = 0; d <= n; ++d) {
            EXPECT_EQ(bredon_cohomology(t, d, Coefficients::z_plus),
                      free_group(binomial(n, d)));
            EXPECT_EQ(bredon_cohomology(t, d, Coefficients::z_z2),
                      free_group(binomial(n, d)));
        }
    }
}

TEST(Zz2, LargeTorusNeedsOverride) {
    EXPECT_THROW(full_torus(4, 4), Error);
    EXPECT_THROW(bredon_torus(2, 4, 3), Error);
}

TEST(Zz2, CoveringMapCheck) {
    for (std::size_t d = 1; d <= 2; ++d) {
        auto rec = quotient_pstar_check(2, 8, d);
        EXPECT_TRUE(rec.injective);
        EXPECT_EQ(rec.cokernel, elementary_two_group(binomial(1, d - 1)));
        EXPECT_TRUE(rec.matches_bredon);
        std::size_t twos = 0, ones = 0;
        for (const auto &x : rec.invariants) {
            twos += x == 2;
            ones += x == 1;
        }
        EXPECT_EQ(twos, binomial(1, d - 1));
        EXPECT_EQ(ones, binomial(1, d));
    }
    auto one = quotient_pstar_check(1, 8, 1);
    EXPECT_EQ(one.invariants, (std::vector<Integer>{2}));
    EXPECT_THROW(quotient_pstar_check(2, 4, 1), Error);
}
