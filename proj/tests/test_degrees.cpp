#include "equihom/degrees.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace equihom;

namespace {

// All equivariant colourings of Γ_L^n, orbit representatives taken in
// vertex order.
std::vector<Colouring> equivariant_colourings(std::size_t L, std::size_t n) {
    auto x = gamma_power(L, n);
    const auto &nu = *x->involution();
    std::vector<Vertex> reps;
    for (Vertex v = 0; v < x->vertex_count(); ++v)
        if (v < nu[v])
            reps.push_back(v);
    std::vector<Colouring> out;
    for (std::size_t bits = 0; bits < (std::size_t{1} << reps.size()); ++bits) {
        Colouring c(x->vertex_count());
        for (std::size_t r = 0; r < reps.size(); ++r) {
            c[reps[r]] = (bits >> r) & 1;
            c[nu[reps[r]]] = 1 - c[reps[r]];
        }
        out.push_back(std::move(c));
    }
    return out;
}

// deg1 straight from the definitions: walk the cycle at second coordinate
// 0 and enumerate chains (u < v < w) in the product order whose second
// coordinates stay in [0, L/2].
int deg1_oracle(const Colouring &c, std::size_t L) {
    auto less = [&](Vertex a, Vertex b) { return gamma_less(L, a, b); };
    auto leq = [&](Vertex a, Vertex b) { return a == b || less(a, b); };
    auto col = [&](std::size_t a, std::size_t b) { return c[a * L + b]; };
    int count = 0;
    for (Vertex a = 0; a < L; ++a)
        for (Vertex b = 0; b < L; ++b)
            if (less(a, b) && col(a, 0) == colour::blue && col(b, 0) == colour::yellow)
                ++count;
    std::vector<std::pair<Vertex, Vertex>> band;
    for (Vertex a = 0; a < L; ++a)
        for (Vertex b = 0; b <= L / 2; ++b)
            band.emplace_back(a, b);
    auto lt = [&](auto p, auto q) {
        return p != q && leq(p.first, q.first) && leq(p.second, q.second);
    };
    for (auto u : band)
        for (auto v : band)
            for (auto w : band)
                if (lt(u, v) && lt(v, w) && col(u.first, u.second) == colour::blue &&
                    col(v.first, v.second) == colour::yellow &&
                    col(w.first, w.second) == colour::blue)
                    ++count;
    return count % 2;
}

SimplicialMap as_map(std::size_t L, std::size_t n, const Colouring &c) {
    return map_from_colouring(gamma_power(L, n), c, false);
}

} // namespace

TEST(Degrees, BandBoundsCycleAndAntipode) {
    for (std::size_t L : {4, 8, 12})
        for (std::size_t Lp : {4, 8, 12}) {
            auto t = torus2(L, Lp);
            EXPECT_EQ(t->x1.cells.size(), L);
            EXPECT_EQ(boundary(t->b1), t->x1 + apply_involution(*t->complex, t->x1));
            EXPECT_TRUE(boundary(t->x1).empty());
        }
}

TEST(Degrees, WindingAndVerticalColourings) {
    for (std::size_t L : {4, 8, 12}) {
        auto t = torus2(L, L);
        EXPECT_EQ(deg1(as_map(L, 2, winding_colouring(L, 2, 0)), *t), 1);
        EXPECT_EQ(deg1(as_map(L, 2, winding_colouring(L, 2, 1)), *t), 0);
    }
}

TEST(Degrees, ExhaustiveSmallTorus) {
    auto t = torus2(4, 4);
    std::size_t odd = 0;
    for (const auto &c : equivariant_colourings(4, 2)) {
        auto g = as_map(4, 2, c);
        auto d = deg1(g, *t);
        ASSERT_EQ(d, deg1_oracle(c, 4));
        auto v = deg_vector(g, 4);
        EXPECT_EQ(v.weight() % 2, 1u);
        EXPECT_EQ(v.bits[0], d);
        // shifting either coordinate by 2 keeps deg1
        for (std::size_t i = 0; i < 2; ++i) {
            Colouring s(16);
            for (Vertex x = 0; x < 16; ++x) {
                std::size_t a = x / 4, b = x % 4;
                (i == 0 ? a : b) += 2;
                s[x] = c[(a % 4) * 4 + b % 4];
            }
            EXPECT_EQ(deg1(as_map(4, 2, s), *t), d);
        }
        if (d == 1) {
            ++odd;
            auto [a, b] = find_colour_swapping_edge(g, *t);
            EXPECT_NE(c[t->vertex(a, b)], c[t->vertex(a + 1, b)]);
        }
    }
    EXPECT_EQ(odd, 128u);
}

TEST(Degrees, SampledLargerTorus) {
    auto x = gamma_power(8, 2);
    const auto &nu = *x->involution();
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        Colouring c(64, 2);
        for (Vertex v = 0; v < 64; ++v)
            if (c[v] == 2) {
                c[v] = rng() & 1;
                c[nu[v]] = 1 - c[v];
            }
        auto g = map_from_colouring(x, c, true);
        EXPECT_EQ(deg1(g, 8, 8), deg1_oracle(c, 8));
        EXPECT_EQ(deg_vector(g, 8).weight() % 2, 1u);
    }
}

TEST(Degrees, SwappingEdgeWitness) {
    const std::size_t L = 8;
    auto t = torus2(L, L);
    auto [a, b] = find_colour_swapping_edge(as_map(L, 2, winding_colouring(L, 2, 0)), *t);
    EXPECT_TRUE(a == L / 2 - 1 || a == L - 1);
    (void)b;
    try {
        find_colour_swapping_edge(as_map(L, 2, winding_colouring(L, 2, 1)), *t);
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_parameter);
    }
}

TEST(Degrees, MinorMaps) {
    const std::size_t L = 4;
    auto c = equivariant_colourings(L, 2)[77];
    auto g = as_map(L, 2, c);
    EXPECT_EQ(minor_map(g, L, MinorSpec::identity(2)).vertex_map, g.vertex_map);
    auto sw = minor_map(g, L, MinorSpec(2, {1, 0}));
    for (Vertex x = 0; x < 16; ++x)
        EXPECT_EQ(sw.vertex_map[(x % 4) * 4 + x / 4], g.vertex_map[x]);
    for (const auto &pi : MinorSpec::all(2, 3))
        for (const auto &sigma : MinorSpec::all(3, 2)) {
            auto lhs = minor_map(minor_map(g, L, pi), L, sigma);
            auto rhs = minor_map(g, L, compose(sigma, pi));
            ASSERT_EQ(lhs.vertex_map, rhs.vertex_map);
        }
    EXPECT_THROW(minor_map(g, L, MinorSpec::identity(3)), Error);
}

TEST(Degrees, ProjectionsGiveUnitVectors) {
    for (std::size_t n : {1, 2, 3})
        for (std::size_t j = 0; j < n; ++j) {
            auto g = map_from_colouring(gamma_power(8, n), winding_colouring(8, n, j), true);
            EXPECT_EQ(deg_vector(g, 8), OddVector::unit(n, j));
        }
    for (const auto &c : equivariant_colourings(8, 1))
        EXPECT_EQ(deg_vector(as_map(8, 1, c), 8), OddVector::unit(1, 0));
}

TEST(Degrees, OddVectorMinors) {
    OddVector a{{1, 1, 1}};
    EXPECT_EQ(oddvector_minor(a, MinorSpec(1, {0, 0, 0})), OddVector{{1}});
    EXPECT_EQ(oddvector_minor(OddVector::unit(3, 0), MinorSpec(3, {2, 0, 1})),
              OddVector::unit(3, 2));
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        OddVector v{std::vector<std::uint8_t>(5)};
        for (auto &b : v.bits)
            b = rng() & 1;
        std::vector<std::uint32_t> t(5);
        for (auto &x : t)
            x = rng() % 3;
        EXPECT_EQ(oddvector_minor(v, MinorSpec(3, t)).weight() % 2, v.weight() % 2);
    }
    EXPECT_THROW(oddvector_minor(a, MinorSpec::identity(2)), Error);
}

TEST(Degrees, PhiOfDictatorsAndUnary) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto t = search_t_colouring();
    for (const auto &e : collect_homs(c3, k4).homs) {
        EXPECT_EQ(phi(e, t), OddVector::unit(1, 0));
        for (std::size_t j = 0; j < 2; ++j)
            EXPECT_EQ(phi(dictator(e, 2, j), t), OddVector::unit(2, j));
    }
    auto e = collect_homs(c3, k4).homs.front();
    for (std::size_t j = 0; j < 3; ++j)
        EXPECT_EQ(phi(dictator(e, 3, j), t), OddVector::unit(3, j));
}

TEST(Degrees, PhiRespectsMinors) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto t = search_t_colouring();
    auto pol2 = enumerate_polymorphisms(c3, 2, k4);
    for (const auto &f : pol2.homs) {
        auto a = phi(f, t);
        ASSERT_EQ(a.weight(), 1u);
        for (std::size_t m = 1; m <= 2; ++m)
            for (const auto &pi : MinorSpec::all(2, m))
                ASSERT_EQ(phi(minor(f, pi), t), oddvector_minor(a, pi));
    }
}

TEST(Degrees, MonomialMapsRealizeEveryOddVector) {
    for (std::size_t n = 1; n <= 3; ++n) {
        std::set<std::vector<std::uint8_t>> seen;
        for (std::size_t mask = 1; mask < (1u << n); ++mask) {
            OddVector alpha{std::vector<std::uint8_t>(n)};
            for (std::size_t i = 0; i < n; ++i)
                alpha.bits[i] = (mask >> i) & 1;
            if (alpha.weight() % 2 == 0)
                continue;
            auto g = monomial_map(8, alpha);
            EXPECT_TRUE(g.is_valid());
            EXPECT_TRUE(g.is_equivariant());
            EXPECT_EQ(deg_vector(g, 8), alpha);
            seen.insert(alpha.bits);
        }
        EXPECT_EQ(seen.size(), std::size_t{1} << (n - 1));
    }
}

TEST(Degrees, MonomialColouringRejectsBadSupport) {
    std::vector<std::size_t> even{0, 1}, big{0, 1, 2, 3, 4}, out{3};
    EXPECT_THROW(monomial_colouring(8, 3, even), Error);
    EXPECT_THROW(monomial_colouring(8, 5, big), Error);
    EXPECT_THROW(monomial_colouring(8, 3, out), Error);
}
