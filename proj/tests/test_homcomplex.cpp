#include "equihom/homcomplex.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace equihom;

namespace {

// Ordered pairs of disjoint non-empty subsets of a k-clique: assign every
// vertex to left, right or neither.
std::size_t clique_multihom_count(std::size_t k) {
    std::size_t count = 0, total = 1;
    for (std::size_t i = 0; i < k; ++i)
        total *= 3;
    for (std::size_t x = 0; x < total; ++x) {
        bool l = false, r = false;
        for (std::size_t y = x, i = 0; i < k; ++i, y /= 3) {
            l = l || y % 3 == 1;
            r = r || y % 3 == 2;
        }
        count += l && r;
    }
    return count;
}

bool leq(const Multihom &a, const Multihom &b) { return a.leq(b); }

} // namespace

TEST(HomComplex, CliqueComplexes) {
    for (std::size_t k : {2, 3, 4, 5})
        EXPECT_EQ(enumerate_multihoms(*make_complete(k)).size(),
                  clique_multihom_count(k));
    const auto &h = hom_k4();
    EXPECT_EQ(h.complex->vertex_count(), 50u);
    EXPECT_EQ(h.complex->dimension(), 2u);
    EXPECT_EQ(h.complex->cell_count(3), 0u);
    EXPECT_TRUE(h.complex->involution_is_free());
    EXPECT_EQ(mod2_betti(*h.complex), (std::vector<std::size_t>{1, 0, 1}));
    for (const auto &m : h.elements)
        EXPECT_TRUE(m.is_valid(*h.graph));
    // canonical order: weight first
    for (std::size_t i = 1; i < h.elements.size(); ++i)
        EXPECT_LE(h.elements[i - 1].weight(), h.elements[i].weight());
    EXPECT_EQ(h.elements.front().to_string(), "01");
}

TEST(HomComplex, RejectsLoops) {
    std::vector<std::pair<Vertex, Vertex>> e{{0, 0}, {0, 1}};
    auto g = std::make_shared<const Graph>(Graph::from_edges(2, e));
    try {
        build_hom_complex(g);
        ADD_FAILURE();
    } catch (const Error &err) {
        EXPECT_EQ(err.kind(), ErrorKind::unsupported_input);
    }
}

TEST(HomComplex, CycleComplexes) {
    for (std::size_t l : {3, 5, 7}) {
        const auto &h = hom_cycle(l);
        EXPECT_EQ(h.complex->vertex_count(), 4 * l);
        EXPECT_EQ(h.complex->cell_count(1), 4 * l);
        EXPECT_EQ(h.complex->cell_count(2), 0u);
        EXPECT_EQ(mod2_betti(*h.complex), (std::vector<std::size_t>{1, 1}));
    }
    EXPECT_THROW(canonical_cycle_iso(4), Error);
}

TEST(HomComplex, CycleIsoWalksAngularOrder) {
    // labels of Hom(K2, K3) in the order they appear around the circle
    const std::vector<std::string> around{"20", "12|0", "10", "1|02", "12", "01|2",
                                       "02", "0|12", "01", "02|1", "21", "2|01"};
    auto iso = canonical_cycle_iso(3);
    const auto &h = hom_cycle(3);
    std::optional<std::size_t> rotation;
    for (std::size_t r = 0; r < 12; ++r) {
        bool ok = true;
        for (std::size_t k = 0; k < 12; ++k)
            ok = ok && h.elements[iso.vertex_map[k]].to_string() == around[(k + r) % 12];
        if (ok)
            rotation = r;
    }
    ASSERT_TRUE(rotation.has_value());
    EXPECT_TRUE(iso.is_equivariant());
    for (Vertex k = 0; k < 12; ++k)
        EXPECT_EQ(h.elements[iso.vertex_map[(k + 6) % 12]],
                  h.elements[iso.vertex_map[k]].swapped());
}

TEST(HomComplex, CycleIsoIsBijectiveOnSimplices) {
    for (std::size_t l : {3, 5, 7, 9}) {
        auto iso = canonical_cycle_iso(l);
        std::set<Simplex> images;
        for (const auto &e : iso.domain->cells(1)) {
            auto img = iso.image(e);
            EXPECT_TRUE(iso.codomain->index_of(img).has_value());
            images.insert(img);
        }
        EXPECT_EQ(images.size(), iso.codomain->cell_count(1));
        EXPECT_TRUE(iso.is_equivariant());
    }
}

TEST(HomComplex, IotaProperties) {
    const auto &h = hom_cycle(3);
    const auto &el = h.elements;
    // unary
    for (const auto &m : el)
        EXPECT_EQ(iota(std::span(&m, 1)), m);
    auto a = Multihom::from_lists(3, {0}, {1});
    auto b = Multihom::from_lists(3, {2}, {0});
    std::vector<Multihom> ab{a, b};
    EXPECT_EQ(iota(ab), Multihom::from_lists(9, {0 * 3 + 2}, {1 * 3 + 0}));

    auto g2 = power(make_cycle(3), 2);
    std::set<Multihom> images;
    for (const auto &x : el)
        for (const auto &y : el) {
            std::vector<Multihom> ms{x, y};
            auto m = iota(ms);
            EXPECT_TRUE(m.is_valid(g2));
            images.insert(m);
            std::vector<Multihom> sw{x.swapped(), y.swapped()};
            EXPECT_EQ(iota(sw), m.swapped());
            for (const auto &z : el)
                if (leq(x, z)) {
                    std::vector<Multihom> up{z, y};
                    EXPECT_TRUE(m.leq(iota(up)));
                }
        }
    EXPECT_EQ(images.size(), 144u);
}

TEST(HomComplex, MuPrimeAgreesWithProductPushForward) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto pol2 = enumerate_polymorphisms(c3, 2, k4);
    const auto &el = hom_cycle(3).elements;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto &f = pol2.homs[rng() % pol2.homs.size()];
        std::vector<Multihom> ms{el[rng() % 12], el[rng() % 12]};
        auto m = mu_prime(f, ms);
        EXPECT_EQ(m, push_forward(f, iota(ms)));
        EXPECT_TRUE(m.is_valid(*k4));
        std::vector<Multihom> sw{ms[0].swapped(), ms[1].swapped()};
        EXPECT_EQ(mu_prime(f, sw), m.swapped());
    }
    // identity
    auto id = collect_homs(c3, c3).homs.front();
    for (const auto &m : el)
        EXPECT_EQ(mu_prime(id, std::span(&m, 1)), m);
    // dictator depends only on the first argument
    auto e = collect_homs(c3, k4).homs.front();
    auto d = dictator(e, 2, 0);
    for (const auto &x : el) {
        std::vector<Multihom> one{x};
        for (const auto &y : el) {
            std::vector<Multihom> ms{x, y};
            EXPECT_EQ(mu_prime(d, ms), mu_prime(e, one));
        }
    }
}

TEST(HomComplex, LaxMinorInequality) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto pol2 = enumerate_polymorphisms(c3, 2, k4);
    const auto &el = hom_cycle(3).elements;
    ASSERT_FALSE(pol2.homs.empty());
    for (std::size_t m = 1; m <= 2; ++m)
        for (const auto &pi : MinorSpec::all(2, m))
            for (const auto &f : pol2.homs) {
                auto fp = minor(f, pi);
                TupleCodec codec{12, m};
                for (std::size_t x = 0; x < codec.size(); ++x) {
                    auto digits = codec.decode(x);
                    std::vector<Multihom> ms(m), pulled(2);
                    for (std::size_t j = 0; j < m; ++j)
                        ms[j] = el[digits[j]];
                    for (std::size_t i = 0; i < 2; ++i)
                        pulled[i] = ms[pi.targets[i]];
                    ASSERT_TRUE(mu_prime(fp, ms).leq(mu_prime(f, pulled)));
                }
            }
}

TEST(HomComplex, TColouring) {
    auto t = search_t_colouring();
    ASSERT_EQ(t.size(), 50u);
    auto m = map_from_colouring(hom_k4().complex, t, true);
    EXPECT_TRUE(m.is_valid());
    EXPECT_TRUE(m.is_equivariant());
    const auto &nu = *hom_k4().complex->involution();
    for (Vertex v = 0; v < 50; ++v)
        EXPECT_NE(t[v], t[nu[v]]);
    EXPECT_EQ(search_t_colouring(), t);
    EXPECT_EQ(fingerprint(t), fingerprint(search_t_colouring()));
}

TEST(HomComplex, MuIsAnEquivariantMap) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto t = search_t_colouring();
    for (const auto &f : collect_homs(c3, k4).homs) {
        auto g = mu(f, t);
        EXPECT_EQ(g.domain->vertex_count(), 12u);
        EXPECT_TRUE(g.is_valid());
        EXPECT_TRUE(g.is_equivariant());
    }
    auto pol2 = enumerate_polymorphisms(c3, 2, k4);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = mu(pol2.homs[rng() % pol2.homs.size()], t);
        EXPECT_TRUE(g.is_valid() && g.is_equivariant());
        std::set<Vertex> colours(g.vertex_map.begin(), g.vertex_map.end());
        EXPECT_EQ(colours.size(), 2u);
    }
}
