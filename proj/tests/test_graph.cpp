#include "equihom/graph.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace equihom;

namespace {

// (k-1)^n + (-1)^n (k-1): proper k-colourings of the n-cycle.
long long cycle_chromatic(long long n, long long k) {
    long long p = 1;
    for (long long i = 0; i < n; ++i)
        p *= (k - 1);
    return p + ((n % 2) ? -(k - 1) : (k - 1));
}

// Brute force over all k^n vertex maps.
std::size_t brute_force_homs(const Graph &dom, const Graph &cod) {
    TupleCodec codec{cod.vertex_count(), dom.vertex_count()};
    std::size_t count = 0;
    std::vector<Vertex> vals(dom.vertex_count());
    for (std::size_t x = 0; x < codec.size(); ++x) {
        codec.decode(x, vals);
        bool ok = true;
        for (auto [u, v] : dom.edges())
            ok = ok && cod.has_edge(vals[u], vals[v]);
        count += ok;
    }
    return count;
}

} // namespace

TEST(Graph, TemplatesHaveExpectedSize) {
    auto c3 = make_template(TemplateKind::cycle, 3);
    EXPECT_EQ(c3.vertex_count(), 3u);
    EXPECT_EQ(c3.edge_count(), 6u);
    auto k4 = make_template(TemplateKind::complete, 4);
    EXPECT_EQ(k4.vertex_count(), 4u);
    EXPECT_EQ(k4.edge_count(), 12u);
    auto c5 = make_template(TemplateKind::cycle, 5);
    EXPECT_EQ(c5.edge_count(), 10u);
    EXPECT_TRUE(c5.has_edge(0, 4));
    EXPECT_TRUE(c5.has_edge(4, 0));
    EXPECT_FALSE(c5.has_loops());
    // C3 is K3
    EXPECT_EQ(c3, make_template(TemplateKind::complete, 3));
}

TEST(Graph, TemplateRejectsBadSizes) {
    EXPECT_THROW(make_template(TemplateKind::cycle, 2), Error);
    EXPECT_THROW(make_template(TemplateKind::complete, 0), Error);
    try {
        make_template(TemplateKind::cycle, 1);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_parameter);
    }
}

TEST(Graph, FromEdgesSymmetrizes) {
    std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {1, 2}};
    bool sym = true;
    auto g = Graph::from_edges(3, e, true, &sym);
    EXPECT_FALSE(sym);
    EXPECT_TRUE(g.has_edge(1, 0));
    EXPECT_EQ(g.edge_count(), 4u);
    EXPECT_THROW(Graph::from_edges(3, e, false), Error);
    std::vector<std::pair<Vertex, Vertex>> bad{{0, 3}};
    EXPECT_THROW(Graph::from_edges(3, bad), Error);
}

TEST(Graph, PowerOfC3) {
    auto c3 = make_cycle(3);
    auto p1 = power(c3, 1);
    EXPECT_EQ(p1, *c3);
    auto p2 = power(c3, 2);
    EXPECT_EQ(p2.vertex_count(), 9u);
    for (Vertex u = 0; u < 9; ++u)
        EXPECT_EQ(p2.degree(u), 4u); // deg(u)*deg(v) = 2*2
}

TEST(Graph, PowerMatchesProductRule) {
    auto k2 = make_complete(2);
    auto p = power(k2, 2);
    EXPECT_EQ(p.vertex_count(), 4u);
    // categorical product: K2 x K2 is two disjoint edges
    EXPECT_EQ(p.edge_count(), 4u);
    // exhaustive oracle for a graph with a loop
    std::vector<std::pair<Vertex, Vertex>> e{{0, 0}, {0, 1}, {1, 2}};
    auto g = std::make_shared<const Graph>(Graph::from_edges(3, e));
    auto g3 = power(g, 3);
    TupleCodec codec{3, 3};
    for (std::size_t x = 0; x < 27; ++x)
        for (std::size_t y = 0; y < 27; ++y) {
            auto a = codec.decode(x), b = codec.decode(y);
            bool expect = true;
            for (int i = 0; i < 3; ++i)
                expect = expect && g->has_edge(a[i], b[i]);
            EXPECT_EQ(g3.has_edge(x, y), expect);
        }
}

TEST(Graph, PowerCapacity) {
    auto c5 = make_cycle(5);
    EXPECT_THROW(power(c5, 20), Error);
    EXPECT_THROW(power(c5, 3, 100), Error);
    EXPECT_NO_THROW(power(c5, 3, 125));
}

TEST(Graph, HomCountsMatchOracles) {
    auto k3 = make_template(TemplateKind::complete, 3);
    auto k4 = make_template(TemplateKind::complete, 4);
    auto c5 = make_template(TemplateKind::cycle, 5);
    auto k2 = make_template(TemplateKind::complete, 2);
    auto count = [](const Graph &a, const Graph &b) {
        return enumerate_homs(a, b, [](auto) { return true; }).count;
    };
    EXPECT_EQ(count(k3, k4), 24u);
    EXPECT_EQ(count(c5, k3), 30u);
    EXPECT_EQ(count(c5, k2), 0u);
    for (std::size_t l : {3, 5, 7, 9})
        for (std::size_t k : {3, 4, 5}) {
            auto c = make_template(TemplateKind::cycle, l);
            auto kk = make_template(TemplateKind::complete, k);
            EXPECT_EQ(static_cast<long long>(count(c, kk)),
                      cycle_chromatic(static_cast<long long>(l),
                                      static_cast<long long>(k)));
        }
}

TEST(Graph, EnumerationIsLexicographicAndComplete) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto dom = std::make_shared<const Graph>(power(c3, 2));
    auto list = collect_homs(dom, k4);
    EXPECT_FALSE(list.truncated);
    EXPECT_EQ(list.homs.size(), brute_force_homs(*dom, *k4));
    for (std::size_t i = 1; i < list.homs.size(); ++i)
        EXPECT_LT(list.homs[i - 1].values, list.homs[i].values);
    for (const auto &h : list.homs)
        EXPECT_TRUE(h.preserves_edges());
}

TEST(Graph, EnumerationLimitTruncates) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto dom = std::make_shared<const Graph>(power(c3, 2));
    EnumerationOptions opt;
    opt.limit = 10;
    auto list = collect_homs(dom, k4, opt);
    EXPECT_EQ(list.homs.size(), 10u);
    EXPECT_TRUE(list.truncated);
    opt.limit = 24;
    auto unary = collect_homs(c3, k4, opt);
    EXPECT_EQ(unary.homs.size(), 24u);
    EXPECT_FALSE(unary.truncated);
}

TEST(Graph, ShuffledSamplingFindsValidHoms) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto dom = std::make_shared<const Graph>(power(c3, 3));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto f = sample_hom(dom, k4, seed);
        ASSERT_TRUE(f.has_value());
        EXPECT_TRUE(f->preserves_edges());
    }
}

TEST(Graph, DiagonalAndPermutationMinors) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto pol2 = enumerate_polymorphisms(c3, 2, k4);
    ASSERT_FALSE(pol2.homs.empty());
    const auto &f = pol2.homs[pol2.homs.size() / 2];
    auto diag = minor(f, MinorSpec(1, {0, 0}));
    for (Vertex x = 0; x < 3; ++x)
        EXPECT_EQ(diag.values[x], f.values[x * 3 + x]);
    EXPECT_TRUE(diag.preserves_edges());

    // projection to coordinate 1 under the swap becomes projection to 2
    auto id = collect_homs(c3, c3).homs.front();
    auto proj1 = dictator(id, 2, 0);
    auto swapped = minor(proj1, MinorSpec(2, {1, 0}));
    auto proj2 = dictator(id, 2, 1);
    EXPECT_EQ(swapped.values, proj2.values);

    EXPECT_THROW(minor(f, MinorSpec(1, {0, 0, 0})), Error);
}

TEST(Graph, MinorFunctoriality) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto pol2 = enumerate_polymorphisms(c3, 2, k4);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const auto &f = pol2.homs[rng() % pol2.homs.size()];
        EXPECT_EQ(minor(f, MinorSpec::identity(2)).values, f.values);
        for (const auto &pi : MinorSpec::all(2, 3))
            for (const auto &sigma : MinorSpec::all(3, 2)) {
                auto lhs = minor(minor(f, pi), sigma);
                auto rhs = minor(f, compose(sigma, pi));
                ASSERT_EQ(lhs.values, rhs.values);
                // direct evaluation oracle
                auto composed = compose(sigma, pi);
                TupleCodec c2{3, 2};
                for (std::size_t z = 0; z < 9; ++z) {
                    auto zd = c2.decode(z);
                    std::vector<Vertex> x(2);
                    for (int i = 0; i < 2; ++i)
                        x[i] = zd[composed.targets[i]];
                    EXPECT_EQ(lhs.values[z], f.values[c2.encode(x)]);
                }
                EXPECT_TRUE(lhs.preserves_edges());
            }
    }
}
