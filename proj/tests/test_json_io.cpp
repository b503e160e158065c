#include "equihom/json_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <unistd.h>

using namespace equihom;

namespace {

std::filesystem::path scratch(const std::string &name) {
    auto p = std::filesystem::temp_directory_path() /
             ("equihom-json-" + std::to_string(::getpid()) + "-" + name);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST(JsonIo, GraphRoundTripAndSymmetrization) {
    auto k4 = make_complete(4);
    auto j = to_json(*k4);
    EXPECT_EQ(j["vertices"], 4);
    EXPECT_EQ(j["edges"].size(), 12u);
    bool fixed = true;
    EXPECT_EQ(*graph_from_json(j, &fixed), *k4);
    EXPECT_FALSE(fixed);

    auto one_way = json::parse(R"({"vertices": 3, "edges": [[0,1],[1,2],[2,0]]})");
    auto g = graph_from_json(one_way, &fixed);
    EXPECT_TRUE(fixed);
    EXPECT_EQ(*g, *make_cycle(3));
    EXPECT_THROW(graph_from_json(json::parse(R"({"vertices": 2, "edges": [[0,5]]})")),
                 Error);
    EXPECT_THROW(graph_from_json(json::parse(R"({"edges": []})")), Error);
}

TEST(JsonIo, PolymorphismRoundTrip) {
    auto pol = enumerate_polymorphisms(make_cycle(3), 2, make_complete(4),
                                       EnumerationOptions{5, std::nullopt});
    for (const auto &f : pol.homs) {
        auto j = to_json(f);
        EXPECT_EQ(j["domain_base"], 3);
        EXPECT_EQ(j["arity"], 2);
        EXPECT_EQ(j["codomain"], 4);
        auto g = hom_from_json(j);
        EXPECT_EQ(g.values, f.values);
        EXPECT_EQ(g.arity(), 2u);
    }
    auto bad = to_json(pol.homs.front());
    // (0,0) and (1,1) are adjacent in C3 x C3
    bad["values"][0] = bad["values"][4];
    EXPECT_THROW(hom_from_json(bad), Error);
    bad["values"] = json::array({0, 1});
    EXPECT_THROW(hom_from_json(bad), Error);
}

TEST(JsonIo, SimplicialSetRoundTrip) {
    for (const auto &x : {gamma_complex(8), sigma(2), *gamma_power(4, 2)}) {
        auto y = simplicial_set_from_json(to_json(x));
        EXPECT_EQ(y.labels(), x.labels());
        for (std::size_t d = 0; d <= x.cap(); ++d)
            EXPECT_EQ(y.cells(d), x.cells(d));
        EXPECT_EQ(*y.involution(), *x.involution());
    }
    auto j = to_json(gamma_complex(4));
    j["involution"] = {0, 0, 1, 2};
    EXPECT_THROW(simplicial_set_from_json(j), Error);
    j.erase("involution");
    j["simplices"]["2"] = json::array({json::array({0, 1, 2})});
    EXPECT_THROW(simplicial_set_from_json(j), Error); // cap is 3, face {0,2} missing
}

TEST(JsonIo, TFileRoundTripAndValidation) {
    auto t = search_t_colouring();
    auto j = t_to_json(t);
    EXPECT_EQ(j["complex"], "HomK2K4");
    EXPECT_EQ(j["order"], "canonical-v1");
    EXPECT_EQ(t_from_json(j), t);
    auto flipped = j;
    flipped["colours"][0] = 1 - flipped["colours"][0].get<int>();
    EXPECT_THROW(t_from_json(flipped), Error); // breaks equivariance
    auto other = j;
    other["order"] = "something-else";
    EXPECT_THROW(t_from_json(other), Error);
}

TEST(JsonIo, PersistedTIsReused) {
    auto dir = scratch("t");
    auto first = load_or_search_t(dir);
    EXPECT_FALSE(first.loaded);
    EXPECT_TRUE(std::filesystem::exists(first.path));
    auto second = load_or_search_t(dir);
    EXPECT_TRUE(second.loaded);
    EXPECT_EQ(second.colours, first.colours);
    EXPECT_EQ(fingerprint_hex(second.colours), fingerprint_hex(first.colours));
    EXPECT_EQ(fingerprint_hex(first.colours).size(), 16u);
    std::filesystem::remove_all(dir);
}

TEST(JsonIo, Reports) {
    auto t = search_t_colouring();
    auto e = collect_homs(make_cycle(3), make_complete(4)).homs.front();
    auto f = dictator(e, 2, 1);
    auto r = phi_record(f, phi(f, t), t);
    EXPECT_EQ(r["ell"], 3);
    EXPECT_EQ(r["arity"], 2);
    EXPECT_EQ(r["alpha"], json::array({0, 1}));
    EXPECT_EQ(r["t_fingerprint"], fingerprint_hex(t));

    auto c = cohomology_record(2, 4, 1, Coefficients::z_minus, bredon_torus(2, 4, 1));
    EXPECT_EQ(c.dump(),
              R"({"n":2,"L":4,"d":1,"coefficients":"Zminus","free_rank":0,"torsion":[2]})");
    auto z = to_json(zeta0(7, 1, 4));
    EXPECT_EQ(z["period"], 12);
    EXPECT_EQ(z["h"], 1);
}
