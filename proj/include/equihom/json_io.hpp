#pragma once

// JSON forms of graphs, polymorphisms, simplicial sets, the persisted
// colouring t and the report records written by the command-line tool.

#include "equihom/degrees.hpp"
#include "equihom/error.hpp"
#include "equihom/graph.hpp"
#include "equihom/homcomplex.hpp"
#include "equihom/simplicial.hpp"
#include "equihom/slices.hpp"
#include "equihom/zz2.hpp"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <fstream>
#include <string>
#include <vector>

namespace equihom {

using json = nlohmann::ordered_json;

namespace detail {

template <class T>
T field(const json &j, const char *key) {
    require(j.is_object() && j.contains(key), ErrorKind::invalid_input,
            std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        fail(ErrorKind::invalid_input,
             std::string("bad field \"") + key + "\": " + e.what());
    }
}

} // namespace detail

// --- graphs and polymorphisms ------------------------------------------------

inline json to_json(const Graph &g) {
    json edges = json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    return {{"vertices", g.vertex_count()}, {"edges", std::move(edges)}};
}

/// Symmetric closure is applied; `symmetrized` reports whether the input
/// needed it.
inline GraphPtr graph_from_json(const json &j, bool *symmetrized = nullptr) {
    auto n = detail::field<std::size_t>(j, "vertices");
    auto raw = detail::field<std::vector<std::array<Vertex, 2>>>(j, "edges");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto [u, v] : raw)
        edges.emplace_back(u, v);
    bool symmetric = true;
    auto g = std::make_shared<const Graph>(Graph::from_edges(n, edges, true, &symmetric));
    if (symmetrized)
        *symmetrized = !symmetric;
    return g;
}

inline json to_json(const GraphHom &f) {
    return {{"domain_base", f.base()->vertex_count()},
            {"arity", f.arity()},
            {"codomain", f.codomain->vertex_count()},
            {"values", f.values}};
}

/// Polymorphism C_l^n -> K_k; the value list is checked to be a homomorphism.
inline GraphHom hom_from_json(const json &j) {
    auto ell = detail::field<std::size_t>(j, "domain_base");
    auto n = detail::field<std::size_t>(j, "arity");
    auto k = detail::field<std::size_t>(j, "codomain");
    require(ell >= 3 && n >= 1 && k >= 1, ErrorKind::invalid_input,
            "bad polymorphism parameters");
    GraphHom f;
    f.domain = std::make_shared<const Graph>(power(make_cycle(ell), n));
    f.codomain = make_complete(k);
    f.values = detail::field<std::vector<Vertex>>(j, "values");
    require(f.values.size() == f.domain->vertex_count(), ErrorKind::invalid_input,
            "value list has the wrong length");
    require(f.preserves_edges(), ErrorKind::invalid_input,
            "values do not define a homomorphism");
    return f;
}

// --- simplicial sets ---------------------------------------------------------

inline json to_json(const SimplicialSet &x) {
    json simplices = json::object();
    for (std::size_t d = 1; d <= x.cap(); ++d)
        simplices[std::to_string(d)] = x.cells(d);
    json out = {{"vertices", x.labels()}, {"cap", x.cap()}, {"simplices", simplices}};
    if (x.has_involution()) {
        std::vector<Vertex> inv(x.vertex_count());
        for (Vertex v = 0; v < inv.size(); ++v)
            inv[v] = x.apply_involution(std::vector<Vertex>{v})[0];
        out["involution"] = inv;
    }
    return out;
}

inline SimplicialSet simplicial_set_from_json(const json &j) {
    auto labels = detail::field<std::vector<std::string>>(j, "vertices");
    auto cap = detail::field<std::size_t>(j, "cap");
    std::vector<std::vector<Simplex>> cells(cap + 1);
    if (j.contains("simplices")) {
        const auto &s = j.at("simplices");
        require(s.is_object(), ErrorKind::invalid_input, "simplices must be an object");
        for (const auto &[key, list] : s.items()) {
            std::size_t d = 0;
            try {
                d = std::stoul(key);
            } catch (const std::exception &) {
                fail(ErrorKind::invalid_input, "bad simplex dimension \"" + key + "\"");
            }
            require(d >= 1 && d <= cap, ErrorKind::invalid_input,
                    "simplex dimension outside 1..cap");
            cells[d] = detail::field<std::vector<Simplex>>(s, key.c_str());
        }
    }
    std::optional<std::vector<Vertex>> inv;
    if (j.contains("involution"))
        inv = detail::field<std::vector<Vertex>>(j, "involution");
    return SimplicialSet::build(std::move(labels), cap, std::move(cells), std::move(inv));
}

// --- the colouring t ---------------------------------------------------------

inline constexpr const char *t_complex_name = "HomK2K4";
inline constexpr const char *t_order_name = "canonical-v1";
inline constexpr const char *t_file_name = "t_HomK2K4.json";

inline std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

inline std::string fingerprint_hex(std::span<const std::uint8_t> c) {
    return hex64(fingerprint(c));
}

inline json t_to_json(std::span<const std::uint8_t> t) {
    return {{"complex", t_complex_name},
            {"order", t_order_name},
            {"colours", std::vector<int>(t.begin(), t.end())}};
}

/// Parses and validates a t file: it must be an equivariant simplicial
/// map Hom(K2,K4) -> Σ² in the canonical vertex order.
inline Colouring t_from_json(const json &j) {
    require(detail::field<std::string>(j, "complex") == t_complex_name,
            ErrorKind::invalid_input, "t file is for another complex");
    require(detail::field<std::string>(j, "order") == t_order_name,
            ErrorKind::invalid_input, "t file uses an unknown vertex order");
    auto raw = detail::field<std::vector<int>>(j, "colours");
    const auto &hk = hom_k4();
    require(raw.size() == hk.complex->vertex_count(), ErrorKind::invalid_input,
            "t file has the wrong number of colours");
    Colouring c;
    for (int x : raw) {
        require(x == 0 || x == 1, ErrorKind::invalid_input, "colours must be 0 or 1");
        c.push_back(static_cast<std::uint8_t>(x));
    }
    map_from_colouring(hk.complex, c, true);
    return c;
}

inline json read_json_file(const std::filesystem::path &p) {
    std::ifstream in(p);
    require(in.good(), ErrorKind::invalid_input, "cannot open " + p.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        fail(ErrorKind::invalid_input, p.string() + ": " + e.what());
    }
}

/// Writes via a temporary file and rename, so readers never see a partial file.
inline void write_json_file(const std::filesystem::path &p, const json &j) {
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    auto tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        require(out.good(), ErrorKind::invalid_input, "cannot write " + tmp.string());
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, p);
}

struct PersistedT {
    Colouring colours;
    std::filesystem::path path;
    bool loaded = false; // false when freshly searched
};

/// Loads t from `dir`, or searches for it and writes it there.
inline PersistedT load_or_search_t(const std::filesystem::path &dir) {
    PersistedT out;
    out.path = dir / t_file_name;
    if (std::filesystem::exists(out.path)) {
        out.colours = t_from_json(read_json_file(out.path));
        out.loaded = true;
        return out;
    }
    out.colours = search_t_colouring();
    write_json_file(out.path, t_to_json(out.colours));
    return out;
}

// --- reports -----------------------------------------------------------------

inline json to_json(const OddVector &v) { return v.bits; }

inline json phi_record(const GraphHom &f, const OddVector &alpha,
                       std::span<const std::uint8_t> t) {
    return {{"ell", f.base()->vertex_count()},
            {"arity", f.arity()},
            {"f", f.values},
            {"alpha", to_json(alpha)},
            {"t_fingerprint", fingerprint_hex(t)}};
}

inline json to_json(const CohomologyGroup &h) {
    json t = json::array();
    for (const auto &x : h.torsion) {
        if (x <= Integer(std::numeric_limits<long long>::max()))
            t.push_back(x.convert_to<long long>());
        else
            t.push_back(x.str());
    }
    return {{"free_rank", h.free_rank}, {"torsion", t}};
}

inline json cohomology_record(std::size_t n, std::size_t L, std::size_t d,
                              Coefficients c, const CohomologyGroup &h) {
    auto g = to_json(h);
    return {{"n", n},
            {"L", L},
            {"d", d},
            {"coefficients", to_string(c)},
            {"free_rank", g["free_rank"]},
            {"torsion", g["torsion"]}};
}

inline json to_json(const GeneralizedDiagonal &z) {
    json out = {{"L", z.L}, {"n", z.n}};
    if (z.h)
        out["h"] = *z.h;
    out["period"] = z.period();
    out["path"] = z.path;
    return out;
}

inline std::string to_string(const Fraction &f) {
    return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

inline json to_json(const ArityReport &r) {
    json rows = json::array();
    for (const auto &row : r.rows) {
        json fr = json::array();
        for (const auto &f : row.min_swap_fraction_by_height)
            fr.push_back(to_string(f));
        rows.push_back({{"n", row.n},
                        {"polymorphisms", row.polymorphisms},
                        {"exhaustive", row.exhaustive},
                        {"truncated", row.truncated},
                        {"max_weight", row.max_weight},
                        {"all_weights_odd", row.all_weights_odd},
                        {"chains_sampled", row.chains_sampled},
                        {"max_chain_alternations", row.max_chain_alternations},
                        {"min_swap_fraction_by_height", fr}});
    }
    return {{"ell", r.ell},
            {"seed", r.seed},
            {"t_fingerprint", hex64(r.t_fingerprint)},
            {"rows", rows}};
}

} // namespace equihom
