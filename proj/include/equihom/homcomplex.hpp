#pragma once

// Multihomomorphisms K2 -> G, the complexes Hom(K2, G), the product map
// iota and the push-forward mu_prime, the identification of Hom(K2, C_l)
// with Γ_{4l}, and the colouring t of Hom(K2, K4).

#include "equihom/error.hpp"
#include "equihom/graph.hpp"
#include "equihom/simplicial.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace equihom {

using VertexSet = boost::dynamic_bitset<>;

/// A multihomomorphism K2 -> G: images of the two vertices of K2.
struct Multihom {
    VertexSet left;
    VertexSet right;

    Multihom() = default;
    Multihom(VertexSet l, VertexSet r) : left(std::move(l)), right(std::move(r)) {}
    static Multihom from_lists(std::size_t base_size,
                               std::initializer_list<Vertex> l,
                               std::initializer_list<Vertex> r) {
        Multihom m{VertexSet(base_size), VertexSet(base_size)};
        for (Vertex v : l)
            m.left.set(v);
        for (Vertex v : r)
            m.right.set(v);
        return m;
    }

    std::size_t base_size() const { return left.size(); }
    std::size_t weight() const { return left.count() + right.count(); }
    Multihom swapped() const { return {right, left}; }

    /// Componentwise inclusion.
    bool leq(const Multihom &o) const {
        return left.is_subset_of(o.left) && right.is_subset_of(o.right);
    }

    bool is_valid(const Graph &g) const {
        if (left.size() != g.vertex_count() || right.size() != g.vertex_count())
            return false;
        if (left.none() || right.none())
            return false;
        for (auto a = left.find_first(); a != VertexSet::npos; a = left.find_next(a))
            for (auto b = right.find_first(); b != VertexSet::npos;
                 b = right.find_next(b))
                if (!g.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b)))
                    return false;
        return true;
    }

    std::string to_string() const {
        auto part = [&](const VertexSet &s) {
            std::string out;
            const bool wide = s.size() > 10;
            for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v)) {
                if (wide && !out.empty())
                    out += ',';
                out += std::to_string(v);
            }
            return out;
        };
        if (left.count() == 1 && right.count() == 1 && base_size() <= 10)
            return part(left) + part(right);
        return part(left) + "|" + part(right);
    }

    friend bool operator==(const Multihom &, const Multihom &) = default;
    friend bool operator<(const Multihom &a, const Multihom &b) {
        if (a.left != b.left)
            return a.left < b.left;
        return a.right < b.right;
    }
};

/// Ordering used for vertex numbering: (weight, left mask, right mask)
/// with masks read as integers (bit v = vertex v).
inline bool canonical_less(const Multihom &a, const Multihom &b) {
    if (a.weight() != b.weight())
        return a.weight() < b.weight();
    auto mask_less = [](const VertexSet &x, const VertexSet &y) {
        for (std::size_t i = x.size(); i-- > 0;)
            if (x.test(i) != y.test(i))
                return y.test(i);
        return false;
    };
    if (a.left != b.left)
        return mask_less(a.left, b.left);
    return mask_less(a.right, b.right);
}

inline constexpr std::size_t max_multihom_base = 20;

/// All multihomomorphisms K2 -> g in canonical order.
inline std::vector<Multihom> enumerate_multihoms(const Graph &g) {
    const auto n = g.vertex_count();
    require(n <= max_multihom_base, ErrorKind::capacity_exceeded,
            "multihom enumeration supports at most 20 vertices");
    std::vector<std::uint32_t> nbr(n, 0);
    for (auto [u, v] : g.edges())
        nbr[u] |= std::uint32_t{1} << v;
    std::vector<Multihom> out;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t l = 1; l <= full; ++l) {
        std::uint32_t common = full;
        for (std::size_t v = 0; v < n; ++v)
            if (l >> v & 1)
                common &= nbr[v];
        // non-empty subsets of the common neighbourhood
        for (std::uint32_t r = common; r; r = (r - 1) & common)
            out.emplace_back(VertexSet(n, l), VertexSet(n, r));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

/// Hom(K2, G) together with its multihomomorphism labelling.
struct HomComplex {
    GraphPtr graph;
    std::vector<Multihom> elements;
    SimplicialSetPtr complex;
    std::map<Multihom, Vertex> index;

    Vertex vertex_of(const Multihom &m) const {
        auto it = index.find(m);
        require(it != index.end(), ErrorKind::invalid_input,
                "not a multihomomorphism of this complex: " + m.to_string());
        return it->second;
    }
};

/// Order complex of mhom(K2, g) under componentwise inclusion, with the
/// swap involution.
inline HomComplex build_hom_complex(const GraphPtr &g,
                                    std::size_t cap = default_dimension_cap) {
    require(!g->has_loops(), ErrorKind::unsupported_input,
            "hom complex needs a loopless graph");
    HomComplex h;
    h.graph = g;
    h.elements = enumerate_multihoms(*g);
    std::vector<std::string> labels;
    for (Vertex i = 0; i < h.elements.size(); ++i) {
        h.index.emplace(h.elements[i], i);
        labels.push_back(h.elements[i].to_string());
    }
    std::vector<Vertex> inv(h.elements.size());
    for (Vertex i = 0; i < h.elements.size(); ++i)
        inv[i] = h.index.at(h.elements[i].swapped());
    const auto &el = h.elements;
    h.complex = std::make_shared<const SimplicialSet>(order_complex(
        std::move(labels),
        [&el](Vertex a, Vertex b) { return el[a].leq(el[b]); }, cap,
        std::move(inv)));
    require(h.complex->involution_is_free(), ErrorKind::internal_error,
            "swap involution has a fixed point");
    return h;
}

inline SimplicialSet hom_complex(const GraphPtr &g,
                                 std::size_t cap = default_dimension_cap) {
    return *build_hom_complex(g, cap).complex;
}

/// Shared Hom(K2, K4).
inline const HomComplex &hom_k4() {
    static const HomComplex h = build_hom_complex(make_complete(4));
    return h;
}

/// Shared Hom(K2, C_l), l odd.
inline const HomComplex &hom_cycle(std::size_t l) {
    static std::mutex lock;
    static std::map<std::size_t, std::unique_ptr<HomComplex>> cache;
    std::lock_guard guard(lock);
    auto &slot = cache[l];
    if (!slot)
        slot = std::make_unique<HomComplex>(build_hom_complex(make_cycle(l)));
    return *slot;
}

// --- iota and mu_prime -------------------------------------------------------

/// Componentwise product of multihoms over G, as a multihom over G^n.
inline Multihom iota(std::span<const Multihom> ms) {
    require(!ms.empty(), ErrorKind::invalid_parameter, "iota of an empty tuple");
    const auto base = ms[0].base_size();
    for (const auto &m : ms)
        require(m.base_size() == base, ErrorKind::invalid_parameter,
                "iota components over different graphs");
    TupleCodec codec{base, ms.size()};
    auto product = [&](auto side) {
        VertexSet out(codec.size());
        std::vector<Vertex> digits(ms.size());
        for (std::size_t x = 0; x < codec.size(); ++x) {
            codec.decode(x, digits);
            bool in = true;
            for (std::size_t i = 0; i < ms.size() && in; ++i)
                in = (ms[i].*side).test(digits[i]);
            if (in)
                out.set(x);
        }
        return out;
    };
    return {product(&Multihom::left), product(&Multihom::right)};
}

/// Image of a multihom under a vertex map.
inline Multihom push_forward(const GraphHom &f, const Multihom &m) {
    const auto k = f.codomain->vertex_count();
    auto image = [&](const VertexSet &s) {
        VertexSet out(k);
        for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v))
            out.set(f.values[v]);
        return out;
    };
    return {image(m.left), image(m.right)};
}

/// u -> { f(v_1..v_n) : v_i in m_i(u) }, i.e. push_forward(f, iota(ms))
/// without materializing the product.
inline Multihom mu_prime(const GraphHom &f, std::span<const Multihom> ms) {
    require(ms.size() == f.arity(), ErrorKind::invalid_parameter,
            "mu_prime arity mismatch");
    const auto base = f.base()->vertex_count();
    const auto k = f.codomain->vertex_count();
    auto image = [&](auto side) {
        VertexSet out(k);
        std::vector<std::vector<Vertex>> choices(ms.size());
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const VertexSet &s = ms[i].*side;
            require(s.size() == base, ErrorKind::invalid_parameter,
                    "multihom over the wrong graph");
            for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v))
                choices[i].push_back(static_cast<Vertex>(v));
            if (choices[i].empty())
                return out;
        }
        std::vector<std::size_t> pos(ms.size(), 0);
        for (bool more = true; more;) {
            std::size_t x = 0;
            for (std::size_t i = 0; i < ms.size(); ++i)
                x = x * base + choices[i][pos[i]];
            out.set(f.values[x]);
            more = false;
            for (std::size_t i = ms.size(); i-- > 0;) {
                if (++pos[i] < choices[i].size()) {
                    more = true;
                    break;
                }
                pos[i] = 0;
            }
        }
        return out;
    };
    return {image(&Multihom::left), image(&Multihom::right)};
}

// --- Hom(K2, C_l) = Γ_{4l} ---------------------------------------------------

/// Vertex map Γ_{4l} -> Hom(K2, C_l): 0 goes to the seed ({0},{1}) and the
/// walk continues around the Hasse cycle, first step enlarging the left set.
inline SimplicialMap canonical_cycle_iso(std::size_t l) {
    require(l >= 3 && l % 2 == 1, ErrorKind::invalid_parameter,
            "cycle length must be odd and >= 3");
    const auto &h = hom_cycle(l);
    const std::size_t L = 4 * l;
    auto domain = std::make_shared<const SimplicialSet>(gamma_complex(L));
    require(h.elements.size() == L, ErrorKind::internal_error,
            "Hom(K2, C_l) has the wrong number of vertices");

    std::vector<std::vector<Vertex>> adj(L);
    for (const auto &e : h.complex->cells(1)) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    for (const auto &a : adj)
        require(a.size() == 2, ErrorKind::internal_error,
                "Hasse diagram of Hom(K2, C_l) is not a cycle");

    std::vector<Vertex> map(L);
    const Vertex seed = h.vertex_of(Multihom::from_lists(l, {0}, {1}));
    const Vertex grow_left = h.vertex_of(Multihom::from_lists(l, {0, 2}, {1}));
    map[0] = seed;
    map[1] = grow_left;
    for (std::size_t k = 2; k < L; ++k) {
        const auto &a = adj[map[k - 1]];
        map[k] = a[0] == map[k - 2] ? a[1] : a[0];
    }
    require(adj[map[L - 1]][0] == seed || adj[map[L - 1]][1] == seed,
            ErrorKind::internal_error, "walk does not close up");

    SimplicialMap iso{domain, h.complex, std::move(map)};
    std::vector<bool> hit(L, false);
    for (Vertex v : iso.vertex_map)
        hit[v] = true;
    require(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }),
            ErrorKind::internal_error, "iso is not bijective on vertices");
    require(iso.is_valid() && iso.is_equivariant(), ErrorKind::internal_error,
            "iso is not an equivariant simplicial map");
    require(h.complex->cell_count(1) == L && h.complex->cell_count(2) == 0,
            ErrorKind::internal_error, "iso is not bijective on simplices");
    return iso;
}

inline const SimplicialMap &cycle_iso(std::size_t l) {
    static std::mutex lock;
    static std::map<std::size_t, std::unique_ptr<SimplicialMap>> cache;
    std::lock_guard guard(lock);
    auto &slot = cache[l];
    if (!slot)
        slot = std::make_unique<SimplicialMap>(canonical_cycle_iso(l));
    return *slot;
}

// --- the colouring t ---------------------------------------------------------

using Colouring = std::vector<std::uint8_t>;

/// First equivariant 2-colouring of Hom(K2, K4), in canonical vertex order,
/// with no 3-alternating 3-simplex. Colours are tried yellow first, which
/// also fixes the colour of the first orbit.
inline Colouring search_t_colouring() {
    const auto &x = *hom_k4().complex;
    const auto n = x.vertex_count();
    const auto &nu = *x.involution();
    // 3-simplices checked once all their vertices are coloured
    std::vector<std::vector<const Simplex *>> due(n);
    for (const auto &s : x.cells(3)) {
        Vertex last = 0;
        for (Vertex v : s)
            last = std::max({last, v, nu[v]});
        due[last].push_back(&s);
    }
    Colouring c(n, 2);
    auto consistent = [&](Vertex v) {
        for (const Simplex *s : due[v]) {
            std::uint8_t col[4];
            for (int i = 0; i < 4; ++i)
                col[i] = c[(*s)[i]];
            if (alternations<std::uint8_t>(col) == 3)
                return false;
        }
        return true;
    };
    std::function<bool(Vertex)> solve = [&](Vertex v) -> bool {
        if (v == n)
            return true;
        if (c[v] != 2)
            return consistent(v) && solve(v + 1);
        for (std::uint8_t colour : {colour::yellow, colour::blue}) {
            c[v] = static_cast<std::uint8_t>(colour);
            c[nu[v]] = static_cast<std::uint8_t>(1 - colour);
            if (consistent(v) && solve(v + 1))
                return true;
        }
        c[v] = c[nu[v]] = 2;
        return false;
    };
    require(solve(0), ErrorKind::internal_error,
            "no equivariant colouring of Hom(K2, K4) found");
    map_from_colouring(hom_k4().complex, c, true);
    return c;
}

/// FNV-1a over the colour bytes.
inline std::uint64_t fingerprint(std::span<const std::uint8_t> c) {
    std::uint64_t h = 14695981039346656037ull;
    for (auto b : c) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

// --- mu ----------------------------------------------------------------------

/// t . f_* . iota on Γ_{4l}^n, as a colouring map into Σ².
inline SimplicialMap mu(const GraphHom &f, std::span<const std::uint8_t> t) {
    const auto &hk4 = hom_k4();
    require(f.codomain->vertex_count() == 4 && !f.codomain->has_loops() &&
                f.codomain->edge_count() == 12,
            ErrorKind::invalid_parameter, "mu needs a polymorphism into K4");
    require(t.size() == hk4.elements.size(), ErrorKind::invalid_parameter,
            "t colouring has the wrong length");
    const auto l = f.base()->vertex_count();
    const auto n = f.arity();
    const auto &iso = cycle_iso(l);
    const auto &hc = hom_cycle(l);
    auto domain = gamma_power(4 * l, n);
    TupleCodec codec{4 * l, n};
    Colouring c(domain->vertex_count());
    std::vector<Vertex> digits(n);
    std::vector<Multihom> ms(n);
    for (std::size_t x = 0; x < c.size(); ++x) {
        codec.decode(x, digits);
        for (std::size_t i = 0; i < n; ++i)
            ms[i] = hc.elements[iso.vertex_map[digits[i]]];
        auto m = mu_prime(f, ms);
        require(m.is_valid(*f.codomain), ErrorKind::internal_error,
                "mu_prime produced an invalid multihom");
        c[x] = t[hk4.vertex_of(m)];
    }
    try {
        return map_from_colouring(domain, c, true);
    } catch (const Error &e) {
        fail(ErrorKind::internal_error, std::string("mu(f) is not valid: ") + e.what());
    }
}

} // namespace equihom
