#pragma once

// Mod-2 degrees of equivariant maps from tori into Σ², the odd-weight
// minion Z2, and φ(f) = deg_vector(μ(f)).

#include "equihom/error.hpp"
#include "equihom/graph.hpp"
#include "equihom/homcomplex.hpp"
#include "equihom/simplicial.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace equihom {

/// Γ_L × Γ_L' with the coordinate cycle x1 and the band b1 between x1 and
/// its antipode. Vertex (a, b) is encoded a * L' + b.
struct TorusComplex {
    std::size_t L = 0;
    std::size_t Lp = 0;
    SimplicialSetPtr complex;
    ModTwoChain x1;
    ModTwoChain b1;

    Vertex vertex(std::size_t a, std::size_t b) const {
        return static_cast<Vertex>((a % L) * Lp + b % Lp);
    }
};

inline std::shared_ptr<const TorusComplex> torus2(std::size_t L, std::size_t Lp) {
    static std::mutex lock;
    static std::map<std::pair<std::size_t, std::size_t>,
                    std::shared_ptr<const TorusComplex>>
        cache;
    std::lock_guard guard(lock);
    auto &slot = cache[{L, Lp}];
    if (slot)
        return slot;
    auto t = std::make_shared<TorusComplex>();
    t->L = L;
    t->Lp = Lp;
    if (L == Lp)
        t->complex = gamma_power(L, 2);
    else
        t->complex = std::make_shared<const SimplicialSet>(
            sproduct({gamma_complex(L), gamma_complex(Lp)}));
    t->x1.dimension = 1;
    for (const auto &e : t->complex->cells(1))
        if (e[0] % Lp == 0 && e[1] % Lp == 0)
            t->x1.toggle(e);
    t->b1.dimension = 2;
    for (const auto &s : t->complex->cells(2)) {
        bool in_band = true;
        for (Vertex v : s)
            in_band = in_band && v % Lp <= Lp / 2;
        if (in_band)
            t->b1.toggle(s);
    }
    slot = std::move(t);
    return slot;
}

/// e⁰ pulled back and evaluated on x1, plus d⁰ pulled back and evaluated
/// on b1, mod 2.
inline std::uint8_t deg1(const SimplicialMap &g, const TorusComplex &t) {
    require(g.domain->vertex_count() == t.complex->vertex_count() &&
                g.vertex_map.size() == t.complex->vertex_count(),
            ErrorKind::invalid_parameter, "map is not defined on this torus");
    using namespace colour;
    const auto &c = g.vertex_map;
    std::size_t count = 0;
    for (const auto &e : t.x1.cells)
        count += c[e[0]] == blue && c[e[1]] == yellow;
    for (const auto &s : t.b1.cells)
        count += c[s[0]] == blue && c[s[1]] == yellow && c[s[2]] == blue;
    return static_cast<std::uint8_t>(count % 2);
}

inline std::uint8_t deg1(const SimplicialMap &g, std::size_t L, std::size_t Lp) {
    return deg1(g, *torus2(L, Lp));
}

/// n with L^n = vertex_count, or invalid-parameter.
inline std::size_t torus_dimension(const SimplicialSet &x, std::size_t L) {
    std::size_t n = 0, p = 1;
    while (p < x.vertex_count()) {
        p *= L;
        ++n;
    }
    require(p == x.vertex_count() && n >= 1, ErrorKind::invalid_parameter,
            "domain is not a power of gamma(L)");
    return n;
}

/// g^π on Γ_L^m: vertex (y_1..y_m) gets colour g(y_π(1)..y_π(n)).
inline SimplicialMap minor_map(const SimplicialMap &g, std::size_t L,
                               const MinorSpec &pi) {
    const auto n = torus_dimension(*g.domain, L);
    require(pi.n == n, ErrorKind::invalid_parameter, "minor arity mismatch");
    auto dst = gamma_power(L, pi.m);
    TupleCodec from{L, n}, to{L, pi.m};
    Colouring c(dst->vertex_count());
    std::vector<Vertex> y(pi.m), x(n);
    for (std::size_t z = 0; z < c.size(); ++z) {
        to.decode(z, y);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = y[pi.targets[i]];
        c[z] = static_cast<std::uint8_t>(g.vertex_map[from.encode(x)]);
    }
    return map_from_colouring(dst, c, false);
}

/// Element of the minion Z2: a Z2-vector of odd weight.
struct OddVector {
    std::vector<std::uint8_t> bits;

    std::size_t n() const { return bits.size(); }
    std::size_t weight() const {
        return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
    }
    static OddVector unit(std::size_t n, std::size_t j) {
        OddVector v{std::vector<std::uint8_t>(n, 0)};
        v.bits[j] = 1;
        return v;
    }
    friend bool operator==(const OddVector &, const OddVector &) = default;
};

/// β_j = Σ_{π(i) = j} α_i mod 2.
inline OddVector oddvector_minor(const OddVector &a, const MinorSpec &pi) {
    require(pi.n == a.n(), ErrorKind::invalid_parameter, "minor arity mismatch");
    OddVector b{std::vector<std::uint8_t>(pi.m, 0)};
    for (std::size_t i = 0; i < pi.n; ++i)
        b.bits[pi.targets[i]] ^= a.bits[i];
    return b;
}

/// σ_i : [n] -> [2], slot i to 1 and every other slot to 2.
inline MinorSpec sigma_minor(std::size_t n, std::size_t i) {
    std::vector<std::uint32_t> t(n, 1);
    t[i] = 0;
    return MinorSpec(2, std::move(t));
}

/// (deg_1(g^σ_1), ..., deg_1(g^σ_n)); must have odd weight.
inline OddVector deg_vector(const SimplicialMap &g, std::size_t L) {
    const auto n = torus_dimension(*g.domain, L);
    const auto &t = *torus2(L, L);
    OddVector v{std::vector<std::uint8_t>(n)};
    for (std::size_t i = 0; i < n; ++i)
        v.bits[i] = deg1(minor_map(g, L, sigma_minor(n, i)), t);
    require(v.weight() % 2 == 1, ErrorKind::invariant_violation,
            "degree vector has even weight");
    return v;
}

/// φ(f) for a polymorphism C_l^n -> K4, given the colouring t.
inline OddVector phi(const GraphHom &f, std::span<const std::uint8_t> t) {
    return deg_vector(mu(f, t), 4 * f.base()->vertex_count());
}

/// Colouring of Γ_L^n that winds once along coordinate j: blue iff the
/// j-th coordinate is below L/2.
inline Colouring winding_colouring(std::size_t L, std::size_t n, std::size_t j) {
    TupleCodec codec{L, n};
    Colouring c(codec.size());
    std::vector<Vertex> d(n);
    for (std::size_t x = 0; x < c.size(); ++x) {
        codec.decode(x, d);
        c[x] = d[j] < L / 2 ? colour::blue : colour::yellow;
    }
    return c;
}

/// Colouring of Γ_L^n with blue iff (Σ_{i∈I} ⌊u_i/2⌋) mod L/2 < L/4.
/// Valid for |I| <= L/2 and equivariant for odd |I|; its degree vector
/// is the indicator of I.
inline Colouring monomial_colouring(std::size_t L, std::size_t n,
                                    std::span<const std::size_t> support) {
    require(L % 4 == 0 && L >= 4, ErrorKind::invalid_parameter,
            "L must be a positive multiple of 4");
    require(support.size() % 2 == 1 && support.size() <= L / 2,
            ErrorKind::invalid_parameter, "support must be odd and at most L/2");
    for (auto i : support)
        require(i < n, ErrorKind::invalid_parameter, "support index out of range");
    TupleCodec codec{L, n};
    Colouring c(codec.size());
    std::vector<Vertex> d(n);
    for (std::size_t x = 0; x < c.size(); ++x) {
        codec.decode(x, d);
        std::size_t sum = 0;
        for (auto i : support)
            sum += d[i] / 2;
        c[x] = sum % (L / 2) < L / 4 ? colour::blue : colour::yellow;
    }
    return c;
}

/// Equivariant map Γ_L^n -> Σ² with deg_vector = alpha.
inline SimplicialMap monomial_map(std::size_t L, const OddVector &alpha) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < alpha.n(); ++i)
        if (alpha.bits[i])
            support.push_back(i);
    return map_from_colouring(gamma_power(L, alpha.n()),
                              monomial_colouring(L, alpha.n(), support), true);
}

/// Some (a, b) with g(a, b) != g(a + 1, b); requires deg1(g) = 1.
inline std::pair<Vertex, Vertex> find_colour_swapping_edge(const SimplicialMap &g,
                                                            const TorusComplex &t) {
    require(deg1(g, t) == 1, ErrorKind::invalid_parameter,
            "colour-swapping edge search needs deg1 = 1");
    for (std::size_t b = 0; b < t.Lp; ++b)
        for (std::size_t a = 0; a < t.L; ++a)
            if (g.vertex_map[t.vertex(a, b)] != g.vertex_map[t.vertex(a + 1, b)])
                return {static_cast<Vertex>(a), static_cast<Vertex>(b)};
    fail(ErrorKind::invariant_violation,
         "deg1 = 1 but no horizontal colour-swapping edge");
}

} // namespace equihom
