#pragma once

// Heights and coordinate edges of Γ_L^n, the generalized diagonal ζ0,
// slices Γ_L × Γ_L' -> Γ_L^n, the automorphisms a_π and b_i, and the
// essential-arity experiment.

#include "equihom/degrees.hpp"
#include "equihom/error.hpp"
#include "equihom/graph.hpp"
#include "equihom/homcomplex.hpp"
#include "equihom/simplicial.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace equihom {

using Point = std::vector<Vertex>;
using Fraction = boost::rational<long long>;

/// Number of odd coordinates.
inline std::size_t height(std::span<const Vertex> u) {
    return static_cast<std::size_t>(
        std::count_if(u.begin(), u.end(), [](Vertex x) { return x % 2 == 1; }));
}

/// [u, v] is an edge of Γ_L^n: v arises from u by moving a non-empty set
/// of even coordinates by ±1.
inline bool is_torus_edge(std::size_t L, std::span<const Vertex> u,
                          std::span<const Vertex> v) {
    bool moved = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == v[i])
            continue;
        if (u[i] % 2 != 0 || (v[i] != (u[i] + 1) % L && u[i] != (v[i] + 1) % L))
            return false;
        moved = true;
    }
    return moved;
}

// --- coordinate edges --------------------------------------------------------

/// |E_i(h)| = L * C(n-1, h) * (L/2)^(n-1).
inline std::size_t edge_class_size(std::size_t L, std::size_t n, std::size_t h) {
    if (h > n - 1)
        return 0;
    std::size_t c = 1;
    for (std::size_t k = 1; k <= h; ++k)
        c = c * (n - 1 - h + k) / k;
    std::size_t p = L * c;
    for (std::size_t k = 0; k + 1 < n; ++k)
        p *= L / 2;
    return p;
}

/// Streams E_i(h) as (lower, upper) pairs; i is 0-based. Stops early when
/// `fn` returns false.
inline void for_each_coordinate_edge(
    std::size_t L, std::size_t n, std::size_t i, std::size_t h,
    const std::function<bool(const Point &, const Point &)> &fn) {
    require(L >= 4 && L % 4 == 0, ErrorKind::invalid_parameter,
            "L must be a positive multiple of 4");
    require(i < n && h < n, ErrorKind::invalid_parameter,
            "coordinate or height out of range");
    TupleCodec codec{L, n};
    Point u(n), v(n);
    for (std::size_t x = 0; x < codec.size(); ++x) {
        codec.decode(x, u);
        if (u[i] % 2 != 0 || height(u) != h)
            continue;
        for (Vertex w : {static_cast<Vertex>((u[i] + 1) % L),
                         static_cast<Vertex>((u[i] + L - 1) % L)}) {
            v = u;
            v[i] = w;
            if (!fn(u, v))
                return;
        }
    }
}

/// Fraction of colour-swapping edges in E_i(h) ∪ E_i(n-1-h) under a
/// colouring of Γ_L^n (vertices encoded row-major).
inline Fraction swap_fraction(std::span<const Vertex> colouring, std::size_t L,
                              std::size_t n, std::size_t i, std::size_t h) {
    TupleCodec codec{L, n};
    require(colouring.size() == codec.size(), ErrorKind::invalid_parameter,
            "colouring is not defined on gamma(L)^n");
    long long swaps = 0, total = 0;
    auto count = [&](std::size_t hh) {
        for_each_coordinate_edge(L, n, i, hh, [&](const Point &u, const Point &v) {
            ++total;
            swaps += colouring[codec.encode(u)] != colouring[codec.encode(v)];
            return true;
        });
    };
    count(h);
    if (n - 1 - h != h)
        count(n - 1 - h);
    return total ? Fraction(swaps, total) : Fraction(0);
}

inline Fraction swap_fraction(const SimplicialMap &g, std::size_t L, std::size_t i,
                              std::size_t h) {
    return swap_fraction(g.vertex_map, L, torus_dimension(*g.domain, L), i, h);
}

// --- automorphisms -----------------------------------------------------------

/// a_π: coordinate i of the result is coordinate perm[i] of u.
inline Point permute_coordinates(std::span<const Vertex> u,
                                 std::span<const std::size_t> perm) {
    Point out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = u[perm[i]];
    return out;
}

/// b_i: shift coordinate i by 2.
inline Point shift_coordinate(std::span<const Vertex> u, std::size_t L,
                              std::size_t i) {
    Point out(u.begin(), u.end());
    out[i] = static_cast<Vertex>((out[i] + 2) % L);
    return out;
}

// --- generalized diagonals and slices ----------------------------------------

/// Closed path Γ_L' -> Γ_L^(n-1), k -> path[k].
struct GeneralizedDiagonal {
    std::size_t L = 0;
    std::size_t n = 0;
    std::optional<std::size_t> h;
    std::vector<Point> path;

    std::size_t period() const { return path.size(); }
};

/// Throws invariant-violation unless the path is an equivariant simplicial
/// map Γ_L' -> Γ_L^(n-1) (and, when h is set, alternates heights h and
/// n-1-h).
inline void check_diagonal(const GeneralizedDiagonal &z) {
    const auto P = z.period();
    require(P >= 4 && P % 4 == 0, ErrorKind::invariant_violation,
            "diagonal period must be a multiple of 4");
    for (const auto &u : z.path) {
        require(u.size() == z.n - 1, ErrorKind::invariant_violation,
                "path vertex has the wrong dimension");
        for (Vertex x : u)
            require(x < z.L, ErrorKind::invariant_violation,
                    "path coordinate out of range");
    }
    for (std::size_t k = 0; k < P; ++k) {
        const auto &a = z.path[k];
        const auto &b = z.path[(k + 1) % P];
        // Γ_P edges run from the even end to the odd end
        const auto &lo = k % 2 == 0 ? a : b;
        const auto &hi = k % 2 == 0 ? b : a;
        require(lo == hi || is_torus_edge(z.L, lo, hi),
                ErrorKind::invariant_violation,
                "consecutive path vertices are not joined by an edge");
        Point anti = a;
        for (auto &x : anti)
            x = static_cast<Vertex>((x + z.L / 2) % z.L);
        require(z.path[(k + P / 2) % P] == anti, ErrorKind::invariant_violation,
                "path is not antipodal");
        if (z.h)
            require(height(a) == (k % 2 == 0 ? *z.h : z.n - 1 - *z.h),
                    ErrorKind::invariant_violation,
                    "path heights do not alternate");
    }
}

/// The three-step path of period 3L through u0 = (1^h, 0, ..., 0), with
/// blocks of lengths h, h, h, n-1-3h. No range check on h.
inline GeneralizedDiagonal zeta0_path(std::size_t n, std::size_t h, std::size_t L) {
    require(n >= 2 && 3 * h <= n - 1, ErrorKind::invalid_parameter,
            "blocks do not fit");
    require(L >= 4 && L % 4 == 0, ErrorKind::invalid_parameter,
            "L must be a positive multiple of 4");
    const std::size_t d = n - 1;
    auto block = [&](std::size_t i) -> std::size_t {
        return h == 0 ? 3 : std::min<std::size_t>(i / h, 3);
    };
    // offsets of u_0..u_2 per block; u_{3k+j} = u_j + k
    static constexpr int offset[3][4] = {{1, 0, 0, 0}, {1, 0, 1, 1}, {2, 0, 1, 0}};
    GeneralizedDiagonal z{L, n, h, {}};
    for (std::size_t k = 0; k < 3 * L; ++k) {
        Point u(d);
        for (std::size_t i = 0; i < d; ++i)
            u[i] = static_cast<Vertex>((offset[k % 3][block(i)] + k / 3) % L);
        z.path.push_back(std::move(u));
    }
    return z;
}

/// ζ0 for 0 <= h < floor((n-1)/3), validated.
inline GeneralizedDiagonal zeta0(std::size_t n, std::size_t h, std::size_t L) {
    require(n >= 4, ErrorKind::invalid_parameter, "zeta0 needs n >= 4");
    require(h < (n - 1) / 3, ErrorKind::invalid_parameter,
            "zeta0 needs h < floor((n-1)/3)");
    auto z = zeta0_path(n, h, L);
    check_diagonal(z);
    return z;
}

/// y -> (y, ..., y), period L.
inline GeneralizedDiagonal standard_diagonal(std::size_t L, std::size_t n) {
    require(n >= 2, ErrorKind::invalid_parameter, "diagonal needs n >= 2");
    GeneralizedDiagonal z{L, n, std::nullopt, {}};
    for (Vertex y = 0; y < L; ++y)
        z.path.emplace_back(n - 1, y);
    return z;
}

/// b_i applied to every path vertex.
inline GeneralizedDiagonal shifted(GeneralizedDiagonal z, std::size_t i) {
    for (auto &u : z.path)
        u = shift_coordinate(u, z.L, i);
    return z;
}

/// g ∘ s_ζ on Γ_L × Γ_L': vertex (x, k) gets colour g(x, ζ(k)).
inline SimplicialMap slice_map(const SimplicialMap &g, const GeneralizedDiagonal &z) {
    const auto n = torus_dimension(*g.domain, z.L);
    require(n == z.n, ErrorKind::invalid_parameter, "diagonal dimension mismatch");
    auto t = torus2(z.L, z.period());
    TupleCodec codec{z.L, n};
    Colouring c(t->complex->vertex_count());
    Point u(n);
    for (std::size_t x = 0; x < z.L; ++x)
        for (std::size_t k = 0; k < z.period(); ++k) {
            u[0] = static_cast<Vertex>(x);
            std::copy(z.path[k].begin(), z.path[k].end(), u.begin() + 1);
            c[t->vertex(x, k)] = static_cast<std::uint8_t>(g.vertex_map[codec.encode(u)]);
        }
    return map_from_colouring(t->complex, c, false);
}

/// A colour-swapping E_1 edge of g inside the image of s_ζ. Requires
/// deg1(g ∘ s_ζ) = 1.
inline std::pair<Point, Point> slice_check(const SimplicialMap &g,
                                           const GeneralizedDiagonal &z) {
    auto t = torus2(z.L, z.period());
    auto s = slice_map(g, z);
    auto [a, k] = find_colour_swapping_edge(s, *t);
    Point u{a}, v{static_cast<Vertex>((a + 1) % z.L)};
    u.insert(u.end(), z.path[k].begin(), z.path[k].end());
    v.insert(v.end(), z.path[k].begin(), z.path[k].end());
    if (u[0] % 2 == 1)
        std::swap(u, v);
    return {u, v};
}

// --- essential-arity experiment ----------------------------------------------

/// Colour changes along a uniformly random maximal chain of Γ_L^n: start
/// at a vertex with even coordinates, move the coordinates one at a time in
/// random order and direction.
inline std::size_t random_chain_alternations(std::span<const Vertex> colouring,
                                             std::size_t L, std::size_t n,
                                             std::mt19937_64 &rng) {
    TupleCodec codec{L, n};
    Point u(n);
    for (auto &x : u)
        x = static_cast<Vertex>(2 * (rng() % (L / 2)));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t alt = 0;
    auto prev = colouring[codec.encode(u)];
    for (auto i : order) {
        u[i] = static_cast<Vertex>(rng() & 1 ? (u[i] + 1) % L : (u[i] + L - 1) % L);
        auto c = colouring[codec.encode(u)];
        alt += c != prev;
        prev = c;
    }
    return alt;
}

struct ArityRow {
    std::size_t n = 0;
    std::size_t polymorphisms = 0;
    bool exhaustive = false;
    bool truncated = false;
    std::size_t max_weight = 0;
    bool all_weights_odd = true;
    std::size_t max_chain_alternations = 0;
    std::size_t chains_sampled = 0;
    /// minimum over f and i with deg_i(f) = 1 of swap_fraction(μ(f), i, h)
    std::vector<Fraction> min_swap_fraction_by_height;
};

struct ArityReport {
    std::size_t ell = 0;
    std::uint64_t seed = 0;
    std::uint64_t t_fingerprint = 0;
    std::vector<ArityRow> rows;
};

struct ArityOptions {
    std::uint64_t seed = 0;
    /// arities up to this are enumerated, larger ones sampled
    std::size_t exhaustive_up_to = 2;
    std::size_t samples = 8;
    std::size_t chains_per_map = 64;
    /// cap on enumerated polymorphisms per arity
    std::size_t enumeration_limit = 1u << 16;
};

inline ArityReport arity_experiment(std::size_t ell, std::size_t n_max,
                                    std::span<const std::uint8_t> t,
                                    const ArityOptions &opt = {}) {
    require(ell >= 3 && ell % 2 == 1, ErrorKind::invalid_parameter,
            "cycle length must be odd and >= 3");
    require(n_max >= 1, ErrorKind::invalid_parameter, "n_max must be >= 1");
    ArityReport report{ell, opt.seed, fingerprint(t), {}};
    auto cycle = make_cycle(ell);
    auto k4 = make_complete(4);
    const std::size_t L = 4 * ell;
    std::mt19937_64 rng(opt.seed);
    for (std::size_t n = 1; n <= n_max; ++n) {
        ArityRow row;
        row.n = n;
        row.min_swap_fraction_by_height.assign(n, Fraction(1));
        std::vector<GraphHom> fs;
        if (n <= opt.exhaustive_up_to) {
            EnumerationOptions eo;
            eo.limit = opt.enumeration_limit;
            auto list = enumerate_polymorphisms(cycle, n, k4, eo);
            fs = std::move(list.homs);
            row.truncated = list.truncated;
            row.exhaustive = !list.truncated;
        } else {
            auto dom = std::make_shared<const Graph>(power(cycle, n));
            for (std::size_t s = 0; s < opt.samples; ++s)
                if (auto f = sample_hom(dom, k4, rng()))
                    fs.push_back(std::move(*f));
        }
        row.polymorphisms = fs.size();
        for (const auto &f : fs) {
            auto g = mu(f, t);
            auto alpha = deg_vector(g, L);
            row.max_weight = std::max(row.max_weight, alpha.weight());
            row.all_weights_odd = row.all_weights_odd && alpha.weight() % 2 == 1;
            for (std::size_t i = 0; i < n; ++i)
                if (alpha.bits[i])
                    for (std::size_t h = 0; h < n; ++h)
                        row.min_swap_fraction_by_height[h] =
                            std::min(row.min_swap_fraction_by_height[h],
                                     swap_fraction(g, L, i, h));
            for (std::size_t c = 0; c < opt.chains_per_map; ++c) {
                row.max_chain_alternations =
                    std::max(row.max_chain_alternations,
                             random_chain_alternations(g.vertex_map, L, n, rng));
                ++row.chains_sampled;
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace equihom
