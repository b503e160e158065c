#pragma once

// Cellular chains of a free Z2-simplicial set as a complex of free
// Z[Z2]-modules, specialization to Z-, Z+ and Z[Z2] coefficients, ordinary
// and Bredon cohomology, and the covering-map check on tori.

#include "equihom/error.hpp"
#include "equihom/simplicial.hpp"
#include "equihom/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace equihom {

/// a + b·ν in Z[Z2].
struct GroupRingElement {
    long long a = 0;
    long long b = 0;

    GroupRingElement &operator+=(const GroupRingElement &o) {
        a += o.a;
        b += o.b;
        return *this;
    }
    friend GroupRingElement operator*(const GroupRingElement &x,
                                      const GroupRingElement &y) {
        return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a};
    }
    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const GroupRingElement &, const GroupRingElement &) = default;
};

enum class Coefficients { z_minus, z_plus, z_z2 };

inline std::string to_string(Coefficients c) {
    switch (c) {
    case Coefficients::z_minus: return "Zminus";
    case Coefficients::z_plus: return "Zplus";
    case Coefficients::z_z2: return "ZZ2";
    }
    return "unknown";
}

/// Integer coefficient of the Hom into the module, applied to a + bν.
inline long long specialize(const GroupRingElement &x, Coefficients c) {
    return c == Coefficients::z_minus ? x.a - x.b : x.a + x.b;
}

/// Orbit bases per dimension and boundaries over Z[Z2]:
/// boundary[d][(i, j)] is the coefficient of orbit i of dimension d-1 in
/// the boundary of representative j of dimension d.
struct EquivariantChainComplex {
    std::vector<std::vector<Simplex>> reps;
    std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, GroupRingElement>>
        boundary;

    std::size_t max_dim() const { return reps.size() - 1; }
    std::size_t rank(std::size_t d) const { return reps[d].size(); }
};

/// Orbit representative (the lexicographically smaller cell) is chosen per
/// orbit. Throws not-free-action on a fixed cell.
inline EquivariantChainComplex equivariant_complex(const SimplicialSet &x,
                                                   std::size_t max_dim) {
    require(x.has_involution(), ErrorKind::not_free_action,
            "simplicial set has no involution");
    require(max_dim <= x.cap(), ErrorKind::invalid_parameter,
            "max_dim exceeds the dimension cap");
    EquivariantChainComplex c;
    c.reps.resize(max_dim + 1);
    c.boundary.resize(max_dim + 1);
    // position of each cell: (orbit index, cell is the ν-image of the rep)
    std::vector<std::map<Simplex, std::pair<std::uint32_t, bool>>> where(max_dim + 1);
    for (std::size_t d = 0; d <= max_dim; ++d)
        for (const auto &s : x.cells(d)) {
            auto t = x.apply_involution(s);
            if (t == s)
                fail(ErrorKind::not_free_action, "cell fixed by the involution");
            if (s < t) {
                auto idx = static_cast<std::uint32_t>(c.reps[d].size());
                c.reps[d].push_back(s);
                where[d][s] = {idx, false};
                where[d][t] = {idx, true};
            }
        }
    for (std::size_t d = 1; d <= max_dim; ++d)
        for (std::uint32_t j = 0; j < c.reps[d].size(); ++j) {
            const auto &s = c.reps[d][j];
            for (std::size_t k = 0; k < s.size(); ++k) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
                if (has_consecutive_repeat(f))
                    continue;
                auto [i, flipped] = where[d - 1].at(f);
                const long long sign = k % 2 ? -1 : 1;
                auto &e = c.boundary[d][{i, j}];
                e += flipped ? GroupRingElement{0, sign} : GroupRingElement{sign, 0};
                if (e.is_zero())
                    c.boundary[d].erase({i, j});
            }
        }
    // ∂∂ = 0 over Z[Z2]
    for (std::size_t d = 2; d <= max_dim; ++d) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, GroupRingElement> prod;
        std::vector<std::vector<std::pair<std::uint32_t, GroupRingElement>>> lower(
            c.rank(d - 1));
        for (const auto &[ij, v] : c.boundary[d - 1])
            lower[ij.second].emplace_back(ij.first, v);
        for (const auto &[ij, v] : c.boundary[d])
            for (const auto &[k, w] : lower[ij.first])
                prod[{k, ij.second}] += w * v;
        for (const auto &[kj, v] : prod)
            require(v.is_zero(), ErrorKind::internal_error,
                    "equivariant boundary does not square to zero");
    }
    return c;
}

/// Coboundaries δ_d : C^d -> C^{d+1} of Hom_{Z[Z2]}(C_•, N) in the orbit
/// basis. For Z[Z2], each orbit contributes two coordinates (1 and ν).
struct CochainComplex {
    std::vector<SparseMatrix> coboundary;
    std::vector<std::size_t> dims;
};

inline CochainComplex specialize(const EquivariantChainComplex &c, Coefficients coeff) {
    CochainComplex out;
    const std::size_t w = coeff == Coefficients::z_z2 ? 2 : 1;
    for (std::size_t d = 0; d <= c.max_dim(); ++d)
        out.dims.push_back(w * c.rank(d));
    for (std::size_t d = 0; d < c.max_dim(); ++d) {
        SparseMatrix m(out.dims[d + 1], out.dims[d]);
        for (const auto &[ij, v] : c.boundary[d + 1]) {
            auto [i, j] = ij; // orbit i in dim d, rep j in dim d+1
            if (w == 1) {
                m.add(j, i, specialize(v, coeff));
            } else {
                m.add(2 * j, 2 * i, v.a);
                m.add(2 * j, 2 * i + 1, v.b);
                m.add(2 * j + 1, 2 * i, v.b);
                m.add(2 * j + 1, 2 * i + 1, v.a);
            }
        }
        out.coboundary.push_back(std::move(m));
    }
    return out;
}

/// Integer cellular cochains of a simplicial set up to max_dim.
inline CochainComplex integer_cochains(const SimplicialSet &x, std::size_t max_dim) {
    require(max_dim <= x.cap(), ErrorKind::invalid_parameter,
            "max_dim exceeds the dimension cap");
    CochainComplex out;
    for (std::size_t d = 0; d <= max_dim; ++d)
        out.dims.push_back(x.cell_count(d));
    for (std::size_t d = 0; d < max_dim; ++d) {
        SparseMatrix m(x.cell_count(d + 1), x.cell_count(d));
        const auto &cells = x.cells(d + 1);
        for (std::size_t j = 0; j < cells.size(); ++j)
            for (std::size_t k = 0; k < cells[j].size(); ++k) {
                Simplex f = cells[j];
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
                if (has_consecutive_repeat(f))
                    continue;
                m.add(j, *x.index_of(f), k % 2 ? -1 : 1);
            }
        out.coboundary.push_back(std::move(m));
    }
    return out;
}

/// Highest dimension whose cohomology is determined by the stored cells.
inline std::size_t reliable_top(const SimplicialSet &x) {
    return x.dimension() < x.cap() ? x.cap() : x.cap() - 1;
}

/// Ordinary integral cohomology H^d(x).
inline CohomologyGroup ordinary_cohomology(const SimplicialSet &x, std::size_t d) {
    require(d <= reliable_top(x), ErrorKind::invalid_parameter,
            "degree not covered by the dimension cap");
    auto c = integer_cochains(x, std::min(d + 1, x.cap()));
    return cohomology(c.coboundary, c.dims, d);
}

/// H^d_{Z2}(x; N).
inline CohomologyGroup bredon_cohomology(const SimplicialSet &x, std::size_t d,
                                         Coefficients coeff) {
    require(d <= reliable_top(x), ErrorKind::invalid_parameter,
            "degree not covered by the dimension cap");
    auto c = specialize(equivariant_complex(x, std::min(d + 1, x.cap())), coeff);
    return cohomology(c.coboundary, c.dims, d);
}

inline constexpr std::size_t max_bredon_dimension = 3;

/// Γ_L^n with the diagonal involution. The cap is one above n so the
/// empty top dimension certifies that every cell is stored.
inline SimplicialSetPtr full_torus(std::size_t n, std::size_t L,
                                   bool allow_large = false) {
    require(n >= 1, ErrorKind::invalid_parameter, "n must be >= 1");
    require(n <= max_bredon_dimension || allow_large, ErrorKind::capacity_exceeded,
            "torus dimension above 3 needs an explicit override");
    return gamma_power(L, n, n + 1);
}

/// H^d_{Z2}(T^n; Z-) on Γ_L^n.
inline CohomologyGroup bredon_torus(std::size_t n, std::size_t L, std::size_t d,
                                    bool allow_large = false) {
    require(d <= n, ErrorKind::invalid_parameter, "degree above torus dimension");
    return bredon_cohomology(*full_torus(n, L, allow_large), d, Coefficients::z_minus);
}

// --- covering map check ------------------------------------------------------

namespace detail {

/// Basis of H^d of a cochain complex with torsion-free cohomology in
/// degree d, plus a way to read off coordinates of a cocycle.
struct CohomologyBasis {
    IntMatrix U;      // U * δ_{d-1} * V = D
    std::size_t r = 0; // rank of δ_{d-1}
    IntMatrix Vk_inv; // inverse transform for the kernel part
    std::size_t kr = 0; // rank of the restricted δ_d
    std::vector<std::vector<Integer>> cocycles;

    std::vector<Integer> coordinates(const std::vector<Integer> &z) const {
        std::vector<Integer> y(U.rows, 0);
        for (std::size_t i = 0; i < U.rows; ++i)
            for (std::size_t j = 0; j < U.cols; ++j)
                if (U(i, j) != 0)
                    y[i] += U(i, j) * z[j];
        std::vector<Integer> w(Vk_inv.rows, 0);
        for (std::size_t i = 0; i < Vk_inv.rows; ++i)
            for (std::size_t j = 0; j < Vk_inv.cols; ++j)
                if (Vk_inv(i, j) != 0)
                    w[i] += Vk_inv(i, j) * y[r + j];
        for (std::size_t i = 0; i < kr; ++i)
            require(w[i] == 0, ErrorKind::internal_error, "vector is not a cocycle");
        return {w.begin() + static_cast<std::ptrdiff_t>(kr), w.end()};
    }
};

inline CohomologyBasis cohomology_basis(const CochainComplex &c, std::size_t d) {
    CohomologyBasis b;
    const std::size_t n = c.dims[d];
    IntMatrix in = d == 0 ? IntMatrix(n, 0) : c.coboundary[d - 1].dense();
    auto s = smith_decompose(in, true);
    for (const auto &x : s.invariants)
        require(x == 1, ErrorKind::unsupported_input,
                "cohomology has torsion; basis extraction needs a free group");
    b.U = s.U;
    b.r = s.rank();
    // δ_d restricted to the complement of the image, in the new basis
    IntMatrix out = d < c.coboundary.size() ? c.coboundary[d].dense()
                                            : IntMatrix(0, n);
    IntMatrix k = out * s.U_inv;
    IntMatrix kc(k.rows, n - b.r);
    for (std::size_t i = 0; i < k.rows; ++i)
        for (std::size_t j = b.r; j < n; ++j)
            kc(i, j - b.r) = k(i, j);
    auto ks = smith_decompose(kc, true);
    b.kr = ks.rank();
    b.Vk_inv = ks.V_inv;
    for (std::size_t j = b.kr; j < n - b.r; ++j) {
        std::vector<Integer> y(n, 0);
        for (std::size_t i = 0; i < n - b.r; ++i)
            y[b.r + i] = ks.V(i, j);
        std::vector<Integer> z(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < n; ++t)
                if (s.U_inv(i, t) != 0)
                    z[i] += s.U_inv(i, t) * y[t];
        b.cocycles.push_back(std::move(z));
    }
    return b;
}

} // namespace detail

struct PstarRecord {
    std::size_t n = 0;
    std::size_t L = 0;
    std::size_t d = 0;
    std::vector<Integer> invariants; // of p*_d on cohomology
    bool injective = false;
    CohomologyGroup cokernel;
    CohomologyGroup bredon;
    bool matches_bredon = false;
    IntMatrix pstar; // p*_d on cohomology bases
};

/// Covering Γ_L × Γ_L^(n-1) -> Γ_{L/2} × Γ_L^(n-1) for the first-coordinate
/// shift. Computes p*_d on H^d, checks injectivity and the cokernel against
/// Z2^C(n-1,d-1), and compares the cokernel with bredon_torus(n, L, d).
inline PstarRecord quotient_pstar_check(std::size_t n, std::size_t L, std::size_t d) {
    require(n >= 1 && n <= max_bredon_dimension, ErrorKind::invalid_parameter,
            "n must be in 1..3");
    require(L >= 8 && L % 8 == 0, ErrorKind::invalid_parameter,
            "the quotient Γ_{L/2} needs L divisible by 8");
    require(d >= 1 && d <= n, ErrorKind::invalid_parameter, "degree out of range");

    std::vector<SimplicialSet> xf, qf;
    xf.push_back(gamma_complex(L, n + 1));
    qf.push_back(gamma_complex(L / 2, n + 1));
    for (std::size_t i = 1; i < n; ++i) {
        xf.push_back(gamma_complex(L, n + 1));
        qf.push_back(gamma_complex(L, n + 1));
    }
    auto x = sproduct(std::span<const SimplicialSet>(xf));
    auto q = sproduct(std::span<const SimplicialSet>(qf));
    const auto rest = x.vertex_count() / L;
    auto project = [&](Vertex v) {
        return static_cast<Vertex>((v / rest) % (L / 2) * rest + v % rest);
    };

    auto cx = integer_cochains(x, d + 1);
    auto cq = integer_cochains(q, d + 1);
    auto bx = detail::cohomology_basis(cx, d);
    auto bq = detail::cohomology_basis(cq, d);

    // p* on cochains: (p*φ)(σ) = φ(p σ)
    const auto &cells = x.cells(d);
    std::vector<std::size_t> image(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
        Simplex s = cells[j];
        for (auto &v : s)
            v = project(v);
        auto idx = q.index_of(s);
        require(idx.has_value(), ErrorKind::invariant_violation,
                "projection does not map cells to cells");
        image[j] = *idx;
    }

    PstarRecord rec{n, L, d, {}, false, {}, {}, false, {}};
    const auto k = bq.cocycles.size();
    require(bx.cocycles.size() == k, ErrorKind::invariant_violation,
            "cohomology ranks of the cover and the quotient differ");
    rec.pstar = IntMatrix(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Integer> pulled(cells.size());
        for (std::size_t s = 0; s < cells.size(); ++s)
            pulled[s] = bq.cocycles[j][image[s]];
        auto coords = bx.coordinates(pulled);
        for (std::size_t i = 0; i < k; ++i)
            rec.pstar(i, j) = coords[i];
    }
    rec.invariants = smith_decompose(rec.pstar, false).invariants;
    rec.injective = rec.invariants.size() == k;
    rec.cokernel.free_rank = k - rec.invariants.size();
    for (const auto &x : rec.invariants)
        if (x > 1)
            rec.cokernel.torsion.push_back(x);
    rec.bredon = bredon_torus(n, L, d);
    rec.matches_bredon = rec.cokernel == rec.bredon;
    return rec;
}

/// C(n, k) as an integer.
inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace equihom
