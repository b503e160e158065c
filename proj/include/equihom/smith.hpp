#pragma once

// Exact integer linear algebra: Smith normal form (dense, optionally with
// unimodular transforms) and a sparse front end that eliminates unit
// pivots before falling back to the dense routine.

#include "equihom/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace equihom {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Integer> data;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    Integer &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Integer &operator()(std::size_t r, std::size_t c) const {
        return data[r * cols + c];
    }

    bool is_zero() const {
        return std::all_of(data.begin(), data.end(), [](const Integer &x) { return x == 0; });
    }

    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
        require(a.cols == b.rows, ErrorKind::invalid_parameter,
                "matrix dimensions do not match");
        IntMatrix out(a.rows, b.cols);
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t k = 0; k < a.cols; ++k) {
                const Integer &x = a(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols; ++j)
                    if (b(k, j) != 0)
                        out(i, j) += x * b(k, j);
            }
        return out;
    }

    friend bool operator==(const IntMatrix &, const IntMatrix &) = default;
};

/// Sparse integer matrix as a list of rows, each a column -> value map.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::map<std::uint32_t, Integer>> entries;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r) {}

    void add(std::size_t r, std::size_t c, const Integer &v) {
        if (v == 0)
            return;
        auto &row = entries[r];
        auto [it, inserted] = row.try_emplace(static_cast<std::uint32_t>(c), v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0)
                row.erase(it);
        }
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto &r : entries)
            n += r.size();
        return n;
    }

    IntMatrix dense() const {
        IntMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (const auto &[c, v] : entries[r])
                m(r, c) = v;
        return m;
    }

    static SparseMatrix from_dense(const IntMatrix &m) {
        SparseMatrix s(m.rows, m.cols);
        for (std::size_t r = 0; r < m.rows; ++r)
            for (std::size_t c = 0; c < m.cols; ++c)
                s.add(r, c, m(r, c));
        return s;
    }

    SparseMatrix transposed() const {
        SparseMatrix t(cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (const auto &[c, v] : entries[r])
                t.add(c, r, v);
        return t;
    }

    /// this * other
    SparseMatrix times(const SparseMatrix &o) const {
        require(cols == o.rows, ErrorKind::invalid_parameter,
                "matrix dimensions do not match");
        SparseMatrix out(rows, o.cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (const auto &[k, x] : entries[r])
                for (const auto &[c, y] : o.entries[k])
                    out.add(r, c, x * y);
        return out;
    }

    bool is_zero() const { return nonzeros() == 0; }
};

/// U * A * V = D with D diagonal, d_1 | d_2 | ..., all d_i > 0.
struct SmithDecomposition {
    std::vector<Integer> invariants; // nonzero diagonal entries
    IntMatrix U, U_inv, V, V_inv;    // filled only when transforms requested

    std::size_t rank() const { return invariants.size(); }
};

namespace detail {

class DenseSmith {
  public:
    DenseSmith(IntMatrix a, bool transforms) : a_(std::move(a)), track_(transforms) {
        if (track_) {
            u_ = IntMatrix::identity(a_.rows);
            ui_ = IntMatrix::identity(a_.rows);
            v_ = IntMatrix::identity(a_.cols);
            vi_ = IntMatrix::identity(a_.cols);
        }
    }

    SmithDecomposition run() {
        const std::size_t n = std::min(a_.rows, a_.cols);
        SmithDecomposition out;
        for (std::size_t t = 0; t < n; ++t) {
            if (!move_smallest_to(t))
                break;
            for (;;) {
                if (!clear_column(t) || !clear_row(t)) {
                    move_smallest_to(t);
                    continue;
                }
                // divisibility of the remaining block by the pivot
                auto bad = find_non_multiple(t);
                if (!bad)
                    break;
                row_add(t, *bad, 1);
            }
            if (a_(t, t) < 0)
                row_negate(t);
            out.invariants.push_back(a_(t, t));
        }
        if (track_) {
            out.U = std::move(u_);
            out.U_inv = std::move(ui_);
            out.V = std::move(v_);
            out.V_inv = std::move(vi_);
        }
        return out;
    }

  private:
    bool move_smallest_to(std::size_t t) {
        std::size_t br = 0, bc = 0;
        Integer best = 0;
        for (std::size_t r = t; r < a_.rows && best != 1; ++r)
            for (std::size_t c = t; c < a_.cols && best != 1; ++c) {
                const Integer &x = a_(r, c);
                if (x != 0 && (best == 0 || abs(x) < best)) {
                    best = abs(x);
                    br = r;
                    bc = c;
                }
            }
        if (best == 0)
            return false;
        if (br != t)
            row_swap(t, br);
        if (bc != t)
            col_swap(t, bc);
        return true;
    }

    // Nearest quotient, so remainders satisfy |r| <= |p| / 2.
    static Integer nearest_quotient(const Integer &x, const Integer &p) {
        Integer q = x / p;
        Integer r = x - q * p;
        if (2 * abs(r) > abs(p))
            q += (r < 0) == (p < 0) ? 1 : -1;
        return q;
    }

    // Reduce entries below the pivot; returns true if the column is clear.
    bool clear_column(std::size_t t) {
        bool clear = true;
        for (std::size_t r = t + 1; r < a_.rows; ++r) {
            if (a_(r, t) == 0)
                continue;
            Integer q = nearest_quotient(a_(r, t), a_(t, t));
            if (q != 0)
                row_add(r, t, -q);
            clear = clear && a_(r, t) == 0;
        }
        return clear;
    }

    bool clear_row(std::size_t t) {
        bool clear = true;
        for (std::size_t c = t + 1; c < a_.cols; ++c) {
            if (a_(t, c) == 0)
                continue;
            Integer q = nearest_quotient(a_(t, c), a_(t, t));
            if (q != 0)
                col_add(c, t, -q);
            clear = clear && a_(t, c) == 0;
        }
        return clear;
    }

    std::optional<std::size_t> find_non_multiple(std::size_t t) const {
        const Integer &p = a_(t, t);
        if (abs(p) == 1)
            return std::nullopt;
        for (std::size_t r = t + 1; r < a_.rows; ++r)
            for (std::size_t c = t + 1; c < a_.cols; ++c)
                if (a_(r, c) % p != 0)
                    return r;
        return std::nullopt;
    }

    // row_i += k * row_j
    void row_add(std::size_t i, std::size_t j, const Integer &k) {
        for (std::size_t c = 0; c < a_.cols; ++c)
            if (a_(j, c) != 0)
                a_(i, c) += k * a_(j, c);
        if (!track_)
            return;
        for (std::size_t c = 0; c < u_.cols; ++c)
            if (u_(j, c) != 0)
                u_(i, c) += k * u_(j, c);
        for (std::size_t r = 0; r < ui_.rows; ++r)
            if (ui_(r, i) != 0)
                ui_(r, j) -= k * ui_(r, i);
    }
    void row_swap(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < a_.cols; ++c)
            std::swap(a_(i, c), a_(j, c));
        if (!track_)
            return;
        for (std::size_t c = 0; c < u_.cols; ++c)
            std::swap(u_(i, c), u_(j, c));
        for (std::size_t r = 0; r < ui_.rows; ++r)
            std::swap(ui_(r, i), ui_(r, j));
    }
    void row_negate(std::size_t i) {
        for (std::size_t c = 0; c < a_.cols; ++c)
            a_(i, c) = -a_(i, c);
        if (!track_)
            return;
        for (std::size_t c = 0; c < u_.cols; ++c)
            u_(i, c) = -u_(i, c);
        for (std::size_t r = 0; r < ui_.rows; ++r)
            ui_(r, i) = -ui_(r, i);
    }
    // col_i += k * col_j
    void col_add(std::size_t i, std::size_t j, const Integer &k) {
        for (std::size_t r = 0; r < a_.rows; ++r)
            if (a_(r, j) != 0)
                a_(r, i) += k * a_(r, j);
        if (!track_)
            return;
        for (std::size_t r = 0; r < v_.rows; ++r)
            if (v_(r, j) != 0)
                v_(r, i) += k * v_(r, j);
        for (std::size_t c = 0; c < vi_.cols; ++c)
            if (vi_(i, c) != 0)
                vi_(j, c) -= k * vi_(i, c);
    }
    void col_swap(std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < a_.rows; ++r)
            std::swap(a_(r, i), a_(r, j));
        if (!track_)
            return;
        for (std::size_t r = 0; r < v_.rows; ++r)
            std::swap(v_(r, i), v_(r, j));
        for (std::size_t c = 0; c < vi_.cols; ++c)
            std::swap(vi_(i, c), vi_(j, c));
    }

    IntMatrix a_;
    bool track_;
    IntMatrix u_, ui_, v_, vi_;
};

} // namespace detail

/// Dense Smith normal form; with `transforms`, also U, V and inverses.
inline SmithDecomposition smith_decompose(const IntMatrix &a, bool transforms) {
    return detail::DenseSmith(a, transforms).run();
}

/// Invariant factors of a sparse matrix. Unit pivots are eliminated first
/// (each contributes an invariant factor 1 and leaves the Schur
/// complement), then the remainder goes through the dense routine.
inline std::vector<Integer> smith_invariants(SparseMatrix m) {
    std::vector<std::set<std::uint32_t>> col_rows(m.cols);
    for (std::uint32_t r = 0; r < m.rows; ++r)
        for (const auto &[c, v] : m.entries[r])
            col_rows[c].insert(r);
    std::vector<bool> row_alive(m.rows, true), col_alive(m.cols, true);
    std::size_t units = 0;

    for (bool progress = true; progress;) {
        progress = false;
        for (std::uint32_t c = 0; c < m.cols; ++c) {
            if (!col_alive[c] || col_rows[c].empty())
                continue;
            // shortest row with a unit entry in this column
            std::uint32_t pr = 0;
            std::size_t best = SIZE_MAX;
            for (auto r : col_rows[c]) {
                const auto &x = m.entries[r].at(c);
                if ((x == 1 || x == -1) && m.entries[r].size() < best) {
                    best = m.entries[r].size();
                    pr = r;
                }
            }
            if (best == SIZE_MAX)
                continue;
            const Integer u = m.entries[pr].at(c);
            auto pivot_row = m.entries[pr];
            std::vector<std::uint32_t> others(col_rows[c].begin(), col_rows[c].end());
            for (auto r : others) {
                if (r == pr)
                    continue;
                const Integer k = -m.entries[r].at(c) * u;
                for (const auto &[cc, v] : pivot_row) {
                    auto &row = m.entries[r];
                    auto [it, inserted] = row.try_emplace(cc, 0);
                    it->second += k * v;
                    if (it->second == 0) {
                        row.erase(it);
                        col_rows[cc].erase(r);
                    } else if (inserted) {
                        col_rows[cc].insert(r);
                    }
                }
            }
            for (const auto &[cc, v] : pivot_row)
                col_rows[cc].erase(pr);
            m.entries[pr].clear();
            row_alive[pr] = false;
            col_alive[c] = false;
            ++units;
            progress = true;
        }
    }

    std::vector<std::uint32_t> rest_rows, rest_cols;
    std::vector<std::int64_t> col_pos(m.cols, -1);
    for (std::uint32_t c = 0; c < m.cols; ++c)
        if (col_alive[c] && !col_rows[c].empty()) {
            col_pos[c] = static_cast<std::int64_t>(rest_cols.size());
            rest_cols.push_back(c);
        }
    for (std::uint32_t r = 0; r < m.rows; ++r)
        if (row_alive[r] && !m.entries[r].empty())
            rest_rows.push_back(r);
    IntMatrix rest(rest_rows.size(), rest_cols.size());
    for (std::size_t i = 0; i < rest_rows.size(); ++i)
        for (const auto &[c, v] : m.entries[rest_rows[i]])
            rest(i, static_cast<std::size_t>(col_pos[c])) = v;

    std::vector<Integer> inv(units, Integer(1));
    auto tail = smith_decompose(rest, false).invariants;
    inv.insert(inv.end(), tail.begin(), tail.end());
    return inv;
}

inline std::vector<Integer> smith_invariants(const IntMatrix &m) {
    return smith_invariants(SparseMatrix::from_dense(m));
}

/// A cohomology group Z^free_rank ⊕ ⊕ Z/t_i.
struct CohomologyGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion; // sorted, each dividing the next

    /// Order of the torsion part (the group is finite iff free_rank == 0).
    Integer torsion_order() const {
        Integer o = 1;
        for (const auto &t : torsion)
            o *= t;
        return o;
    }
    friend bool operator==(const CohomologyGroup &, const CohomologyGroup &) = default;
};

/// Z_2^k.
inline CohomologyGroup elementary_two_group(std::size_t k) {
    return CohomologyGroup{0, std::vector<Integer>(k, Integer(2))};
}

/// H^d of a cochain complex given by coboundaries δ_d : C^d -> C^{d+1}
/// (`cob[d]` has dim C^{d+1} rows and dim C^d columns).
inline CohomologyGroup cohomology(const std::vector<SparseMatrix> &cob,
                                  const std::vector<std::size_t> &dims,
                                  std::size_t d) {
    require(d < dims.size(), ErrorKind::invalid_parameter,
            "cohomology degree out of range");
    if (d >= 1 && d < cob.size())
        require(cob[d].times(cob[d - 1]).is_zero(), ErrorKind::invalid_input,
                "coboundaries do not compose to zero");
    auto rank_of = [&](std::size_t k) -> std::vector<Integer> {
        if (k >= cob.size() || cob[k].rows == 0 || cob[k].cols == 0)
            return {};
        return smith_invariants(cob[k]);
    };
    auto out_inv = rank_of(d);
    std::vector<Integer> in_inv = d == 0 ? std::vector<Integer>{} : rank_of(d - 1);
    CohomologyGroup h;
    h.free_rank = dims[d] - out_inv.size() - in_inv.size();
    for (const auto &x : in_inv)
        if (x > 1)
            h.torsion.push_back(x);
    std::sort(h.torsion.begin(), h.torsion.end());
    return h;
}

} // namespace equihom
