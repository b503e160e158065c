#pragma once

// Relational simplicial sets: a finite vertex set plus, per dimension, the
// non-degenerate simplices as ordered vertex tuples. A tuple with
// consecutive repeats is a degenerate simplex and belongs to the set iff
// its collapse (repeats removed) is stored.

#include "equihom/error.hpp"
#include "equihom/graph.hpp"

#include <boost/container_hash/hash.hpp>
#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace equihom {

using Simplex = std::vector<Vertex>;
using SimplexHash = boost::hash<Simplex>;

inline constexpr std::size_t default_dimension_cap = 3;
inline constexpr std::size_t default_cell_capacity = std::size_t{1} << 22;

inline bool has_consecutive_repeat(std::span<const Vertex> s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == s[i - 1])
            return true;
    return false;
}

inline Simplex collapse_repeats(std::span<const Vertex> s) {
    Simplex out;
    for (Vertex v : s)
        if (out.empty() || out.back() != v)
            out.push_back(v);
    return out;
}

/// Number of colour changes along a tuple.
template <class T> std::size_t alternations(std::span<const T> s) {
    std::size_t a = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        a += s[i] != s[i - 1];
    return a;
}

class SimplicialSet;
using SimplicialSetPtr = std::shared_ptr<const SimplicialSet>;

class SimplicialSet {
  public:
    SimplicialSet() = default;

    /// `cells[d]` lists the non-degenerate d-simplices for d >= 1 (index 0
    /// is ignored; vertices are implied by `labels`). Validates closure
    /// and, when given, that the involution is simplicial.
    static SimplicialSet build(std::vector<std::string> labels,
                               std::size_t cap,
                               std::vector<std::vector<Simplex>> cells,
                               std::optional<std::vector<Vertex>> involution =
                                   std::nullopt) {
        SimplicialSet x;
        x.labels_ = std::move(labels);
        x.cap_ = cap;
        const auto n = x.labels_.size();
        x.cells_.assign(cap + 1, {});
        for (Vertex v = 0; v < n; ++v)
            x.cells_[0].push_back({v});
        for (std::size_t d = 1; d < cells.size(); ++d) {
            require(d <= cap || cells[d].empty(), ErrorKind::invalid_input,
                    "simplices above the dimension cap");
            if (d > cap)
                continue;
            for (auto &s : cells[d]) {
                require(s.size() == d + 1, ErrorKind::invalid_input,
                        "simplex of wrong length in dimension " +
                            std::to_string(d));
                for (Vertex v : s)
                    require(v < n, ErrorKind::invalid_input,
                            "simplex vertex out of range");
                require(!has_consecutive_repeat(s), ErrorKind::invalid_input,
                        "stored simplices must be non-degenerate");
            }
            x.cells_[d] = std::move(cells[d]);
            std::sort(x.cells_[d].begin(), x.cells_[d].end());
            x.cells_[d].erase(std::unique(x.cells_[d].begin(), x.cells_[d].end()),
                              x.cells_[d].end());
        }
        x.reindex();
        if (involution) {
            require(involution->size() == n, ErrorKind::invalid_input,
                    "involution has wrong length");
            for (Vertex v = 0; v < n; ++v) {
                require((*involution)[v] < n, ErrorKind::invalid_input,
                        "involution entry out of range");
                require((*involution)[(*involution)[v]] == v,
                        ErrorKind::invalid_input, "map is not an involution");
            }
            x.involution_ = std::move(involution);
        }
        x.check_closure();
        return x;
    }

    std::size_t vertex_count() const { return labels_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::string &label(Vertex v) const { return labels_[v]; }
    std::optional<Vertex> find_label(const std::string &l) const {
        for (Vertex v = 0; v < labels_.size(); ++v)
            if (labels_[v] == l)
                return v;
        return std::nullopt;
    }

    std::size_t cap() const { return cap_; }
    /// Highest dimension with a stored non-degenerate simplex.
    std::size_t dimension() const {
        std::size_t d = 0;
        for (std::size_t k = 0; k <= cap_; ++k)
            if (!cells_[k].empty())
                d = k;
        return d;
    }

    const std::vector<Simplex> &cells(std::size_t d) const {
        static const std::vector<Simplex> empty;
        return d <= cap_ ? cells_[d] : empty;
    }
    std::size_t cell_count(std::size_t d) const { return cells(d).size(); }

    std::optional<std::size_t> index_of(const Simplex &s) const {
        if (s.empty() || s.size() - 1 > cap_)
            return std::nullopt;
        auto it = index_[s.size() - 1].find(s);
        if (it == index_[s.size() - 1].end())
            return std::nullopt;
        return it->second;
    }

    /// Membership of an arbitrary tuple (degenerate ones included).
    bool contains(std::span<const Vertex> s) const {
        if (s.empty())
            return false;
        for (Vertex v : s)
            if (v >= vertex_count())
                return false;
        return index_of(collapse_repeats(s)).has_value();
    }

    const std::optional<std::vector<Vertex>> &involution() const {
        return involution_;
    }
    bool has_involution() const { return involution_.has_value(); }
    /// Free on vertices (hence on all cells of a relational set).
    bool involution_is_free() const {
        if (!involution_)
            return false;
        for (Vertex v = 0; v < vertex_count(); ++v)
            if ((*involution_)[v] == v)
                return false;
        return true;
    }
    Simplex apply_involution(std::span<const Vertex> s) const {
        require(involution_.has_value(), ErrorKind::invalid_input,
                "simplicial set has no involution");
        Simplex out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            out[i] = (*involution_)[s[i]];
        return out;
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (std::size_t d = 0; d <= cap_; ++d)
            chi += (d % 2 ? -1 : 1) * static_cast<long long>(cells_[d].size());
        return chi;
    }

    /// Faces of stored simplices are stored (after collapse) and the
    /// involution maps cells to cells. Throws invalid-input otherwise.
    void check_closure() const {
        for (std::size_t d = 1; d <= cap_; ++d)
            for (const auto &s : cells_[d])
                for (std::size_t j = 0; j <= d; ++j) {
                    Simplex f = s;
                    f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
                    require(contains(f), ErrorKind::invalid_input,
                            "face of a stored simplex is missing");
                }
        if (involution_)
            for (std::size_t d = 0; d <= cap_; ++d)
                for (const auto &s : cells_[d])
                    require(index_of(apply_involution(s)).has_value(),
                            ErrorKind::invalid_input,
                            "involution is not simplicial");
    }

  private:
    void reindex() {
        index_.assign(cap_ + 1, {});
        for (std::size_t d = 0; d <= cap_; ++d)
            for (std::size_t i = 0; i < cells_[d].size(); ++i)
                index_[d].emplace(cells_[d][i], i);
    }

    std::vector<std::string> labels_;
    std::size_t cap_ = 0;
    std::vector<std::vector<Simplex>> cells_;
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
    std::optional<std::vector<Vertex>> involution_;
};

// --- constructors ------------------------------------------------------------

namespace colour {
inline constexpr Vertex yellow = 0;
inline constexpr Vertex blue = 1;
} // namespace colour

/// Σ^k: two vertices (yellow, blue), simplices are colour tuples with at
/// most k alternations, involution swaps the colours.
inline SimplicialSet sigma(std::size_t k,
                           std::size_t cap = default_dimension_cap) {
    require(k <= cap, ErrorKind::invalid_parameter,
            "sphere dimension exceeds dimension cap");
    std::vector<std::vector<Simplex>> cells(cap + 1);
    for (std::size_t d = 1; d <= k; ++d)
        for (Vertex start : {colour::yellow, colour::blue}) {
            Simplex s(d + 1);
            for (std::size_t i = 0; i <= d; ++i)
                s[i] = (start + i) % 2;
            cells[d].push_back(std::move(s));
        }
    return SimplicialSet::build({"yellow", "blue"}, cap, std::move(cells),
                                std::vector<Vertex>{1, 0});
}

inline const SimplicialSetPtr &sigma2() {
    static const SimplicialSetPtr s =
        std::make_shared<const SimplicialSet>(sigma(2));
    return s;
}

/// Order complex of a finite poset given by a strict-order predicate.
/// Non-degenerate d-simplices are strict chains of length d+1.
inline SimplicialSet
order_complex(std::vector<std::string> labels,
              const std::function<bool(Vertex, Vertex)> &less, std::size_t cap,
              std::optional<std::vector<Vertex>> involution = std::nullopt,
              std::size_t cell_capacity = default_cell_capacity) {
    const auto n = static_cast<Vertex>(labels.size());
    std::vector<std::vector<Vertex>> up(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b)
            if (a != b && less(a, b))
                up[a].push_back(b);
    std::vector<std::vector<Simplex>> cells(cap + 1);
    std::size_t total = n;
    Simplex chain;
    std::function<void(Vertex)> extend = [&](Vertex v) {
        chain.push_back(v);
        const std::size_t d = chain.size() - 1;
        if (d >= 1) {
            cells[d].push_back(chain);
            require(++total <= cell_capacity, ErrorKind::capacity_exceeded,
                    "order complex exceeds cell capacity");
        }
        if (d < cap)
            for (Vertex w : up[v])
                extend(w);
        chain.pop_back();
    };
    for (Vertex v = 0; v < n; ++v)
        extend(v);
    return SimplicialSet::build(std::move(labels), cap, std::move(cells),
                                std::move(involution));
}

/// The alternating cyclic poset on Z_L: a < b iff a even, b odd, a-b = ±1.
inline bool gamma_less(std::size_t L, Vertex a, Vertex b) {
    return a % 2 == 0 && b % 2 == 1 && ((a + 1) % L == b || (b + 1) % L == a);
}

/// Γ_L, the triangulated circle with antipodal shift by L/2.
inline SimplicialSet gamma_complex(std::size_t L,
                           std::size_t cap = default_dimension_cap) {
    require(L >= 4 && L % 4 == 0, ErrorKind::invalid_parameter,
            "gamma needs L >= 4 divisible by 4");
    std::vector<std::string> labels;
    std::vector<Vertex> inv(L);
    for (Vertex a = 0; a < L; ++a) {
        labels.push_back(std::to_string(a));
        inv[a] = static_cast<Vertex>((a + L / 2) % L);
    }
    return order_complex(
        std::move(labels), [L](Vertex a, Vertex b) { return gamma_less(L, a, b); },
        cap, std::move(inv));
}

/// Finite product; vertices are encoded mixed-radix with the first factor
/// most significant, simplices are dimension-wise tuples of simplices and
/// the involution (if all factors carry one) acts diagonally.
inline SimplicialSet sproduct(std::span<const SimplicialSet> xs,
                              std::size_t cell_capacity = default_cell_capacity) {
    require(!xs.empty(), ErrorKind::invalid_parameter, "empty product");
    const std::size_t cap = xs[0].cap();
    bool with_inv = xs[0].has_involution();
    for (const auto &x : xs) {
        require(x.cap() == cap, ErrorKind::invalid_parameter,
                "product factors must share the dimension cap");
        require(x.has_involution() == with_inv, ErrorKind::invalid_parameter,
                "involutions must be present on all factors or none");
    }
    if (xs.size() == 1)
        return xs[0];

    const std::size_t k = xs.size();
    std::vector<std::size_t> radix(k);
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) {
        radix[i] = xs[i].vertex_count();
        require(count <= cell_capacity / radix[i], ErrorKind::capacity_exceeded,
                "product exceeds cell capacity");
        count *= radix[i];
    }
    auto decode = [&](std::size_t x) {
        std::vector<Vertex> d(k);
        for (std::size_t i = k; i-- > 0;) {
            d[i] = static_cast<Vertex>(x % radix[i]);
            x /= radix[i];
        }
        return d;
    };
    auto encode = [&](std::span<const Vertex> d) {
        std::size_t x = 0;
        for (std::size_t i = 0; i < k; ++i)
            x = x * radix[i] + d[i];
        return static_cast<Vertex>(x);
    };

    // forward[i][u]: vertices v with [u, v] a simplex of factor i (v = u too)
    std::vector<std::vector<std::vector<Vertex>>> forward(k);
    for (std::size_t i = 0; i < k; ++i) {
        forward[i].assign(radix[i], {});
        for (Vertex u = 0; u < radix[i]; ++u)
            forward[i][u].push_back(u);
        for (const auto &e : xs[i].cells(1))
            forward[i][e[0]].push_back(e[1]);
        for (auto &f : forward[i])
            std::sort(f.begin(), f.end());
    }

    std::vector<std::string> labels(count);
    for (std::size_t x = 0; x < count; ++x) {
        auto d = decode(x);
        std::string l = "(";
        for (std::size_t i = 0; i < k; ++i)
            l += (i ? "," : "") + xs[i].label(d[i]);
        labels[x] = l + ")";
    }

    std::vector<std::vector<Simplex>> cells(cap + 1);
    std::size_t total = count;
    std::vector<std::vector<Vertex>> comp(k); // per-factor vertex sequences
    Simplex chain;
    std::function<void()> extend = [&]() {
        const std::size_t d = chain.size() - 1;
        if (d >= 1) {
            cells[d].push_back(chain);
            require(++total <= cell_capacity, ErrorKind::capacity_exceeded,
                    "product exceeds cell capacity");
        }
        if (d == cap)
            return;
        auto last = decode(chain.back());
        // odometer over candidate next vertices
        std::vector<std::size_t> pos(k, 0);
        for (bool more = true; more;) {
            std::vector<Vertex> next(k);
            for (std::size_t i = 0; i < k; ++i)
                next[i] = forward[i][last[i]][pos[i]];
            Vertex w = encode(next);
            if (w != chain.back()) {
                bool ok = true;
                for (std::size_t i = 0; i < k && ok; ++i) {
                    comp[i].push_back(next[i]);
                    ok = xs[i].contains(comp[i]);
                    if (!ok) {
                        for (std::size_t j = 0; j <= i; ++j)
                            comp[j].pop_back();
                    }
                }
                if (ok) {
                    chain.push_back(w);
                    extend();
                    chain.pop_back();
                    for (std::size_t i = 0; i < k; ++i)
                        comp[i].pop_back();
                }
            }
            more = false;
            for (std::size_t i = k; i-- > 0;) {
                if (++pos[i] < forward[i][last[i]].size()) {
                    more = true;
                    break;
                }
                pos[i] = 0;
            }
        }
    };
    for (std::size_t x = 0; x < count; ++x) {
        auto d = decode(x);
        for (std::size_t i = 0; i < k; ++i)
            comp[i] = {d[i]};
        chain = {static_cast<Vertex>(x)};
        extend();
    }

    std::optional<std::vector<Vertex>> inv;
    if (with_inv) {
        inv.emplace(count);
        for (std::size_t x = 0; x < count; ++x) {
            auto d = decode(x);
            for (std::size_t i = 0; i < k; ++i)
                d[i] = (*xs[i].involution())[d[i]];
            (*inv)[x] = encode(d);
        }
    }
    return SimplicialSet::build(std::move(labels), cap, std::move(cells),
                                std::move(inv));
}

inline SimplicialSet sproduct(std::initializer_list<SimplicialSet> xs) {
    std::vector<SimplicialSet> v(xs);
    return sproduct(std::span<const SimplicialSet>(v));
}

/// Γ_L^n, built once per (L, n, cap) and shared.
inline SimplicialSetPtr gamma_power(std::size_t L, std::size_t n,
                                    std::size_t cap = default_dimension_cap) {
    require(n >= 1, ErrorKind::invalid_parameter, "torus dimension must be >= 1");
    static std::mutex lock;
    static std::map<std::tuple<std::size_t, std::size_t, std::size_t>,
                    SimplicialSetPtr>
        cache;
    std::lock_guard guard(lock);
    auto &slot = cache[{L, n, cap}];
    if (!slot) {
        std::vector<SimplicialSet> f(n, gamma_complex(L, cap));
        slot = std::make_shared<const SimplicialSet>(
            sproduct(std::span<const SimplicialSet>(f)));
    }
    return slot;
}

// --- maps --------------------------------------------------------------------

/// Vertex map between simplicial sets; valid iff every stored simplex maps
/// (componentwise) to a simplex of the codomain.
struct SimplicialMap {
    SimplicialSetPtr domain;
    SimplicialSetPtr codomain;
    std::vector<Vertex> vertex_map;

    Simplex image(std::span<const Vertex> s) const {
        Simplex out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            out[i] = vertex_map[s[i]];
        return out;
    }

    std::optional<Simplex> first_invalid_simplex() const {
        for (std::size_t d = 0; d <= domain->cap(); ++d)
            for (const auto &s : domain->cells(d))
                if (!codomain->contains(image(s)))
                    return s;
        return std::nullopt;
    }
    bool is_valid() const {
        return vertex_map.size() == domain->vertex_count() &&
               !first_invalid_simplex();
    }
    bool is_equivariant() const {
        if (!domain->has_involution() || !codomain->has_involution())
            return false;
        const auto &a = *domain->involution();
        const auto &b = *codomain->involution();
        for (Vertex v = 0; v < domain->vertex_count(); ++v)
            if (vertex_map[a[v]] != b[vertex_map[v]])
                return false;
        return true;
    }
};

/// Error carrying a witness simplex or vertex.
class WitnessError : public Error {
  public:
    WitnessError(ErrorKind kind, const std::string &what, Simplex witness)
        : Error(kind, what), witness_(std::move(witness)) {}
    const Simplex &witness() const { return witness_; }

  private:
    Simplex witness_;
};

/// Simplicial map into Σ² from a vertex 2-colouring (0 = yellow, 1 = blue).
/// Rejects a colouring with a 3-alternating non-degenerate 3-simplex and,
/// if requested, one that is not equivariant.
inline SimplicialMap map_from_colouring(const SimplicialSetPtr &x,
                                        std::span<const std::uint8_t> colouring,
                                        bool check_equivariance) {
    require(colouring.size() == x->vertex_count(), ErrorKind::invalid_parameter,
            "colouring length does not match vertex count");
    require(x->cap() >= 3 || x->cell_count(x->cap()) == 0,
            ErrorKind::invalid_parameter,
            "dimension cap below 3 with cells at the cap: cannot rule out "
            "alternating 3-simplices");
    for (auto c : colouring)
        require(c <= 1, ErrorKind::invalid_parameter, "colours are 0 or 1");
    if (check_equivariance) {
        require(x->has_involution(), ErrorKind::invalid_parameter,
                "equivariance requested but no involution");
        const auto &nu = *x->involution();
        for (Vertex v = 0; v < x->vertex_count(); ++v)
            if (colouring[nu[v]] == colouring[v])
                throw WitnessError(ErrorKind::not_equivariant,
                                   "vertex " + x->label(v) +
                                       " has the colour of its antipode",
                                   {v});
    }
    for (const auto &s : x->cells(3)) {
        std::uint8_t c[4];
        for (int i = 0; i < 4; ++i)
            c[i] = colouring[s[i]];
        if (alternations<std::uint8_t>(c) == 3)
            throw WitnessError(ErrorKind::alternating_simplex,
                               "3-simplex with alternating colours", s);
    }
    return SimplicialMap{x, sigma2(),
                         std::vector<Vertex>(colouring.begin(), colouring.end())};
}

// --- mod-2 chains ------------------------------------------------------------

/// A mod-2 chain: a set of non-degenerate d-simplices.
struct ModTwoChain {
    std::size_t dimension = 0;
    std::set<Simplex> cells;

    void toggle(const Simplex &s) {
        auto [it, inserted] = cells.insert(s);
        if (!inserted)
            cells.erase(it);
    }
    ModTwoChain &operator+=(const ModTwoChain &o) {
        require(dimension == o.dimension, ErrorKind::invalid_parameter,
                "adding chains of different dimension");
        for (const auto &s : o.cells)
            toggle(s);
        return *this;
    }
    friend ModTwoChain operator+(ModTwoChain a, const ModTwoChain &b) {
        a += b;
        return a;
    }
    bool empty() const { return cells.empty(); }
    friend bool operator==(const ModTwoChain &, const ModTwoChain &) = default;
};

/// Mod-2 sum of codimension-1 faces, degenerate faces dropped.
inline ModTwoChain boundary(const ModTwoChain &c) {
    require(c.dimension >= 1, ErrorKind::invalid_parameter,
            "boundary needs dimension >= 1");
    ModTwoChain out{c.dimension - 1, {}};
    for (const auto &s : c.cells)
        for (std::size_t j = 0; j < s.size(); ++j) {
            Simplex f = s;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
            if (!has_consecutive_repeat(f))
                out.toggle(f);
        }
    return out;
}

inline ModTwoChain apply_involution(const SimplicialSet &x,
                                    const ModTwoChain &c) {
    ModTwoChain out{c.dimension, {}};
    for (const auto &s : c.cells)
        out.toggle(x.apply_involution(s));
    return out;
}

/// Rank over GF(2) of a 0/1 matrix given as rows.
inline std::size_t gf2_rank(std::vector<boost::dynamic_bitset<>> rows) {
    std::size_t rank = 0;
    if (rows.empty())
        return 0;
    const std::size_t cols = rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && !rows[p].test(c))
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r].test(c))
                rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

/// Mod-2 Betti numbers b_0..b_{cap-1} from non-degenerate cells. The top
/// entry (dimension cap) is included only when nothing is truncated there,
/// i.e. the set has dimension below the cap.
inline std::vector<std::size_t> mod2_betti(const SimplicialSet &x) {
    const std::size_t top = x.dimension() < x.cap() ? x.dimension() : x.cap() - 1;
    std::vector<std::size_t> rank(top + 2, 0); // rank of ∂_d : C_d → C_{d-1}
    for (std::size_t d = 1; d <= top + 1 && d <= x.cap(); ++d) {
        std::vector<boost::dynamic_bitset<>> rows;
        for (const auto &s : x.cells(d)) {
            boost::dynamic_bitset<> row(x.cell_count(d - 1));
            for (std::size_t j = 0; j < s.size(); ++j) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
                if (has_consecutive_repeat(f))
                    continue;
                row.flip(*x.index_of(f));
            }
            rows.push_back(std::move(row));
        }
        rank[d] = gf2_rank(std::move(rows));
    }
    std::vector<std::size_t> betti(top + 1);
    for (std::size_t d = 0; d <= top; ++d)
        betti[d] = x.cell_count(d) - rank[d] - rank[d + 1];
    return betti;
}

} // namespace equihom
