#pragma once

// Finite graphs as symmetric binary relations, categorical powers,
// homomorphism enumeration and minors of polymorphisms.

#include "equihom/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace equihom {

using Vertex = std::uint32_t;

/// Vertex cap for graph powers. Override per call where needed.
inline constexpr std::size_t default_power_capacity = std::size_t{1} << 24;

class Graph;
using GraphPtr = std::shared_ptr<const Graph>;

/// Finite graph stored as a symmetric edge relation (loops allowed) in
/// compressed adjacency form. Neighbour lists are sorted.
class Graph {
  public:
    Graph() = default;

    /// Builds a graph from ordered pairs. With `symmetrize` the symmetric
    /// closure is taken; otherwise an asymmetric input is rejected.
    /// `was_symmetric` (if given) reports whether the input already was.
    static Graph from_edges(std::size_t vertex_count,
                            std::span<const std::pair<Vertex, Vertex>> edges,
                            bool symmetrize = true,
                            bool *was_symmetric = nullptr) {
        require(vertex_count >= 1, ErrorKind::invalid_parameter,
                "graph needs at least one vertex");
        std::vector<std::pair<Vertex, Vertex>> all;
        all.reserve(edges.size() * 2);
        for (auto [u, v] : edges) {
            require(u < vertex_count && v < vertex_count,
                    ErrorKind::invalid_input,
                    "edge endpoint out of range: (" + std::to_string(u) + "," +
                        std::to_string(v) + ")");
            all.emplace_back(u, v);
        }
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        bool symmetric = true;
        for (auto [u, v] : all)
            if (!std::binary_search(all.begin(), all.end(), std::pair{v, u})) {
                symmetric = false;
                break;
            }
        if (was_symmetric)
            *was_symmetric = symmetric;
        if (!symmetric) {
            require(symmetrize, ErrorKind::invalid_input,
                    "edge relation is not symmetric");
            std::size_t k = all.size();
            for (std::size_t i = 0; i < k; ++i)
                all.emplace_back(all[i].second, all[i].first);
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
        }
        Graph g;
        g.offsets_.assign(vertex_count + 1, 0);
        for (auto [u, v] : all)
            ++g.offsets_[u + 1];
        for (std::size_t i = 0; i < vertex_count; ++i)
            g.offsets_[i + 1] += g.offsets_[i];
        g.targets_.reserve(all.size());
        for (auto [u, v] : all)
            g.targets_.push_back(v);
        return g;
    }

    std::size_t vertex_count() const {
        return offsets_.empty() ? 0 : offsets_.size() - 1;
    }
    /// Number of ordered pairs in the edge relation.
    std::size_t edge_count() const { return targets_.size(); }

    std::span<const Vertex> neighbours(Vertex u) const {
        return {targets_.data() + offsets_[u],
                targets_.data() + offsets_[u + 1]};
    }
    std::size_t degree(Vertex u) const {
        return offsets_[u + 1] - offsets_[u];
    }
    bool has_edge(Vertex u, Vertex v) const {
        auto nb = neighbours(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }
    bool has_loops() const {
        for (Vertex u = 0; u < vertex_count(); ++u)
            if (has_edge(u, u))
                return true;
        return false;
    }

    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edge_count());
        for (Vertex u = 0; u < vertex_count(); ++u)
            for (Vertex v : neighbours(u))
                out.emplace_back(u, v);
        return out;
    }

    /// When this graph is `base`^arity, the base graph; otherwise null.
    const GraphPtr &power_base() const { return power_base_; }
    std::size_t power_arity() const { return power_arity_; }

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
    }

  private:
    friend Graph power(const GraphPtr &, std::size_t, std::size_t);

    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
    GraphPtr power_base_;
    std::size_t power_arity_ = 0;
};

enum class TemplateKind { cycle, complete };

/// C_size (vertices 0..size-1, edges i ~ i±1) or the loopless clique K_size.
inline Graph make_template(TemplateKind kind, std::size_t size) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    if (kind == TemplateKind::cycle) {
        require(size >= 3, ErrorKind::invalid_parameter,
                "cycle needs at least 3 vertices");
        for (Vertex i = 0; i < size; ++i) {
            Vertex j = static_cast<Vertex>((i + 1) % size);
            edges.emplace_back(i, j);
            edges.emplace_back(j, i);
        }
    } else {
        require(size >= 1, ErrorKind::invalid_parameter,
                "complete graph needs at least 1 vertex");
        for (Vertex i = 0; i < size; ++i)
            for (Vertex j = 0; j < size; ++j)
                if (i != j)
                    edges.emplace_back(i, j);
    }
    return Graph::from_edges(size, edges, false);
}

inline GraphPtr make_cycle(std::size_t size) {
    return std::make_shared<const Graph>(
        make_template(TemplateKind::cycle, size));
}
inline GraphPtr make_complete(std::size_t size) {
    return std::make_shared<const Graph>(
        make_template(TemplateKind::complete, size));
}

/// Mixed-radix row-major codec for tuples over a base of size `radix`;
/// coordinate 0 is most significant.
struct TupleCodec {
    std::size_t radix = 1;
    std::size_t arity = 1;

    std::size_t size() const {
        std::size_t s = 1;
        for (std::size_t i = 0; i < arity; ++i)
            s *= radix;
        return s;
    }
    std::size_t encode(std::span<const Vertex> digits) const {
        std::size_t x = 0;
        for (Vertex d : digits)
            x = x * radix + d;
        return x;
    }
    void decode(std::size_t x, std::span<Vertex> digits) const {
        for (std::size_t i = arity; i-- > 0;) {
            digits[i] = static_cast<Vertex>(x % radix);
            x /= radix;
        }
    }
    std::vector<Vertex> decode(std::size_t x) const {
        std::vector<Vertex> d(arity);
        decode(x, d);
        return d;
    }
};

/// Checked radix^arity against `capacity`.
inline std::size_t checked_power_size(std::size_t radix, std::size_t arity,
                                      std::size_t capacity) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < arity; ++i) {
        if (s > capacity / std::max<std::size_t>(radix, 1))
            fail(ErrorKind::capacity_exceeded,
                 std::to_string(radix) + "^" + std::to_string(arity) +
                     " exceeds capacity " + std::to_string(capacity));
        s *= radix;
    }
    require(s <= capacity, ErrorKind::capacity_exceeded,
            "power size exceeds capacity");
    return s;
}

/// Categorical power g^n: tuples adjacent iff adjacent in every coordinate.
inline Graph power(const GraphPtr &g, std::size_t n,
                   std::size_t capacity = default_power_capacity) {
    require(n >= 1, ErrorKind::invalid_parameter, "power needs n >= 1");
    const std::size_t b = g->vertex_count();
    const std::size_t count = checked_power_size(b, n, capacity);
    TupleCodec codec{b, n};

    Graph out;
    out.offsets_.assign(count + 1, 0);
    std::vector<Vertex> digits(n);
    for (std::size_t x = 0; x < count; ++x) {
        codec.decode(x, digits);
        std::size_t deg = 1;
        for (Vertex d : digits)
            deg *= g->degree(d);
        out.offsets_[x + 1] = out.offsets_[x] + deg;
    }
    require(out.offsets_[count] <= (std::size_t{1} << 32),
            ErrorKind::capacity_exceeded, "too many edges in graph power");
    out.targets_.resize(out.offsets_[count]);

    std::vector<std::size_t> pos(n);
    for (std::size_t x = 0; x < count; ++x) {
        codec.decode(x, digits);
        bool isolated = false;
        for (std::size_t i = 0; i < n; ++i)
            if (g->degree(digits[i]) == 0)
                isolated = true;
        if (isolated)
            continue;
        std::fill(pos.begin(), pos.end(), 0);
        std::size_t w = out.offsets_[x];
        // odometer over the product of neighbour lists; coordinate 0 is
        // most significant so targets come out sorted
        for (bool more = true; more;) {
            std::size_t y = 0;
            for (std::size_t i = 0; i < n; ++i)
                y = y * b + g->neighbours(digits[i])[pos[i]];
            out.targets_[w++] = static_cast<Vertex>(y);
            more = false;
            for (std::size_t i = n; i-- > 0;) {
                if (++pos[i] < g->degree(digits[i])) {
                    more = true;
                    break;
                }
                pos[i] = 0;
            }
        }
    }
    out.power_base_ = g;
    out.power_arity_ = n;
    return out;
}

/// Map π: [n] → [m], stored 0-based (`targets[i]` ∈ [0, m)).
struct MinorSpec {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::uint32_t> targets;

    MinorSpec() = default;
    MinorSpec(std::size_t m_, std::vector<std::uint32_t> targets_)
        : n(targets_.size()), m(m_), targets(std::move(targets_)) {
        require(n >= 1 && m >= 1, ErrorKind::invalid_parameter,
                "minor map needs n, m >= 1");
        for (auto t : targets)
            require(t < m, ErrorKind::invalid_parameter,
                    "minor map entry out of range");
    }

    /// From the 1-based form π(i) ∈ [1..m].
    static MinorSpec one_based(std::size_t m,
                               std::span<const std::uint32_t> map) {
        std::vector<std::uint32_t> t;
        for (auto x : map) {
            require(x >= 1, ErrorKind::invalid_parameter,
                    "1-based minor entry must be >= 1");
            t.push_back(x - 1);
        }
        return MinorSpec(m, std::move(t));
    }

    static MinorSpec identity(std::size_t n) {
        std::vector<std::uint32_t> t(n);
        for (std::size_t i = 0; i < n; ++i)
            t[i] = static_cast<std::uint32_t>(i);
        return MinorSpec(n, std::move(t));
    }

    /// Every map [n] → [m], in lexicographic order of the targets array.
    static std::vector<MinorSpec> all(std::size_t n, std::size_t m) {
        std::vector<MinorSpec> out;
        TupleCodec codec{m, n};
        for (std::size_t x = 0; x < codec.size(); ++x) {
            auto d = codec.decode(x);
            out.emplace_back(m, std::vector<std::uint32_t>(d.begin(), d.end()));
        }
        return out;
    }

    friend bool operator==(const MinorSpec &, const MinorSpec &) = default;
};

/// σ∘π, where π: [n] → [m] and σ: [m] → [k].
inline MinorSpec compose(const MinorSpec &sigma, const MinorSpec &pi) {
    require(sigma.n == pi.m, ErrorKind::invalid_parameter,
            "cannot compose minor maps with mismatched arities");
    std::vector<std::uint32_t> t(pi.n);
    for (std::size_t i = 0; i < pi.n; ++i)
        t[i] = sigma.targets[pi.targets[i]];
    return MinorSpec(sigma.m, std::move(t));
}

/// Vertex map between graphs; valid iff edges are preserved.
struct GraphHom {
    GraphPtr domain;
    GraphPtr codomain;
    std::vector<Vertex> values;

    bool preserves_edges() const {
        if (values.size() != domain->vertex_count())
            return false;
        for (Vertex v : values)
            if (v >= codomain->vertex_count())
                return false;
        for (Vertex u = 0; u < domain->vertex_count(); ++u)
            for (Vertex v : domain->neighbours(u))
                if (!codomain->has_edge(values[u], values[v]))
                    return false;
        return true;
    }

    /// Arity when the domain is a power; 1 otherwise.
    std::size_t arity() const {
        return domain->power_base() ? domain->power_arity() : 1;
    }
    const GraphPtr &base() const {
        return domain->power_base() ? domain->power_base() : domain;
    }
};

struct EnumerationOptions {
    std::optional<std::size_t> limit;
    /// When set, value order at every node is shuffled with this seed;
    /// output is then no longer lexicographic.
    std::optional<std::uint64_t> shuffle_seed;
};

struct EnumerationResult {
    std::size_t count = 0;
    bool truncated = false;
};

namespace detail {

using Mask = std::uint64_t;

class HomSearch {
  public:
    HomSearch(const Graph &dom, const Graph &cod, const EnumerationOptions &opt)
        : dom_(dom), cod_(cod), opt_(opt) {
        require(cod.vertex_count() <= 64, ErrorKind::unsupported_input,
                "homomorphism enumeration supports codomains of at most 64 "
                "vertices");
        const std::size_t k = cod.vertex_count();
        full_ = k == 64 ? ~Mask{0} : ((Mask{1} << k) - 1);
        nbr_.assign(k, 0);
        loops_ = 0;
        for (Vertex c = 0; c < k; ++c) {
            for (Vertex d : cod.neighbours(c))
                nbr_[c] |= Mask{1} << d;
            if (cod.has_edge(c, c))
                loops_ |= Mask{1} << c;
        }
        if (opt.shuffle_seed)
            rng_.seed(*opt.shuffle_seed);
    }

    EnumerationResult run(
        const std::function<bool(std::span<const Vertex>)> &emit) {
        const std::size_t n = dom_.vertex_count();
        std::vector<Mask> domains(n, full_);
        for (Vertex u = 0; u < n; ++u)
            if (dom_.has_edge(u, u))
                domains[u] &= loops_;
        values_.assign(n, 0);
        std::vector<Vertex> all(n);
        for (Vertex u = 0; u < n; ++u)
            all[u] = u;
        if (propagate(domains, all))
            search(0, domains, emit);
        return result_;
    }

  private:
    Mask support(Mask d) const {
        Mask s = 0;
        while (d) {
            int c = std::countr_zero(d);
            s |= nbr_[c];
            d &= d - 1;
        }
        return s;
    }

    // AC-3 over the binary edge constraints starting from `changed`.
    bool propagate(std::vector<Mask> &domains, std::vector<Vertex> queue) {
        std::vector<char> queued(domains.size(), 0);
        for (Vertex v : queue)
            queued[v] = 1;
        std::size_t head = 0;
        while (head < queue.size()) {
            Vertex y = queue[head++];
            queued[y] = 0;
            Mask sup = support(domains[y]);
            for (Vertex x : dom_.neighbours(y)) {
                Mask nd = domains[x] & sup;
                if (nd != domains[x]) {
                    if (!nd)
                        return false;
                    domains[x] = nd;
                    if (!queued[x]) {
                        queued[x] = 1;
                        queue.push_back(x);
                    }
                }
            }
        }
        return true;
    }

    bool search(Vertex u, const std::vector<Mask> &domains,
                const std::function<bool(std::span<const Vertex>)> &emit) {
        if (u == domains.size()) {
            if (opt_.limit && result_.count >= *opt_.limit) {
                result_.truncated = true;
                return false;
            }
            ++result_.count;
            return emit(values_);
        }
        std::vector<Vertex> order;
        for (Mask d = domains[u]; d; d &= d - 1)
            order.push_back(static_cast<Vertex>(std::countr_zero(d)));
        if (opt_.shuffle_seed)
            std::shuffle(order.begin(), order.end(), rng_);
        for (Vertex c : order) {
            std::vector<Mask> next = domains;
            next[u] = Mask{1} << c;
            values_[u] = c;
            if (!propagate(next, {u}))
                continue;
            if (!search(u + 1, next, emit))
                return false;
        }
        return true;
    }

    const Graph &dom_;
    const Graph &cod_;
    const EnumerationOptions &opt_;
    Mask full_ = 0;
    Mask loops_ = 0;
    std::vector<Mask> nbr_;
    std::vector<Vertex> values_;
    std::mt19937_64 rng_;
    EnumerationResult result_;
};

} // namespace detail

/// Streams every homomorphism dom → cod exactly once, lexicographically by
/// values array (unless shuffled). `emit` returns false to stop early.
/// Hitting the limit sets `truncated` instead of raising.
inline EnumerationResult
enumerate_homs(const Graph &dom, const Graph &cod,
               const std::function<bool(std::span<const Vertex>)> &emit,
               const EnumerationOptions &opt = {}) {
    detail::HomSearch search(dom, cod, opt);
    return search.run(emit);
}

struct HomList {
    std::vector<GraphHom> homs;
    bool truncated = false;
};

inline HomList collect_homs(const GraphPtr &dom, const GraphPtr &cod,
                            const EnumerationOptions &opt = {}) {
    HomList out;
    auto res = enumerate_homs(
        *dom, *cod,
        [&](std::span<const Vertex> vals) {
            out.homs.push_back(
                GraphHom{dom, cod, std::vector<Vertex>(vals.begin(), vals.end())});
            return true;
        },
        opt);
    out.truncated = res.truncated;
    return out;
}

/// First homomorphism under a shuffled value order, or nullopt if none.
inline std::optional<GraphHom> sample_hom(const GraphPtr &dom,
                                          const GraphPtr &cod,
                                          std::uint64_t seed) {
    EnumerationOptions opt;
    opt.shuffle_seed = seed;
    std::optional<GraphHom> out;
    enumerate_homs(
        *dom, *cod,
        [&](std::span<const Vertex> vals) {
            out = GraphHom{dom, cod,
                           std::vector<Vertex>(vals.begin(), vals.end())};
            return false;
        },
        opt);
    return out;
}

/// Polymorphisms base^arity → cod.
inline HomList enumerate_polymorphisms(const GraphPtr &base, std::size_t arity,
                                       const GraphPtr &cod,
                                       const EnumerationOptions &opt = {}) {
    auto dom = std::make_shared<const Graph>(power(base, arity));
    return collect_homs(dom, cod, opt);
}

/// f^π(x_1..x_m) = f(x_{π(1)}..x_{π(n)}); the result lives on base^m.
inline GraphHom minor(const GraphHom &f, const MinorSpec &pi,
                      std::size_t capacity = default_power_capacity) {
    require(f.arity() == pi.n, ErrorKind::invalid_parameter,
            "minor arity mismatch: polymorphism has arity " +
                std::to_string(f.arity()) + ", map has n = " +
                std::to_string(pi.n));
    const GraphPtr &base = f.base();
    auto dom = std::make_shared<const Graph>(power(base, pi.m, capacity));
    TupleCodec src{base->vertex_count(), pi.n};
    TupleCodec dst{base->vertex_count(), pi.m};
    GraphHom out{dom, f.codomain, std::vector<Vertex>(dom->vertex_count())};
    std::vector<Vertex> y(pi.m), x(pi.n);
    for (std::size_t idx = 0; idx < dom->vertex_count(); ++idx) {
        dst.decode(idx, y);
        for (std::size_t i = 0; i < pi.n; ++i)
            x[i] = y[pi.targets[i]];
        out.values[idx] = f.values[src.encode(x)];
    }
    return out;
}

/// f(x_1..x_n) = e(x_j) for a unary homomorphism e.
inline GraphHom dictator(const GraphHom &e, std::size_t arity, std::size_t j) {
    require(j < arity, ErrorKind::invalid_parameter, "dictator coordinate");
    auto dom = std::make_shared<const Graph>(power(e.domain, arity));
    TupleCodec codec{e.domain->vertex_count(), arity};
    GraphHom out{dom, e.codomain, std::vector<Vertex>(dom->vertex_count())};
    std::vector<Vertex> d(arity);
    for (std::size_t idx = 0; idx < dom->vertex_count(); ++idx) {
        codec.decode(idx, d);
        out.values[idx] = e.values[d[j]];
    }
    return out;
}

} // namespace equihom
