#pragma once

// The acceptance checks, grouped into suites. Each check recomputes its
// claim from scratch and reports pass/fail with a short detail line and
// its wall-clock time against a budget.

#include "equihom/degrees.hpp"
#include "equihom/error.hpp"
#include "equihom/graph.hpp"
#include "equihom/homcomplex.hpp"
#include "equihom/json_io.hpp"
#include "equihom/simplicial.hpp"
#include "equihom/slices.hpp"
#include "equihom/zz2.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace equihom {

struct CheckOutcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id = 0;
    std::string suite;
    std::string name;
    double budget_seconds = 0;
    std::function<CheckOutcome()> run;
};

struct CriterionResult {
    int id = 0;
    std::string suite;
    std::string name;
    bool pass = false;
    bool within_budget = true;
    double seconds = 0;
    double budget_seconds = 0;
    std::string detail;

    bool ok() const { return pass && within_budget; }
};

struct AcceptanceOptions {
    /// directory for the persisted t; the check writes or reloads it there
    std::filesystem::path t_dir;
    std::uint64_t seed = 20240917;
};

namespace checks {

inline CheckOutcome hom_complex_structure() {
    const auto &h = hom_k4();
    const auto &x = *h.complex;
    // ordered pairs of disjoint non-empty subsets of a 4-set: 3^4 - 2·2^4 + 1
    const std::size_t expected = 81 - 32 + 1;
    auto betti = mod2_betti(x);
    std::ostringstream os;
    os << "vertices=" << x.vertex_count() << " chi=" << x.euler_characteristic()
       << " betti=(";
    for (std::size_t i = 0; i < betti.size(); ++i)
        os << (i ? "," : "") << betti[i];
    os << ")";
    bool ok = x.vertex_count() == expected && x.euler_characteristic() == 2 &&
              betti == std::vector<std::size_t>{1, 0, 1} && x.involution_is_free();
    return {ok, os.str()};
}

inline CheckOutcome cycle_isomorphisms() {
    std::ostringstream os;
    bool ok = true;
    for (std::size_t l : {3u, 5u, 7u}) {
        auto iso = canonical_cycle_iso(l);
        std::set<Vertex> verts(iso.vertex_map.begin(), iso.vertex_map.end());
        std::set<Simplex> edges;
        for (const auto &e : iso.domain->cells(1))
            edges.insert(iso.image(e));
        bool good = verts.size() == iso.codomain->vertex_count() &&
                    edges.size() == iso.codomain->cell_count(1) &&
                    iso.domain->cell_count(1) == iso.codomain->cell_count(1) &&
                    iso.codomain->dimension() == 1 && iso.is_valid() &&
                    iso.is_equivariant();
        for (const auto &e : edges)
            good = good && iso.codomain->index_of(e).has_value();
        os << "l=" << l << (good ? " ok " : " FAIL ");
        ok = ok && good;
    }
    return {ok, os.str()};
}

inline CheckOutcome t_exists(const std::filesystem::path &dir) {
    auto first = load_or_search_t(dir);
    auto m = map_from_colouring(hom_k4().complex, first.colours, true);
    auto again = t_from_json(read_json_file(first.path));
    bool ok = m.is_valid() && m.is_equivariant() && again == first.colours;
    return {ok, std::string(first.loaded ? "loaded " : "searched and wrote ") +
                    first.path.string() + " fingerprint=" +
                    fingerprint_hex(first.colours)};
}

inline CheckOutcome band_identity() {
    bool ok = true;
    std::ostringstream os;
    for (std::size_t L : {4u, 8u, 12u})
        for (std::size_t Lp : {4u, 8u, 12u}) {
            auto t = torus2(L, Lp);
            bool good = boundary(t->b1) == t->x1 + apply_involution(*t->complex, t->x1);
            if (!good)
                os << "L=" << L << ",L'=" << Lp << " fails ";
            ok = ok && good;
        }
    return {ok, ok ? "9 pairs (L, L') checked" : os.str()};
}

inline CheckOutcome two_torus_battery() {
    auto x = gamma_power(4, 2);
    auto t = torus2(4, 4);
    const auto &nu = *x->involution();
    std::vector<Vertex> reps;
    for (Vertex v = 0; v < x->vertex_count(); ++v)
        if (v < nu[v])
            reps.push_back(v);
    std::size_t maps = 0, odd_deg1 = 0, failures = 0;
    Fraction worst(1);
    for (std::size_t bits = 0; bits < (std::size_t{1} << reps.size()); ++bits) {
        Colouring c(x->vertex_count());
        for (std::size_t r = 0; r < reps.size(); ++r) {
            c[reps[r]] = static_cast<std::uint8_t>((bits >> r) & 1);
            c[nu[reps[r]]] = static_cast<std::uint8_t>(1 - c[reps[r]]);
        }
        try {
            auto g = map_from_colouring(x, c, true);
            ++maps;
            auto v = deg_vector(g, 4);
            if (deg1(g, *t) == 1) {
                ++odd_deg1;
                auto [a, b] = find_colour_swapping_edge(g, *t);
                if (c[t->vertex(a, b)] == c[t->vertex(a + 1, b)])
                    ++failures;
            }
            for (std::size_t i = 0; i < 2; ++i)
                if (v.bits[i]) {
                    auto f = swap_fraction(g, 4, i, 0);
                    worst = std::min(worst, f);
                    failures += f < Fraction(1, 3 * 16);
                }
        } catch (const Error &) {
            ++failures;
        }
    }
    std::ostringstream os;
    os << "maps=" << maps << " deg1=1:" << odd_deg1 << " min_swap_fraction=" << worst
       << " failures=" << failures;
    return {maps == 256 && failures == 0, os.str()};
}

inline CheckOutcome monomial_degrees() {
    const std::size_t L = 8;
    bool ok = true;
    std::ostringstream os;
    for (std::size_t n = 1; n <= 3; ++n) {
        std::set<std::vector<std::uint8_t>> degrees;
        std::size_t patterns = 0;
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
            OddVector alpha{std::vector<std::uint8_t>(n)};
            for (std::size_t i = 0; i < n; ++i)
                alpha.bits[i] = static_cast<std::uint8_t>((mask >> i) & 1);
            if (alpha.weight() % 2 == 0)
                continue;
            ++patterns;
            SimplicialMap g;
            if (alpha.weight() == 1) {
                std::size_t j = 0;
                while (!alpha.bits[j])
                    ++j;
                g = map_from_colouring(gamma_power(L, n), winding_colouring(L, n, j), true);
            } else {
                g = monomial_map(L, alpha);
            }
            auto d = deg_vector(g, L);
            ok = ok && d == alpha;
            degrees.insert(d.bits);
        }
        ok = ok && degrees.size() == patterns && patterns == (std::size_t{1} << (n - 1));
        os << "n=" << n << ":" << degrees.size() << " distinct ";
    }
    return {ok, os.str()};
}

inline CheckOutcome phi_minor_compatibility(std::span<const std::uint8_t> t) {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto pol2 = enumerate_polymorphisms(c3, 2, k4);
    std::size_t failures = 0, pairs = 0;
    std::vector<MinorSpec> pis = MinorSpec::all(2, 1);
    for (const auto &pi : MinorSpec::all(2, 2))
        pis.push_back(pi);
    for (const auto &f : pol2.homs) {
        auto a = phi(f, t);
        failures += a.weight() % 2 == 0;
        for (const auto &pi : pis) {
            ++pairs;
            failures += !(phi(minor(f, pi), t) == oddvector_minor(a, pi));
        }
    }
    std::ostringstream os;
    os << "polymorphisms=" << pol2.homs.size() << " minor pairs=" << pairs
       << " failures=" << failures;
    return {failures == 0 && !pol2.homs.empty() && !pol2.truncated, os.str()};
}

inline CheckOutcome lax_inequality() {
    auto c3 = make_cycle(3);
    auto k4 = make_complete(4);
    auto pol2 = enumerate_polymorphisms(c3, 2, k4);
    const auto &el = hom_cycle(3).elements;
    std::size_t checked = 0, failures = 0;
    for (std::size_t m = 1; m <= 2; ++m)
        for (const auto &pi : MinorSpec::all(2, m))
            for (const auto &f : pol2.homs) {
                auto fp = minor(f, pi);
                TupleCodec codec{el.size(), m};
                std::vector<Multihom> ms(m), pulled(2);
                for (std::size_t x = 0; x < codec.size(); ++x) {
                    auto digits = codec.decode(x);
                    for (std::size_t j = 0; j < m; ++j)
                        ms[j] = el[digits[j]];
                    for (std::size_t i = 0; i < 2; ++i)
                        pulled[i] = ms[pi.targets[i]];
                    ++checked;
                    failures += !mu_prime(fp, ms).leq(mu_prime(f, pulled));
                }
            }
    std::ostringstream os;
    os << "instances=" << checked << " failures=" << failures;
    return {failures == 0 && checked > 0, os.str()};
}

inline CheckOutcome generalized_diagonals() {
    std::size_t checked = 0, failures = 0;
    for (std::size_t L : {4u, 8u})
        for (std::size_t n = 4; n <= 10; ++n)
            for (std::size_t h = 0; h < (n - 1) / 3; ++h) {
                GeneralizedDiagonal z;
                try {
                    z = zeta0(n, h, L);
                } catch (const Error &) {
                    ++failures;
                    continue;
                }
                ++checked;
                const auto P = z.period();
                bool good = P == 3 * L;
                for (std::size_t k = 0; k < P && good; ++k) {
                    const auto &u = z.path[k];
                    const auto &v = z.path[(k + 1) % P];
                    good = is_torus_edge(L, u, v) || is_torus_edge(L, v, u);
                    Point anti = u;
                    for (auto &c : anti)
                        c = static_cast<Vertex>((c + L / 2) % L);
                    good = good && z.path[(k + P / 2) % P] == anti;
                    good = good && height(u) == (k % 2 ? n - 1 - h : h);
                }
                failures += !good;
            }
    std::ostringstream os;
    os << "diagonals=" << checked << " failures=" << failures;
    return {failures == 0 && checked > 0, os.str()};
}

inline CheckOutcome bredon_table() {
    std::size_t failures = 0, entries = 0;
    for (std::size_t L : {4u, 8u})
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::size_t d = 1; d <= n; ++d) {
                ++entries;
                failures += !(bredon_torus(n, L, d) ==
                              elementary_two_group(binomial(n - 1, d - 1)));
            }
    std::ostringstream os;
    os << "table entries=" << entries << " mismatches=" << failures;
    for (std::size_t d = 1; d <= 2; ++d) {
        auto rec = quotient_pstar_check(2, 8, d);
        bool good = rec.injective && rec.matches_bredon &&
                    rec.cokernel == elementary_two_group(binomial(1, d - 1));
        failures += !good;
        os << " p*_" << d << (good ? " ok" : " FAIL");
    }
    for (std::size_t n = 2; n <= 3; ++n) {
        std::size_t odd = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask)
            odd += std::popcount(mask) % 2;
        bool good = bredon_torus(n, 4, 2).torsion_order() == Integer(odd) &&
                    odd == (std::size_t{1} << (n - 1));
        failures += !good;
        os << " |H2|(n=" << n << ")" << (good ? "=" : "!=") << odd;
    }
    return {failures == 0, os.str()};
}

inline CheckOutcome alternation_ceiling(std::span<const std::uint8_t> t,
                                        std::uint64_t seed) {
    ArityOptions opt;
    opt.seed = seed;
    opt.samples = 16;
    opt.chains_per_map = 64;
    auto r = arity_experiment(3, 3, t, opt);
    std::size_t chains = 0, worst = 0;
    bool odd = true;
    for (const auto &row : r.rows) {
        chains += row.chains_sampled;
        worst = std::max(worst, row.max_chain_alternations);
        odd = odd && row.all_weights_odd;
    }
    std::ostringstream os;
    os << "chains=" << chains << " max_alternations=" << worst << " seed=" << seed;
    return {worst <= 2 && chains >= 10000 && odd, os.str()};
}

} // namespace checks

inline std::vector<Criterion> acceptance_criteria(const AcceptanceOptions &opt) {
    // t is shared by the checks that need it; the persistence check runs first
    auto t = std::make_shared<Colouring>();
    auto need_t = [t, dir = opt.t_dir]() -> const Colouring & {
        if (t->empty())
            *t = load_or_search_t(dir).colours;
        return *t;
    };
    return {
        {1, "complexes", "hom-complex structure of Hom(K2,K4)", 1,
         checks::hom_complex_structure},
        {2, "complexes", "cycle isomorphism Γ_4l = Hom(K2,C_l), l = 3,5,7", 1,
         checks::cycle_isomorphisms},
        {3, "complexes", "equivariant colouring t exists and is persisted", 60,
         [dir = opt.t_dir] { return checks::t_exists(dir); }},
        {4, "degrees", "band identity ∂b1 = x1 + νx1", 1, checks::band_identity},
        {5, "degrees", "exhaustive 2-torus battery", 5, checks::two_torus_battery},
        {6, "degrees", "monomial degree vectors", 30, checks::monomial_degrees},
        {7, "degrees", "φ commutes with minors on Pol2(C3,K4)", 600,
         [need_t] { return checks::phi_minor_compatibility(need_t()); }},
        {8, "degrees", "lax minor inequality for μ'", 60, checks::lax_inequality},
        {9, "slices", "generalized diagonals ζ0", 5, checks::generalized_diagonals},
        {10, "bredon", "Bredon cohomology of tori and the covering check", 120,
         checks::bredon_table},
        {11, "slices", "alternation ceiling along maximal chains", 120,
         [need_t, seed = opt.seed] {
             return checks::alternation_ceiling(need_t(), seed);
         }},
    };
}

inline const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names{"complexes", "degrees", "slices",
                                                "bredon", "all"};
    return names;
}

/// Runs every criterion of `suite` ("all" runs everything); exceptions turn
/// into failures carrying the error text.
inline std::vector<CriterionResult>
run_acceptance(const std::string &suite, const AcceptanceOptions &opt,
               const std::function<void(const CriterionResult &)> &on_result = {}) {
    require(std::find(suite_names().begin(), suite_names().end(), suite) !=
                suite_names().end(),
            ErrorKind::invalid_parameter, "unknown suite \"" + suite + "\"");
    std::vector<CriterionResult> out;
    for (const auto &c : acceptance_criteria(opt)) {
        if (suite != "all" && c.suite != suite)
            continue;
        CriterionResult r{c.id, c.suite, c.name, false, true, 0, c.budget_seconds, {}};
        auto start = std::chrono::steady_clock::now();
        try {
            auto o = c.run();
            r.pass = o.pass;
            r.detail = std::move(o.detail);
        } catch (const std::exception &e) {
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
        r.within_budget = r.seconds <= r.budget_seconds;
        if (on_result)
            on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string format_result(const CriterionResult &r) {
    std::ostringstream os;
    os << (r.ok() ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  ("
       << std::fixed;
    os.precision(3);
    os << r.seconds << " s of " << r.budget_seconds << " s";
    if (!r.within_budget)
        os << ", over budget";
    os << ")  " << r.detail;
    return os.str();
}

inline json to_json(const CriterionResult &r) {
    return {{"id", r.id},
            {"suite", r.suite},
            {"name", r.name},
            {"pass", r.pass},
            {"within_budget", r.within_budget},
            {"detail", r.detail}};
}

} // namespace equihom
