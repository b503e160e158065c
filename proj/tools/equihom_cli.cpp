// equihom: batch front end over the library. JSON-lines for streams, a
// single JSON document for summaries. Exit codes: 0 ok, 1 verification
// failure, 2 usage error.

#include "equihom/acceptance.hpp"
#include "equihom/degrees.hpp"
#include "equihom/graph.hpp"
#include "equihom/homcomplex.hpp"
#include "equihom/json_io.hpp"
#include "equihom/slices.hpp"
#include "equihom/zz2.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace equihom;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct RunConfig {
    std::uint64_t seed = 0;
    std::string out;
    std::string cache;
    int verbosity = 0;
};

/// --cache, then EQUIHOM_CACHE, then the user cache directory.
fs::path cache_directory(const RunConfig &cfg) {
    if (!cfg.cache.empty())
        return cfg.cache;
    if (const char *env = std::getenv("EQUIHOM_CACHE"); env && *env)
        return env;
    if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return fs::path(xdg) / "equihom";
    if (const char *home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "equihom";
    return ".equihom-cache";
}

/// Single writer for the chosen output: a file or stdout.
class Output {
  public:
    explicit Output(const std::string &path) {
        if (path.empty() || path == "-")
            return;
        if (fs::path(path).has_parent_path())
            fs::create_directories(fs::path(path).parent_path());
        file_ = std::make_unique<std::ofstream>(path);
        require(file_->good(), ErrorKind::invalid_input, "cannot write " + path);
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }
    void line(const json &j) { stream() << j.dump() << '\n'; }
    void document(const json &j) { stream() << j.dump(2) << '\n'; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

json report(const RunConfig &cfg, const std::string &verb, json params, json result,
            std::optional<std::string> t_fingerprint = std::nullopt) {
    json r = {{"tool", "equihom"},
              {"version", EQUIHOM_VERSION},
              {"command", verb},
              {"seed", cfg.seed}};
    r["t_fingerprint"] = t_fingerprint ? json(*t_fingerprint) : json(nullptr);
    r["parameters"] = std::move(params);
    r["result"] = std::move(result);
    return r;
}

Colouring load_t(const RunConfig &cfg) {
    auto t = load_or_search_t(cache_directory(cfg));
    if (cfg.verbosity > 0)
        std::cerr << (t.loaded ? "loaded t from " : "searched t, wrote ") << t.path << '\n';
    return t.colours;
}

void require_odd_cycle(std::size_t ell) {
    require(ell >= 3 && ell % 2 == 1, ErrorKind::invalid_parameter,
            "--ell must be odd and >= 3");
}

std::vector<json> read_json_lines(const std::string &path) {
    std::ifstream file;
    std::istream *in = &std::cin;
    if (!path.empty() && path != "-") {
        file.open(path);
        require(file.good(), ErrorKind::invalid_input, "cannot open " + path);
        in = &file;
    }
    std::vector<json> out;
    std::string text;
    for (std::size_t lineno = 1; std::getline(*in, text); ++lineno) {
        if (text.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            out.push_back(json::parse(text));
        } catch (const json::parse_error &e) {
            fail(ErrorKind::invalid_input,
                 "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::invalid_parameter:
    case ErrorKind::invalid_input:
    case ErrorKind::capacity_exceeded:
    case ErrorKind::unsupported_input:
        return exit_usage;
    default:
        return exit_failed;
    }
}

// --- verbs -------------------------------------------------------------------

int cmd_enumerate(const RunConfig &cfg, std::size_t ell, std::size_t arity,
                  std::optional<std::size_t> limit, std::size_t codomain) {
    require_odd_cycle(ell);
    require(arity >= 1, ErrorKind::invalid_parameter, "--arity must be >= 1");
    auto base = make_cycle(ell);
    auto cod = make_complete(codomain);
    auto dom = std::make_shared<const Graph>(power(base, arity));
    Output out(cfg.out);
    EnumerationOptions opt;
    opt.limit = limit;
    std::size_t written = 0;
    auto res = enumerate_homs(
        *dom, *cod,
        [&](std::span<const Vertex> vals) {
            out.line({{"domain_base", ell},
                      {"arity", arity},
                      {"codomain", codomain},
                      {"values", vals}});
            ++written;
            return true;
        },
        opt);
    if (res.truncated)
        out.line({{"truncated", true}, {"limit", *limit}, {"records", written}});
    return exit_ok;
}

int cmd_phi(const RunConfig &cfg, const std::string &in) {
    auto records = read_json_lines(in);
    auto t = load_t(cfg);
    Output out(cfg.out);
    int status = exit_ok;
    for (const auto &r : records) {
        if (!r.contains("values"))
            continue; // trailer records
        auto f = hom_from_json(r);
        require(f.codomain->vertex_count() == 4, ErrorKind::invalid_input,
                "phi needs polymorphisms into K4");
        try {
            out.line(phi_record(f, phi(f, t), t));
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::invariant_violation)
                throw;
            out.line({{"ell", f.base()->vertex_count()},
                      {"arity", f.arity()},
                      {"f", f.values},
                      {"error", e.what()},
                      {"t_fingerprint", fingerprint_hex(t)}});
            status = exit_failed;
        }
    }
    return status;
}

int cmd_degree(const RunConfig &cfg, std::size_t L, std::size_t n,
               const std::string &colouring_file, const std::vector<std::size_t> &support) {
    require(L >= 4 && L % 4 == 0, ErrorKind::invalid_parameter,
            "--L must be a positive multiple of 4");
    require(n >= 1, ErrorKind::invalid_parameter, "--n must be >= 1");
    Colouring c;
    json source;
    if (!colouring_file.empty()) {
        auto j = read_json_file(colouring_file);
        auto raw = detail::field<std::vector<int>>(j, "colours");
        for (int x : raw) {
            require(x == 0 || x == 1, ErrorKind::invalid_input, "colours must be 0 or 1");
            c.push_back(static_cast<std::uint8_t>(x));
        }
        source = colouring_file;
    } else {
        require(!support.empty(), ErrorKind::invalid_parameter,
                "give --colouring or --support");
        c = monomial_colouring(L, n, support);
        source = {{"monomial", support}};
    }
    auto x = gamma_power(L, n);
    require(c.size() == x->vertex_count(), ErrorKind::invalid_input,
            "colouring has the wrong number of vertices");
    auto g = map_from_colouring(x, c, true);
    auto alpha = deg_vector(g, L);
    Output out(cfg.out);
    out.document(report(cfg, "degree", {{"L", L}, {"n", n}, {"source", source}},
                        {{"alpha", to_json(alpha)}, {"weight", alpha.weight()}}));
    return exit_ok;
}

int cmd_hom_complex(const RunConfig &cfg, const std::string &graph_file,
                    std::optional<std::size_t> complete, std::optional<std::size_t> cycle,
                    std::size_t cap) {
    GraphPtr g;
    json source;
    if (!graph_file.empty()) {
        bool fixed = false;
        g = graph_from_json(read_json_file(graph_file), &fixed);
        if (fixed)
            std::cerr << "warning: edge list was not symmetric; symmetric closure taken\n";
        source = graph_file;
    } else if (complete) {
        g = make_complete(*complete);
        source = "K" + std::to_string(*complete);
    } else if (cycle) {
        g = make_cycle(*cycle);
        source = "C" + std::to_string(*cycle);
    } else {
        fail(ErrorKind::invalid_parameter, "give --graph, --complete or --cycle");
    }
    auto h = build_hom_complex(g, cap);
    const auto &x = *h.complex;
    Output out(cfg.out);
    out.document(report(cfg, "hom-complex", {{"graph", source}, {"cap", cap}},
                        {{"vertices", x.vertex_count()},
                         {"dimension", x.dimension()},
                         {"euler_characteristic", x.euler_characteristic()},
                         {"mod2_betti", mod2_betti(x)},
                         {"involution_free", x.involution_is_free()},
                         {"complex", to_json(x)}}));
    return exit_ok;
}

int cmd_search_t(const RunConfig &cfg, bool force) {
    auto dir = cache_directory(cfg);
    if (force)
        fs::remove(dir / t_file_name);
    auto t = load_or_search_t(dir);
    Output out(cfg.out);
    out.document(report(cfg, "search-t", {{"cache", dir.string()}, {"force", force}},
                        {{"path", t.path.string()},
                         {"loaded", t.loaded},
                         {"colours", t_to_json(t.colours)}},
                        fingerprint_hex(t.colours)));
    return exit_ok;
}

int cmd_zeta0(const RunConfig &cfg, std::size_t n, std::size_t h, std::size_t L) {
    auto z = zeta0(n, h, L);
    Output out(cfg.out);
    out.document(report(cfg, "zeta0", {{"n", n}, {"h", h}, {"L", L}}, to_json(z)));
    return exit_ok;
}

int cmd_swap_stats(const RunConfig &cfg, std::size_t ell, std::size_t n_max,
                   std::size_t samples, std::size_t chains) {
    require_odd_cycle(ell);
    auto t = load_t(cfg);
    ArityOptions opt;
    opt.seed = cfg.seed;
    opt.samples = samples;
    opt.chains_per_map = chains;
    auto r = arity_experiment(ell, n_max, t, opt);
    bool ok = true;
    for (const auto &row : r.rows)
        ok = ok && row.all_weights_odd && row.max_chain_alternations <= 2;
    Output out(cfg.out);
    out.document(report(cfg, "swap-stats",
                        {{"ell", ell},
                         {"n_max", n_max},
                         {"samples", samples},
                         {"chains_per_map", chains},
                         {"exhaustive_up_to", opt.exhaustive_up_to}},
                        to_json(r), fingerprint_hex(t)));
    return ok ? exit_ok : exit_failed;
}

int cmd_bredon(const RunConfig &cfg, std::size_t n, std::size_t L,
               std::optional<std::size_t> d, const std::string &coeff_name,
               bool allow_large, bool pstar) {
    Coefficients coeff = Coefficients::z_minus;
    if (coeff_name == "Zplus")
        coeff = Coefficients::z_plus;
    else if (coeff_name == "ZZ2")
        coeff = Coefficients::z_z2;
    else
        require(coeff_name == "Zminus", ErrorKind::invalid_parameter,
                "--coefficients must be Zminus, Zplus or ZZ2");
    require(L >= 4 && L % 4 == 0, ErrorKind::invalid_parameter,
            "--L must be a positive multiple of 4");
    auto x = full_torus(n, L, allow_large);
    std::vector<std::size_t> degrees;
    if (d) {
        require(*d <= n, ErrorKind::invalid_parameter, "--d must be at most --n");
        degrees.push_back(*d);
    } else {
        for (std::size_t k = 0; k <= n; ++k)
            degrees.push_back(k);
    }
    json rows = json::array();
    bool ok = true;
    for (auto k : degrees) {
        auto rec = cohomology_record(n, L, k, coeff, bredon_cohomology(*x, k, coeff));
        if (pstar && k >= 1) {
            auto p = quotient_pstar_check(n, L, k);
            json inv = json::array();
            for (const auto &v : p.invariants)
                inv.push_back(v.convert_to<long long>());
            rec["pstar"] = {{"invariants", inv},
                            {"injective", p.injective},
                            {"cokernel", to_json(p.cokernel)},
                            {"matches_bredon", p.matches_bredon}};
            ok = ok && p.injective && p.matches_bredon;
        }
        rows.push_back(std::move(rec));
    }
    Output out(cfg.out);
    out.document(report(cfg, "bredon",
                        {{"n", n},
                         {"L", L},
                         {"d", d ? json(*d) : json("all")},
                         {"coefficients", to_string(coeff)},
                         {"pstar", pstar}},
                        rows));
    return ok ? exit_ok : exit_failed;
}

int cmd_verify(const RunConfig &cfg, const std::string &suite) {
    AcceptanceOptions opt;
    opt.t_dir = cache_directory(cfg);
    if (cfg.seed != 0)
        opt.seed = cfg.seed;
    Output out(cfg.out);
    std::size_t failed = 0, total = 0;
    run_acceptance(suite, opt, [&](const CriterionResult &r) {
        ++total;
        std::cout << format_result(r) << std::endl;
        if (!r.ok()) {
            ++failed;
            std::cerr << to_json(r).dump() << '\n';
        }
    });
    std::cout << (total - failed) << "/" << total << " checks passed (suite " << suite
              << ")\n";
    return failed == 0 ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Equivariant degree and homomorphism-complex toolkit"};
    app.set_version_flag("--version", std::string(EQUIHOM_VERSION));
    app.require_subcommand(1);

    RunConfig cfg;
    auto common = [&cfg](CLI::App *sub) {
        sub->add_option("--seed", cfg.seed, "Random seed, recorded in reports");
        sub->add_option("--out,-o", cfg.out, "Output file (default stdout)");
        sub->add_option("--cache", cfg.cache,
                        "Directory of the persisted t (default $EQUIHOM_CACHE)");
        sub->add_flag("-v,--verbose", cfg.verbosity, "More diagnostics on stderr");
    };

    std::size_t ell = 3, arity = 1, codomain = 4;
    std::optional<std::size_t> limit;
    auto *enumerate = app.add_subcommand("enumerate", "Stream polymorphisms C_l^n -> K_k");
    enumerate->add_option("--ell", ell, "Cycle length (odd, >= 3)")->required();
    enumerate->add_option("--arity", arity, "Arity n")->required();
    enumerate->add_option("--limit", limit, "Stop after this many records");
    enumerate->add_option("--codomain", codomain, "Clique size k")->capture_default_str();
    common(enumerate);

    std::string in;
    auto *phi_cmd = app.add_subcommand("phi", "Degree vector of each polymorphism");
    phi_cmd->add_option("--in", in, "Polymorphism JSON-lines file (default stdin)");
    common(phi_cmd);

    std::size_t L = 8, n = 2;
    std::string colouring_file;
    std::vector<std::size_t> support;
    auto *degree = app.add_subcommand("degree", "Degree vector of a map Γ_L^n -> Σ²");
    degree->add_option("--L", L, "Period of Γ_L")->capture_default_str();
    degree->add_option("--n", n, "Torus dimension")->capture_default_str();
    degree->add_option("--colouring", colouring_file, "JSON file with \"colours\"");
    degree->add_option("--support", support, "Monomial map on these coordinates")
        ->delimiter(',');
    common(degree);

    std::string graph_file;
    std::optional<std::size_t> complete, cycle;
    std::size_t cap = default_dimension_cap;
    auto *hc = app.add_subcommand("hom-complex", "Build Hom(K2, G)");
    hc->add_option("--graph", graph_file, "Graph JSON file");
    hc->add_option("--complete", complete, "Use K_k");
    hc->add_option("--cycle", cycle, "Use C_l");
    hc->add_option("--cap", cap, "Dimension cap")->capture_default_str();
    common(hc);

    bool force = false;
    auto *search_t = app.add_subcommand("search-t", "Find or load the colouring t");
    search_t->add_flag("--force", force, "Search again even if a file exists");
    common(search_t);

    std::size_t h = 0;
    auto *z = app.add_subcommand("zeta0", "Generalized diagonal ζ0(n, h, L)");
    z->add_option("--n", n, "Ambient power")->required();
    z->add_option("--height", h, "Height h")->capture_default_str();
    z->add_option("--L", L, "Period")->capture_default_str();
    common(z);

    std::size_t n_max = 2, samples = 8, chains = 64;
    auto *swap = app.add_subcommand("swap-stats", "Weights, swap fractions, alternations");
    swap->add_option("--ell", ell, "Cycle length")->capture_default_str();
    swap->add_option("--n-max", n_max, "Largest arity")->capture_default_str();
    swap->add_option("--samples", samples, "Sampled polymorphisms per sampled arity")
        ->capture_default_str();
    swap->add_option("--chains", chains, "Chains sampled per map")->capture_default_str();
    common(swap);

    std::optional<std::size_t> d;
    std::string coeff = "Zminus";
    bool allow_large = false, pstar = false;
    auto *bredon = app.add_subcommand("bredon", "Equivariant cohomology of Γ_L^n");
    bredon->add_option("--n", n, "Torus dimension")->required();
    bredon->add_option("--L", L, "Period")->capture_default_str();
    bredon->add_option("--d", d, "Degree (default: all)");
    bredon->add_option("--coefficients", coeff, "Zminus, Zplus or ZZ2")
        ->capture_default_str();
    bredon->add_flag("--allow-large", allow_large, "Permit n > 3");
    bredon->add_flag("--pstar", pstar, "Also run the covering-map check");
    common(bredon);

    std::string suite = "all";
    auto *verify = app.add_subcommand("verify", "Run the acceptance checks");
    verify->add_option("--suite", suite, "complexes, degrees, slices, bredon or all")
        ->check(CLI::IsMember(suite_names()))
        ->capture_default_str();
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*enumerate)
            return cmd_enumerate(cfg, ell, arity, limit, codomain);
        if (*phi_cmd)
            return cmd_phi(cfg, in);
        if (*degree)
            return cmd_degree(cfg, L, n, colouring_file, support);
        if (*hc)
            return cmd_hom_complex(cfg, graph_file, complete, cycle, cap);
        if (*search_t)
            return cmd_search_t(cfg, force);
        if (*z)
            return cmd_zeta0(cfg, n, h, L);
        if (*swap)
            return cmd_swap_stats(cfg, ell, n_max, samples, chains);
        if (*bredon)
            return cmd_bredon(cfg, n, L, d, coeff, allow_large, pstar);
        if (*verify)
            return cmd_verify(cfg, suite);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_usage;
}
