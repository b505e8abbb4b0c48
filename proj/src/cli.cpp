#include "trife/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "trife/io.hpp"

namespace trife
{

const std::vector<std::string> &known_suites()
{
    static const std::vector<std::string> names{"addition54", "cocycle", "det22",     "det91",
                                                "eq32",       "eq34",    "fe14",      "fs_sigma",
                                                "lax",        "limits",  "ode40",     "schrodinger",
                                                "sutherland4"};
    return names;
}

namespace
{

struct Options {
    std::string config_path;
    std::vector<std::string> suites;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<double> tol;
    std::string format = "json";
    bool format_given = false;
    std::string out_path;
};

/// Parsed config plus flag overrides.
class RunConfig
{
public:
    RunConfig(Json doc, const Options &opt) : doc_(std::move(doc)), opt_(opt)
    {
        if (!doc_.is_object()) {
            throw ConfigError("config must be a JSON object");
        }
        if (!opt_.format_given && doc_.contains("format")) {
            if (!doc_["format"].is_string()) {
                throw ConfigError("'format' must be a string");
            }
            opt_.format = doc_["format"].get<std::string>();
        }
        if (opt_.format != "csv" && opt_.format != "json") {
            throw ConfigError("format must be csv or json");
        }
        if (opt_.out_path.empty() && doc_.contains("out")) {
            if (!doc_["out"].is_string()) {
                throw ConfigError("'out' must be a string");
            }
            opt_.out_path = doc_["out"].get<std::string>();
        }
        if (doc_.contains("tolerances")) {
            const Json &t = doc_["tolerances"];
            if (!t.is_object()) {
                throw ConfigError("'tolerances' must be an object");
            }
            for (const auto &[k, v] : t.items()) {
                if (!v.is_number() || !(v.get<double>() > 0.0)) {
                    throw ConfigError("tolerance '" + k + "' must be a positive number");
                }
            }
        }
        if (opt_.tol && !(*opt_.tol > 0.0)) {
            throw ConfigError("--tol must be positive");
        }
    }

    const Json &doc() const { return doc_; }
    const Options &options() const { return opt_; }
    bool csv() const { return opt_.format == "csv"; }

    const Json &section(const char *key) const
    {
        if (!doc_.contains(key)) {
            throw ConfigError(std::string("config needs a '") + key + "' section");
        }
        return doc_.at(key);
    }

    SampleSpec sample(SampleSpec base = {}) const
    {
        SampleSpec s = doc_.contains("sample") ? sample_spec_from_json(doc_.at("sample"), base) : base;
        if (opt_.seed) {
            s.seed = *opt_.seed;
        }
        if (opt_.samples) {
            s.count = *opt_.samples;
        }
        try {
            s.validate();
        } catch (const ConstraintError &e) {
            throw ConfigError(e.what());
        }
        return s;
    }

    /// --tol wins over the per-suite config entry, which wins over the default.
    double tol(const std::string &suite, double fallback) const
    {
        if (opt_.tol) {
            return *opt_.tol;
        }
        if (doc_.contains("tolerances") && doc_["tolerances"].contains(suite)) {
            return doc_["tolerances"][suite].get<double>();
        }
        return fallback;
    }

    FamilySpec family() const { return family_from_json(section("family")); }
    ChainSpec chain() const { return chain_from_json(section("chain")); }
    LaxSpec lax() const { return doc_.contains("lax") ? lax_from_json(doc_.at("lax")) : LaxSpec{}; }

    Complex energy(const char *key) const
    {
        if (!doc_.contains("energies")) {
            return {};
        }
        const Json &e = doc_.at("energies");
        return e.contains(key) ? complex_from_json(e.at(key)) : Complex{};
    }

private:
    Json doc_;
    Options opt_;
};

struct Grid {
    Complex start{0.1};
    Complex stop{1.1};
    int count = 11;

    Complex at(int i) const
    {
        return count == 1 ? start : start + (stop - start) * (double(i) / double(count - 1));
    }
};

Grid grid_from(const RunConfig &cfg)
{
    Grid g;
    if (!cfg.doc().contains("grid")) {
        return g;
    }
    const Json &j = cfg.doc().at("grid");
    if (!j.is_object()) {
        throw ConfigError("'grid' must be an object");
    }
    if (j.contains("start")) {
        g.start = complex_from_json(j.at("start"));
    }
    if (j.contains("stop")) {
        g.stop = complex_from_json(j.at("stop"));
    }
    if (j.contains("count")) {
        if (!j.at("count").is_number_integer() || j.at("count").get<int>() < 1) {
            throw ConfigError("grid count must be a positive integer");
        }
        g.count = j.at("count").get<int>();
    }
    return g;
}

std::string csv_complex(Complex z) { return format_double(z.real()) + "," + format_double(z.imag()); }

// ---------------------------------------------------------------------------

int cmd_eval(const RunConfig &cfg, std::ostream &out)
{
    const SolutionTriple s = cfg.family().build();
    const Grid grid = grid_from(cfg);
    static const char *names[6] = {"f", "g", "h", "F", "G", "H"};
    Json rows = Json::array();
    if (cfg.csv()) {
        out << "re_x,im_x";
        for (const char *n : names) {
            out << ",re_" << n << ",im_" << n;
        }
        out << ",pole\n";
    }
    for (int i = 0; i < grid.count; ++i) {
        const Complex x = grid.at(i);
        std::array<Complex, 6> v{};
        bool pole = false;
        try {
            for (int j = 0; j < 3; ++j) {
                v[j] = s.small(j, x);
                v[j + 3] = s.big(j, x);
            }
            pole = !std::all_of(v.begin(), v.end(), [](Complex z) { return is_finite(z); });
        } catch (const PoleError &) {
            pole = true;
        }
        if (pole) {
            v.fill(Complex{std::nan(""), std::nan("")});
        }
        if (cfg.csv()) {
            out << csv_complex(x);
            for (Complex z : v) {
                out << "," << csv_complex(z);
            }
            out << "," << (pole ? 1 : 0) << "\n";
        } else {
            Json row{{"x", to_json(x)}};
            for (int j = 0; j < 6; ++j) {
                row[names[j]] = pole ? Json(nullptr) : to_json(v[j]);
            }
            row["pole"] = pole;
            rows.push_back(row);
        }
    }
    if (!cfg.csv()) {
        out << Json{{"family", to_json(cfg.family())}, {"rows", rows}}.dump(2) << "\n";
    }
    return exit_pass;
}

// ---------------------------------------------------------------------------

double default_tolerance(const std::string &suite)
{
    if (suite == "det22" || suite == "fs_sigma" || suite == "schrodinger" || suite == "det91") {
        return 1e-7;
    }
    if (suite == "cocycle") {
        return 1e-9;
    }
    if (suite == "lax") {
        return 1e-6;
    }
    if (suite == "limits") {
        return 0.0;
    }
    return 1e-8;
}

ResidualReport failed_report(const std::string &name, double tol, const std::string &why)
{
    ResidualReport r;
    r.name = name;
    r.tolerance = tol;
    r.pass = false;
    r.note = why;
    return r;
}

WeierstrassParams lattice_for(const RunConfig &cfg)
{
    if (cfg.doc().contains("weier")) {
        return weier_from_json(cfg.doc().at("weier"));
    }
    if (cfg.doc().contains("family")) {
        if (auto w = cfg.family().weier()) {
            return *w;
        }
    }
    if (cfg.doc().contains("chain")) {
        return chain_invariants(cfg.chain().constants);
    }
    throw ConfigError("suite needs a lattice: give 'weier', an elliptic family or a chain");
}

// Chain functions have poles at distance about |alpha| from the origin, so
// chain suites default to a smaller box.
SampleSpec chain_sample(const RunConfig &cfg)
{
    SampleSpec base;
    base.domain = {-0.5, 0.5, -0.5, 0.5};
    return cfg.sample(base);
}

struct SuiteContext {
    const RunConfig &cfg;
    // Built lazily and shared across suites.
    std::optional<PhiChain> chain;
    std::optional<ChainFunctions> chain_fns;
    std::optional<PairEntrySet> lax_set;

    const PhiChain &get_chain()
    {
        if (!chain) {
            chain = PhiChain::make(cfg.chain().constants);
        }
        return *chain;
    }
    const ChainFunctions &get_chain_fns()
    {
        if (!chain_fns) {
            chain_fns = chain_functions(get_chain());
        }
        return *chain_fns;
    }
    const PairEntrySet &get_lax()
    {
        if (!lax_set) {
            lax_set = cfg.lax().build();
        }
        return *lax_set;
    }
};

/// Validates the config sections a suite needs; throws ConfigError.
void check_suite_config(const RunConfig &cfg, const std::string &suite)
{
    if (suite == "fe14" || suite == "det22" || suite == "schrodinger" || suite == "sutherland4") {
        const FamilySpec f = cfg.family();
        if (suite == "sutherland4" && f.family != Family::identical) {
            throw ConfigError("sutherland4 needs an identical-particle family");
        }
    } else if (suite == "eq32" || suite == "eq34" || suite == "ode40") {
        (void)cfg.chain();
    } else if (suite == "addition54" || suite == "fs_sigma") {
        (void)lattice_for(cfg);
    } else if (suite == "lax" || suite == "cocycle" || suite == "det91") {
        (void)cfg.lax();
    } else if (suite == "limits") {
        if (cfg.doc().contains("limits") && cfg.doc()["limits"].contains("epsilons")) {
            const Json &e = cfg.doc()["limits"]["epsilons"];
            if (!e.is_array()) {
                throw ConfigError("limits.epsilons must be an array");
            }
            std::vector<double> eps;
            for (const auto &v : e) {
                if (!v.is_number()) {
                    throw ConfigError("limits.epsilons must hold numbers");
                }
                eps.push_back(v.get<double>());
            }
            try {
                validate_epsilons(eps);
            } catch (const ConstraintError &err) {
                throw ConfigError(err.what());
            }
        }
    }
}

std::vector<LimitLadder> run_limits(const RunConfig &cfg)
{
    Json j = cfg.doc().contains("limits") ? cfg.doc().at("limits") : Json::object();
    if (!j.is_object()) {
        throw ConfigError("'limits' must be an object");
    }
    std::vector<double> eps = default_epsilons();
    if (j.contains("epsilons")) {
        eps.clear();
        for (const auto &v : j.at("epsilons")) {
            if (!v.is_number()) {
                throw ConfigError("limits.epsilons must hold numbers");
            }
            eps.push_back(v.get<double>());
        }
    }
    try {
        validate_epsilons(eps);
    } catch (const ConstraintError &err) {
        throw ConfigError(err.what());
    }
    auto c = [&](const char *key, Complex fallback) {
        return j.contains(key) ? complex_from_json(j.at(key)) : fallback;
    };
    const double min_slope = j.value("min_slope", 0.9);
    std::vector<LimitLadder> out{
        limit_c3(c("c0", 0.7), c("c1", 1.0), c("c2", 0.5), eps),
        limit_c2(c("c0", 0.7), c("c1", 1.0), eps),
        limit_lambda(c("a", 0.8), c("b", 0.3), {c("g1", 0.1), c("g2", 0.2), c("g3", -0.3)}, eps),
    };
    for (auto &l : out) {
        l.min_slope = min_slope;
        l.pass = std::isfinite(l.slope) && l.slope >= min_slope;
    }
    return out;
}

struct LaxRun {
    PairEntrySet set;
    ResidualReport eq84;
    Trajectory traj;
    SpectrumReport spectrum;
};

LaxRun run_lax(const RunConfig &cfg, const PairEntrySet &set)
{
    const LaxSpec spec = cfg.lax();
    LaxRun run{set, {}, {}, {}};
    run.eq84 = eq84_residual(set, cfg.sample(), cfg.tol("eq84", 1e-8));
    run.traj = integrate_motion(potential_from_A(set), spec.state, spec.dt, spec.T, spec.exclusion);
    run.spectrum = isospectrality_report(set, run.traj);
    return run;
}

ResidualReport run_suite(SuiteContext &ctx, const std::string &suite)
{
    const RunConfig &cfg = ctx.cfg;
    if (suite == "fe14") {
        return fe14_residual(cfg.family().build(), cfg.sample(), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "det22") {
        return det22_residual(cfg.family().build(), cfg.sample(), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "sutherland4") {
        const FamilySpec f = cfg.family();
        return sutherland4_residual(make_identical_solution(f.id_alpha, f.id_beta, f.id_weier), cfg.sample(),
                                    cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "schrodinger") {
        const SolutionTriple s = cfg.family().build();
        const PairPotentials pots = potentials_from_triple(s, cfg.energy("eps1"), cfg.energy("eps2"), cfg.energy("E0"));
        return schrodinger_residual(s, pots, cfg.sample(), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "eq32") {
        return eq32_residual(ctx.get_chain_fns().quad, chain_sample(cfg), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "eq34") {
        const auto &fns = ctx.get_chain_fns();
        return eq34_residual(fns.phi, fns.tau_a.tau, fns.tau_a.A, chain_sample(cfg), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "ode40") {
        const auto &fns = ctx.get_chain_fns();
        return ode40_suite(fns.u, fns.du, ctx.get_chain().constants(), chain_sample(cfg), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "addition54") {
        const WeierstrassEvaluator ev(lattice_for(cfg));
        return addition54_residual(ev, cfg.sample(), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "fs_sigma") {
        const WeierstrassEvaluator ev(lattice_for(cfg));
        return fs_sigma_determinant_residual(ev, cfg.sample(), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "cocycle") {
        return phi_cocycle_residual(ctx.get_lax(), cfg.sample(), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "det91") {
        return det91_residual(b_functions(ctx.get_lax()), cfg.sample(), cfg.tol(suite, default_tolerance(suite)));
    }
    if (suite == "lax") {
        const double tol = cfg.tol(suite, default_tolerance(suite));
        const LaxRun run = run_lax(cfg, ctx.get_lax());
        const auto &d = run.spectrum.drift;
        ResidualReport r;
        r.name = "lax";
        r.samples = int(run.spectrum.times.size());
        r.max_abs = std::max({d[0], d[1], d[2]});
        r.mean_abs = (d[0] + d[1] + d[2]) / 3.0;
        r.tolerance = tol;
        r.pass = run.eq84.pass && r.max_abs <= tol;
        r.note = "max trace drift; eq84 max " + format_double(run.eq84.max_abs) +
                 (run.eq84.pass ? " (pass)" : " (fail)");
        return r;
    }
    if (suite == "limits") {
        const auto ladders = run_limits(cfg);
        ResidualReport r;
        r.name = "limits";
        r.samples = int(ladders.size());
        r.tolerance = 0.0;
        r.pass = true;
        std::string note = "slopes";
        for (const auto &l : ladders) {
            r.max_abs = std::max(r.max_abs, l.min_slope - l.slope);
            r.pass = r.pass && l.pass;
            note += " " + l.name + "=" + format_double(l.slope);
        }
        r.max_abs = std::max(r.max_abs, 0.0);
        r.note = note;
        return r;
    }
    throw ConfigError("unknown suite '" + suite + "'");
}

int cmd_verify(const RunConfig &cfg, std::ostream &out)
{
    std::vector<std::string> suites = cfg.options().suites;
    if (suites.empty() && cfg.doc().contains("suites")) {
        const Json &s = cfg.doc().at("suites");
        if (!s.is_array()) {
            throw ConfigError("'suites' must be an array of names");
        }
        for (const auto &n : s) {
            if (!n.is_string()) {
                throw ConfigError("'suites' must be an array of names");
            }
            suites.push_back(n.get<std::string>());
        }
    }
    if (suites.empty()) {
        throw ConfigError("no suites requested");
    }
    const auto &known = known_suites();
    for (const auto &s : suites) {
        if (std::find(known.begin(), known.end(), s) == known.end()) {
            throw ConfigError("unknown suite '" + s + "'");
        }
    }
    std::sort(suites.begin(), suites.end());
    suites.erase(std::unique(suites.begin(), suites.end()), suites.end());
    for (const auto &s : suites) {
        check_suite_config(cfg, s);
    }
    // Sample sanity is a usage error, not a residual failure.
    (void)cfg.sample();

    SuiteContext ctx{cfg, {}, {}, {}};
    std::vector<ResidualReport> reports;
    for (const auto &s : suites) {
        try {
            reports.push_back(run_suite(ctx, s));
        } catch (const ConfigError &) {
            throw;
        } catch (const ConstraintError &) {
            throw;
        } catch (const Error &e) {
            reports.push_back(failed_report(s, cfg.tol(s, default_tolerance(s)), e.what()));
        }
    }
    const bool all = std::all_of(reports.begin(), reports.end(), [](const auto &r) { return r.pass; });
    if (cfg.csv()) {
        out << "name,samples,skipped,max_abs,mean_abs,tolerance,pass\n";
        for (const auto &r : reports) {
            out << r.name << "," << r.samples << "," << r.skipped << "," << format_double(r.max_abs) << ","
                << format_double(r.mean_abs) << "," << format_double(r.tolerance) << "," << (r.pass ? 1 : 0)
                << "\n";
        }
    } else {
        Json arr = Json::array();
        for (const auto &r : reports) {
            arr.push_back(to_json(r));
        }
        out << Json{{"pass", all}, {"suites", arr}}.dump(2) << "\n";
    }
    return all ? exit_pass : exit_fail;
}

// ---------------------------------------------------------------------------

int cmd_limits(const RunConfig &cfg, std::ostream &out)
{
    const auto ladders = run_limits(cfg);
    const bool all = std::all_of(ladders.begin(), ladders.end(), [](const auto &l) { return l.pass; });
    if (cfg.csv()) {
        out << "name,eps,deviation,slope,pass\n";
        for (const auto &l : ladders) {
            for (std::size_t i = 0; i < l.eps.size(); ++i) {
                out << l.name << "," << format_double(l.eps[i]) << "," << format_double(l.deviation[i]) << ","
                    << format_double(l.slope) << "," << (l.pass ? 1 : 0) << "\n";
            }
        }
    } else {
        Json arr = Json::array();
        for (const auto &l : ladders) {
            arr.push_back(to_json(l));
        }
        out << Json{{"pass", all}, {"ladders", arr}}.dump(2) << "\n";
    }
    return all ? exit_pass : exit_fail;
}

int cmd_potential(const RunConfig &cfg, std::ostream &out)
{
    const SolutionTriple s = cfg.family().build();
    const PairPotentials pots = potentials_from_triple(s, cfg.energy("eps1"), cfg.energy("eps2"), cfg.energy("E0"));
    const Grid grid = grid_from(cfg);
    if (grid.start.imag() != 0.0 || grid.stop.imag() != 0.0) {
        throw ConfigError("potential grid must be real");
    }
    Json rows = Json::array();
    if (cfg.csv()) {
        out << "x,re_u1,im_u1,re_u2,im_u2,re_u3,im_u3\n";
    }
    for (int i = 0; i < grid.count; ++i) {
        const double x = grid.at(i).real();
        std::array<Complex, 3> u{};
        bool pole = false;
        try {
            for (int j = 0; j < 3; ++j) {
                u[j] = pots.u[j](x);
            }
            pole = !std::all_of(u.begin(), u.end(), [](Complex z) { return is_finite(z); });
        } catch (const PoleError &) {
            pole = true;
        }
        if (pole) {
            u.fill(Complex{std::nan(""), std::nan("")});
        }
        if (cfg.csv()) {
            out << format_double(x);
            for (Complex z : u) {
                out << "," << csv_complex(z);
            }
            out << "\n";
        } else {
            rows.push_back(Json{{"x", x},
                                {"u1", pole ? Json(nullptr) : to_json(u[0])},
                                {"u2", pole ? Json(nullptr) : to_json(u[1])},
                                {"u3", pole ? Json(nullptr) : to_json(u[2])},
                                {"pole", pole}});
        }
    }
    if (!cfg.csv()) {
        out << Json{{"E0", to_json(pots.E0)},
                    {"eps", Json::array({to_json(pots.eps[0]), to_json(pots.eps[1]), to_json(pots.eps[2])})},
                    {"rows", rows}}
                   .dump(2)
            << "\n";
    }
    return exit_pass;
}

int cmd_lax(const RunConfig &cfg, std::ostream &out)
{
    const LaxSpec spec = cfg.lax();
    const double tol = cfg.tol("lax", 1e-6);
    const LaxRun run = run_lax(cfg, spec.build());
    const auto &d = run.spectrum.drift;
    const double max_drift = std::max({d[0], d[1], d[2]});
    const bool pass = run.eq84.pass && max_drift <= tol;
    if (cfg.csv()) {
        out << "t,q1,q2,q3,p1,p2,p3,trL,trL2,trL3\n";
        const auto &sp = run.spectrum;
        for (std::size_t i = 0; i < run.traj.states.size(); ++i) {
            const auto &s = run.traj.states[i];
            out << format_double(s.t);
            for (double v : s.q) {
                out << "," << format_double(v);
            }
            for (double v : s.p) {
                out << "," << format_double(v);
            }
            for (int k = 0; k < 3; ++k) {
                out << "," << format_double(i < sp.traces[k].size() ? sp.traces[k][i] : std::nan(""));
            }
            out << "\n";
        }
    } else {
        out << Json{{"pass", pass},
                    {"tolerance", tol},
                    {"config", to_json(spec)},
                    {"b_scale", to_json(run.set.b_scale)},
                    {"eq84", to_json(run.eq84)},
                    {"spectrum", to_json(run.spectrum)}}
                   .dump(2)
            << "\n";
    }
    return pass ? exit_pass : exit_fail;
}

Json load_config(const std::string &path)
{
    if (path.empty()) {
        return Json::object();
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Three-function functional equation toolkit"};
    app.require_subcommand(1);
    Options opt;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", opt.config_path, "JSON config file");
        sub->add_option("--seed", opt.seed, "Sampler seed");
        sub->add_option("--samples", opt.samples, "Number of samples");
        sub->add_option("--tol", opt.tol, "Tolerance override for every check");
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", opt.out_path, "Output path (default stdout)");
    };
    CLI::App *eval = app.add_subcommand("eval", "Tabulate f, g, h, F, G, H over a grid");
    CLI::App *verify = app.add_subcommand("verify", "Run residual suites");
    CLI::App *limits = app.add_subcommand("limits", "Convergence ladders of the degenerate limits");
    CLI::App *potential = app.add_subcommand("potential", "Tabulate the three pair potentials");
    CLI::App *lax = app.add_subcommand("lax", "Lax pair checks and isospectral integration");
    for (CLI::App *sub : {eval, verify, limits, potential, lax}) {
        add_common(sub);
    }
    verify->add_option("--suite", opt.suites, "Suite name (repeatable)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    for (CLI::App *sub : {eval, verify, limits, potential, lax}) {
        if (sub->count("--format") > 0) {
            opt.format_given = true;
        }
    }

    try {
        const RunConfig cfg(load_config(opt.config_path), opt);
        std::ostringstream buf;
        int code = exit_usage;
        if (eval->parsed()) {
            code = cmd_eval(cfg, buf);
        } else if (verify->parsed()) {
            code = cmd_verify(cfg, buf);
        } else if (limits->parsed()) {
            code = cmd_limits(cfg, buf);
        } else if (potential->parsed()) {
            code = cmd_potential(cfg, buf);
        } else if (lax->parsed()) {
            code = cmd_lax(cfg, buf);
        }
        const std::string &path = cfg.options().out_path;
        if (path.empty()) {
            out << buf.str();
        } else {
            std::ofstream f(path, std::ios::binary);
            if (!f) {
                err << "error: cannot write '" << path << "'\n";
                return exit_usage;
            }
            f << buf.str();
        }
        return code;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ConstraintError &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error &e) {
        err << "failure: " << e.what() << "\n";
        return exit_fail;
    } catch (const Json::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace trife
