#include "dirilab/cli.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "dirilab/corpus.hpp"
#include "dirilab/green_identities.hpp"
#include "dirilab/io.hpp"
#include "dirilab/mean_analysis.hpp"
#include "dirilab/torus_lab.hpp"
#include "dirilab/zero_finder.hpp"

namespace dirilab {

namespace {

struct Ctx {
    const json& cfg;
    std::uint64_t seed = 0;
    CommandOutput out;
    std::vector<CheckReport> reports;
};

using Handler = std::function<void(Ctx&)>;

const std::vector<const char*> kCommon = {"command", "check", "experiment", "seed"};

void allow(const json& cfg, std::initializer_list<const char*> keys) {
    if (!cfg.is_object()) schema_error("", "config must be a JSON object");
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        for (const char* k : kCommon) ok = ok || it.key() == k;
        if (!ok) schema_error(pointer_join("", it.key()), "unknown field");
    }
}

ExpSeries series_of(const json& cfg, const char* key = "f") {
    auto it = cfg.find(key);
    if (it == cfg.end()) schema_error(pointer_join("", key), "missing required field");
    return series_from_json(*it, pointer_join("", key));
}

MeanSchedule schedule_of(const json& cfg, MeanSchedule fallback = {}) {
    auto it = cfg.find("schedule");
    if (it == cfg.end()) return fallback;
    const std::string p = "/schedule";
    check_keys(*it, p, {"T_list", "panels_per_unit", "eps_stab"});
    MeanSchedule s = fallback;
    s.T_list = get_numbers(*it, p, "T_list", s.T_list);
    s.panels_per_unit = get_int(*it, p, "panels_per_unit", s.panels_per_unit);
    s.eps_stab = get_number(*it, p, "eps_stab", s.eps_stab);
    try {
        s.validate();
    } catch (const Error& e) {
        schema_error(p, e.what());
    }
    return s;
}

std::string trace_csv(const CheckReport& r, const std::string& xname) {
    std::vector<std::vector<double>> rows;
    for (auto [x, y] : r.trace) rows.push_back({x, y});
    return to_csv({xname, "value"}, rows);
}

Point2 point_of(const json& j, const std::string& p) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) schema_error(p, "expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<ConvexPolygon> polygons_of(const json& cfg, const char* key) {
    std::vector<ConvexPolygon> out;
    auto it = cfg.find(key);
    if (it == cfg.end()) return out;
    std::string p = pointer_join("", key);
    if (!it->is_array()) schema_error(p, "expected an array of polygons");
    for (std::size_t i = 0; i < it->size(); ++i) {
        std::string pp = pointer_join(p, i);
        const json& poly = (*it)[i];
        if (!poly.is_array() || poly.size() < 3) schema_error(pp, "a polygon needs at least 3 vertices");
        std::vector<Point2> pts;
        for (std::size_t k = 0; k < poly.size(); ++k) pts.push_back(point_of(poly[k], pointer_join(pp, k)));
        try {
            out.push_back(make_convex(pts));
        } catch (const Error& e) {
            schema_error(pp, e.what());
        }
    }
    return out;
}

// "cover": {"n", "width"} | "polygons"/"exclude" | "full": true
TorusSet torus_set_of(const json& cfg, double* width = nullptr) {
    if (get_bool(cfg, "", "full", false)) return TorusSet::full();
    TorusSet U;
    if (auto it = cfg.find("cover"); it != cfg.end()) {
        check_keys(*it, "/cover", {"n", "width", "measure"});
        double n = require_number(*it, "/cover", "n");
        double w = get_number(*it, "/cover", "width", 0.0);
        if (w <= 0) w = 0.98 * width_for_measure(n, get_number(*it, "/cover", "measure", 0.1));
        if (width) *width = w;
        U = parallelogram_cover(n, w);
    }
    for (auto& p : polygons_of(cfg, "polygons")) U.include(std::move(p));
    for (auto& p : polygons_of(cfg, "exclude")) U.exclude(std::move(p));
    return U;
}

void cmd_eval(Ctx& c) {
    allow(c.cfg, {"f", "s", "xi"});
    ExpSeries f = series_of(c.cfg);
    std::vector<cplx> pts;
    auto it = c.cfg.find("s");
    if (it == c.cfg.end()) schema_error("/s", "missing required field");
    if (it->is_array() && !it->empty() && (*it)[0].is_array()) {
        for (std::size_t i = 0; i < it->size(); ++i) {
            auto q = point_of((*it)[i], pointer_join("/s", i));
            pts.emplace_back(q[0], q[1]);
        }
    } else {
        pts.push_back(get_complex(c.cfg, "", "s", 0.0));
    }
    bool shifted = c.cfg.contains("xi");
    cplx xi = get_complex(c.cfg, "", "xi", 0.0);
    json vals = json::array();
    std::vector<std::vector<double>> rows;
    for (cplx s : pts) {
        cplx v = f.eval(s);
        if (shifted) v = frostman(xi, v);
        vals.push_back({{"s", {s.real(), s.imag()}}, {"value", {v.real(), v.imag()}}});
        rows.push_back({s.real(), s.imag(), v.real(), v.imag()});
    }
    c.out.report["values"] = vals;
    c.out.files.emplace_back("values.csv", to_csv({"s_re", "s_im", "value_re", "value_im"}, rows));
}

void cmd_mean(Ctx& c) {
    allow(c.cfg, {"f", "sigma", "p", "schedule"});
    ExpSeries f = series_of(c.cfg);
    double sigma = get_number(c.cfg, "", "sigma", 1.0), p = get_number(c.cfg, "", "p", 2.0);
    auto sched = schedule_of(c.cfg);
    auto rep = ergodic_crosscheck(f, sigma, p, sched);
    auto hp = hp_norm(f, p, sched);
    rep.extra["hp_norm"] = hp.value;
    rep.extra["hp_trace"] = hp.trace;
    c.out.files.emplace_back("trace.csv", trace_csv(rep, "T"));
    c.reports.push_back(rep);
}

void cmd_jessen(Ctx& c) {
    allow(c.cfg, {"f", "sigma", "T", "tolerance"});
    ExpSeries f = series_of(c.cfg);
    double sigma = get_number(c.cfg, "", "sigma", 1.0), T = get_number(c.cfg, "", "T", 400.0);
    auto torus = jessen_function(f, sigma, JessenMode::Torus);
    auto window = jessen_function(f, sigma, JessenMode::Window, T);
    CheckReport rep = make_report("jessen", window.value, torus.value);
    rep.tolerance = get_number(c.cfg, "", "tolerance", 1e-2) + torus.error_budget + window.error_budget;
    rep.verdict = rep.abs_err <= rep.tolerance;
    rep.params = {{"sigma", sigma}, {"T", T}};
    rep.extra = {{"torus_budget", torus.error_budget}, {"window_budget", window.error_budget}};
    c.reports.push_back(rep);
}

void cmd_hardy_stein(Ctx& c) {
    allow(c.cfg, {"f", "p", "grid", "schedule", "rho"});
    ExpSeries f = series_of(c.cfg);
    double p = get_number(c.cfg, "", "p", 2.0);
    auto grid = get_numbers(c.cfg, "", "grid", {0.5, 1.0});
    auto reps = hardy_stein_check(f, p, grid, schedule_of(c.cfg), get_number(c.cfg, "", "rho", 1e-3));
    std::vector<std::vector<double>> rows;
    for (auto& r : reps) {
        rows.push_back({r.params["kappa"].get<double>(), r.lhs, r.rhs});
        c.reports.push_back(r);
    }
    c.out.files.emplace_back("trace.csv", to_csv({"kappa", "lhs", "rhs"}, rows));
}

void cmd_lp(Ctx& c) {
    allow(c.cfg, {"f", "p", "schedule", "rho"});
    ExpSeries f = series_of(c.cfg);
    auto rep = littlewood_paley(f, get_number(c.cfg, "", "p", 2.0), schedule_of(c.cfg), get_number(c.cfg, "", "rho", 1e-3));
    c.out.files.emplace_back("trace.csv", trace_csv(rep, "sigma0"));
    c.reports.push_back(rep);
}

void cmd_lp_boundary(Ctx& c) {
    allow(c.cfg, {"f", "p", "T_list", "schedule"});
    ExpSeries f = series_of(c.cfg);
    std::vector<double> Ts{50.0, 100.0, 200.0};
    if (c.cfg.contains("schedule")) Ts = schedule_of(c.cfg).T_list;
    Ts = get_numbers(c.cfg, "", "T_list", Ts);
    auto rep = boundary_lp_check(f, get_number(c.cfg, "", "p", 2.0), Ts);
    c.out.files.emplace_back("trace.csv", trace_csv(rep, "T"));
    c.reports.push_back(rep);
}

void cmd_lp_torus(Ctx& c) {
    allow(c.cfg, {"f", "p"});
    c.reports.push_back(torus_lp(series_of(c.cfg), get_number(c.cfg, "", "p", 2.0)));
}

Rectangle rect_of(const json& cfg) {
    auto r = get_numbers(cfg, "", "rect", {});
    if (r.size() != 4) schema_error("/rect", "expected [sigma0, sigma1, t0, t1]");
    Rectangle R{r[0], r[1], r[2], r[3]};
    try {
        R.validate();
    } catch (const Error& e) {
        schema_error("/rect", e.what());
    }
    return R;
}

std::string zeros_csv(const ZeroList& z) {
    std::vector<std::vector<double>> rows;
    for (const auto& e : z.zeros)
        rows.push_back({e.location.real(), e.location.imag(), static_cast<double>(e.multiplicity), e.radius});
    return to_csv({"location_re", "location_im", "multiplicity", "radius"}, rows);
}

json zeros_json(const ZeroList& z) {
    json arr = json::array();
    for (const auto& e : z.zeros)
        arr.push_back({{"location", {e.location.real(), e.location.imag()}}, {"multiplicity", e.multiplicity}, {"radius", e.radius}});
    return {{"zeros", arr}, {"complete", z.complete}, {"total_multiplicity", z.total_multiplicity()}};
}

void cmd_zeros(Ctx& c) {
    allow(c.cfg, {"f", "rect", "tol", "xi"});
    ExpSeries f = series_of(c.cfg);
    if (c.cfg.contains("xi")) f = f.plus_constant(-get_complex(c.cfg, "", "xi", 0.0));
    auto z = isolate_zeros(Holomorphic::from(f), rect_of(c.cfg), get_number(c.cfg, "", "tol", 1e-9));
    c.out.report["zeros"] = zeros_json(z);
    c.out.pass = z.complete;
    c.out.files.emplace_back("zeros.csv", zeros_csv(z));
}

CountingOptions counting_options(const Ctx& c) {
    CountingOptions o;
    o.seed = c.seed;
    return o;
}

void cmd_counting(Ctx& c) {
    allow(c.cfg, {"f", "xi", "T"});
    ExpSeries f = series_of(c.cfg);
    cplx xi = get_complex(c.cfg, "", "xi", 0.5);
    auto r = counting_Nf(f, xi, get_number(c.cfg, "", "T", 50.0), counting_options(c));
    c.out.report["counting"] = {{"value", r.value}, {"gamma", r.gamma}, {"T_used", r.T_used}, {"retries", r.retries},
                                {"zeros", zeros_json(r.zeros)}};
    c.out.files.emplace_back("zeros.csv", zeros_csv(r.zeros));
}

void cmd_mean_counting(Ctx& c) {
    allow(c.cfg, {"f", "xi", "schedule", "tolerance"});
    ExpSeries f = series_of(c.cfg);
    cplx xi = get_complex(c.cfg, "", "xi", 0.5);
    auto sched = schedule_of(c.cfg);
    auto r = mean_counting(f, xi, sched, counting_options(c));
    CheckReport rep = make_report("mean_counting", r.value, r.bound);
    rep.tolerance = get_number(c.cfg, "", "tolerance", 0.02);
    rep.verdict = rep.lhs <= rep.rhs + rep.tolerance;
    rep.params = {{"xi", {xi.real(), xi.imag()}}, {"gamma", r.gamma}, {"stabilized", r.stabilized}};
    std::vector<std::vector<double>> rows;
    for (auto& t : r.trace) rows.push_back({t[0], t[1], t[2]});
    rep.extra = {{"per_sigma0", r.per_sigma0}, {"sigma0", r.sigma0}};
    c.out.files.emplace_back("trace.csv", to_csv({"sigma0", "T", "value"}, rows));
    c.reports.push_back(rep);
}

void cmd_jensen(Ctx& c) {
    allow(c.cfg, {"f", "sigma0", "schedule"});
    auto rep = jensen_check(series_of(c.cfg), get_number(c.cfg, "", "sigma0", 0.5), schedule_of(c.cfg));
    c.out.files.emplace_back("trace.csv", trace_csv(rep, "T"));
    c.reports.push_back(rep);
}

void cmd_blaschke(Ctx& c) {
    allow(c.cfg, {"f", "gamma", "c"});
    ExpSeries f = series_of(c.cfg);
    c.reports.push_back(blaschke_condition_check(f, require_number(c.cfg, "", "gamma"), require_number(c.cfg, "", "c"), c.seed));
}

void cmd_visit(Ctx& c) {
    allow(c.cfg, {"cover", "polygons", "exclude", "full", "T", "step", "tolerance"});
    TorusSet U = torus_set_of(c.cfg);
    double T = get_number(c.cfg, "", "T", 2000.0);
    auto v = visit_fraction(U, T, get_number(c.cfg, "", "step", 1e-2));
    CheckReport rep = make_report("visit", v.fraction, v.normalized_area);
    rep.tolerance = get_number(c.cfg, "", "tolerance", 0.03);
    rep.verdict = rep.abs_err <= rep.tolerance;
    rep.params = {{"T", T}, {"area_exact", U.area_is_exact()}};
    rep.extra = {{"crossings", v.crossings}};
    c.reports.push_back(rep);
}

void cmd_ss_build(Ctx& c) {
    allow(c.cfg, {"cover", "polygons", "exclude", "full", "delta", "degree", "grid_log2", "margin", "prune", "tau_max",
                  "tau_step", "e_tol"});
    double width = 0.0;
    TorusSet U = torus_set_of(c.cfg, &width);
    OuterOptions oo;
    oo.log2_grid = get_int(c.cfg, "", "grid_log2", oo.log2_grid);
    oo.margin = get_number(c.cfg, "", "margin", width > 0 ? 0.05 * width : 0.0);
    oo.prune = get_number(c.cfg, "", "prune", oo.prune);
    double delta = get_number(c.cfg, "", "delta", 0.5), degree = get_number(c.cfg, "", "degree", 48.0);
    auto oc = ss_outer_construct(U, delta, degree, oo);
    CheckReport rep = make_report("ss_build", oc.e_inf, 0.0);
    rep.tolerance = get_number(c.cfg, "", "e_tol", 0.1);
    rep.verdict = oc.e_inf <= rep.tolerance;
    rep.params = {{"delta", delta}, {"degree", degree}, {"grid", oc.grid}, {"margin", oc.margin}};
    rep.extra = {{"e_inf", oc.e_inf},           {"sup_abs", oc.sup_abs},   {"min_abs", oc.min_abs},
                 {"torus_mean2", oc.torus_mean2}, {"w2_mean", oc.w2_mean}, {"c00", oc.c00},
                 {"log_abs_F00", oc.log_abs_F00}, {"log_mean", oc.log_mean}, {"terms", oc.series.size()},
                 {"pruned_mass", oc.pruned_mass}, {"half_space", oc.half_space}};
    c.reports.push_back(rep);
    c.out.files.emplace_back("series.json", to_json(oc.series).dump(1) + "\n");
    ExpSeries f(oc.series);
    PhaseEvaluator ev(f, 0.0);
    double tmax = get_number(c.cfg, "", "tau_max", 10.0), step = get_number(c.cfg, "", "tau_step", 0.01);
    if (!(tmax > 0 && step > 0)) schema_error("/tau_max", "tau_max and tau_step must be positive");
    std::vector<std::vector<double>> rows;
    auto N = static_cast<long>(std::ceil(2 * tmax / step));
    for (long i = 0; i <= N; ++i) {
        double tau = -tmax + 2 * tmax * static_cast<double>(i) / static_cast<double>(N);
        rows.push_back({tau, std::abs(ev.at_t(tau))});
    }
    c.out.files.emplace_back("boundary.csv", to_csv({"tau", "abs_f"}, rows));
}

void cmd_gap(Ctx& c) {
    allow(c.cfg, {"n", "width", "delta", "degree", "p", "gap", "windows", "counting_T", "xi_samples", "full_square"});
    GapOptions o;
    o.n = get_number(c.cfg, "", "n", o.n);
    o.width = get_number(c.cfg, "", "width", o.width);
    o.delta = get_number(c.cfg, "", "delta", o.delta);
    o.degree = get_number(c.cfg, "", "degree", o.degree);
    o.p = get_number(c.cfg, "", "p", o.p);
    o.gap = get_number(c.cfg, "", "gap", o.gap);
    o.windows = get_numbers(c.cfg, "", "windows", o.windows);
    o.counting_T = get_numbers(c.cfg, "", "counting_T", o.counting_T);
    o.xi_samples = get_int(c.cfg, "", "xi_samples", o.xi_samples);
    o.full_square = get_bool(c.cfg, "", "full_square", o.full_square);
    o.seed = c.seed;
    auto rep = gap_experiment(o);
    c.out.files.emplace_back("trace.csv", trace_csv(rep, "T"));
    c.reports.push_back(rep);
}

void cmd_oscillation(Ctx& c) {
    allow(c.cfg, {"epsilon", "delta_prime", "n_schedule", "width", "degree", "xi_abs", "xi_phases", "step"});
    OscillationOptions o;
    o.epsilon = get_number(c.cfg, "", "epsilon", o.epsilon);
    o.delta_prime = get_number(c.cfg, "", "delta_prime", o.delta_prime);
    o.n_schedule = get_numbers(c.cfg, "", "n_schedule", o.n_schedule);
    o.width = get_number(c.cfg, "", "width", o.width);
    o.degree = get_number(c.cfg, "", "degree", o.degree);
    o.xi_abs = get_number(c.cfg, "", "xi_abs", o.xi_abs);
    o.xi_phases = get_int(c.cfg, "", "xi_phases", o.xi_phases);
    o.step = get_number(c.cfg, "", "step", o.step);
    auto rep = oscillation_experiment(o);
    c.out.files.emplace_back("trace.csv", trace_csv(rep, "n"));
    c.reports.push_back(rep);
}

void cmd_corpus(Ctx& c) {
    allow(c.cfg, {});
    json arr = json::array();
    for (const auto& e : corpus()) {
        ExpSeries f = e.make();
        arr.push_back({{"name", e.name}, {"formula", e.formula}, {"note", e.note}, {"terms", f.size()}});
    }
    c.out.report["corpus"] = arr;
}

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h = {
        {"eval", cmd_eval},
        {"mean", cmd_mean},
        {"jessen", cmd_jessen},
        {"hardy-stein", cmd_hardy_stein},
        {"lp", cmd_lp},
        {"lp-boundary", cmd_lp_boundary},
        {"lp-torus", cmd_lp_torus},
        {"zeros", cmd_zeros},
        {"counting", cmd_counting},
        {"mean-counting", cmd_mean_counting},
        {"jensen", cmd_jensen},
        {"blaschke-check", cmd_blaschke},
        {"visit", cmd_visit},
        {"ss-build", cmd_ss_build},
        {"gap", cmd_gap},
        {"oscillation", cmd_oscillation},
        {"corpus", cmd_corpus},
    };
    return h;
}

std::string command_in_config(const json& cfg) {
    for (const char* k : {"command", "check", "experiment"}) {
        auto it = cfg.find(k);
        if (it != cfg.end()) {
            if (!it->is_string()) schema_error(pointer_join("", k), "expected a string");
            return it->get<std::string>();
        }
    }
    schema_error("/command", "config names no command");
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, h] : handlers()) v.push_back(k);
        return v;
    }();
    return names;
}

CommandOutput run_command(const std::string& command, const json& config, std::optional<std::uint64_t> seed) {
    auto it = handlers().find(command);
    if (it == handlers().end()) fail(ErrorKind::InvalidInput, "unknown command \"" + command + "\"");
    if (!config.is_object()) schema_error("", "config must be a JSON object");
    std::string named;
    for (const char* k : {"command", "check", "experiment"})
        if (config.contains(k)) named = command_in_config(config);
    if (!named.empty() && named != command) schema_error("/command", "config is for \"" + named + "\", not \"" + command + "\"");
    Ctx c{config, 0, {}, {}};
    if (auto s = config.find("seed"); s != config.end()) {
        if (!s->is_number_unsigned()) schema_error("/seed", "expected a nonnegative integer");
        c.seed = s->get<std::uint64_t>();
    }
    if (seed) c.seed = *seed;
    c.out.report = {{"command", command}, {"seed", c.seed}};
    it->second(c);
    json reps = json::array();
    for (const auto& r : c.reports) {
        reps.push_back(to_json(r));
        c.out.pass = c.out.pass && r.verdict;
    }
    if (!c.reports.empty()) c.out.report["reports"] = reps;
    c.out.report["verdict"] = c.out.pass ? "pass" : "fail";
    c.out.files.insert(c.out.files.begin(), {"report.json", c.out.report.dump(2) + "\n"});
    return c.out;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for Dirichlet series in Hardy spaces"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_dir = ".";
    std::uint64_t seed = 0;
    bool verbose = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out-dir", out_dir, "directory for report.json and CSV traces");
    auto* seed_opt = app.add_option("--seed", seed, "seed for all sampling (overrides the config)");
    app.add_flag("--verbose", verbose, "print the report to stdout");
    for (const auto& name : command_names()) app.add_subcommand(name, "run the " + name + " command");
    auto* run = app.add_subcommand("run", "run the command named inside the config");
    run->add_option("config", config_path, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    try {
        json cfg = json::object();
        if (!config_path.empty()) cfg = read_json_file(config_path);
        auto* sub = app.get_subcommands().front();
        std::string cmd = sub->get_name();
        if (cmd == "run") {
            if (config_path.empty()) fail(ErrorKind::InvalidInput, "run needs a config");
            cmd = command_in_config(cfg);
        }
        std::optional<std::uint64_t> s;
        if (seed_opt->count() > 0) s = seed;
        CommandOutput out = run_command(cmd, cfg, s);
        write_files_atomic(out_dir, out.files);
        if (verbose || cmd == "corpus") std::cout << out.report.dump(2) << "\n";
        if (!verbose) {
            for (const auto& r : out.report.value("reports", json::array()))
                std::cout << r.value("name", cmd) << ": " << r.value("verdict", "fail") << "\n";
            if (!out.report.contains("reports")) std::cout << cmd << ": " << out.report["verdict"].get<std::string>() << "\n";
        }
        return out.pass ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace dirilab
