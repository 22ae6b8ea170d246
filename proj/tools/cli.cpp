#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "restime/applications.hpp"
#include "restime/closed_form.hpp"
#include "restime/defect_models.hpp"
#include "restime/dynamics.hpp"
#include "restime/errors.hpp"
#include "restime/exact.hpp"
#include "restime/lane.hpp"
#include "restime/monte_carlo.hpp"
#include "restime/report.hpp"
#include "restime/zrp.hpp"

namespace restime::cli {
namespace {

// Relative tolerance for --check comparisons between closed forms and the
// general solver.
constexpr double kCheckTolerance = 1e-8;

struct Options {
    std::optional<int> length;
    std::optional<int> transient;
    double p = 0.5;
    std::optional<double> eps;
    std::optional<int> d;
    std::string model = "static";
    std::optional<double> psi;
    std::optional<double> lambda_a;
    std::optional<double> lambda_d;
    std::optional<int> spread;
    std::uint64_t walks = 100000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string format;
    std::string out;
    std::string profile_out;
    bool check = false;
    std::optional<std::string> lane_file;
    std::optional<std::string> data;
    double alpha = 1.0;
    double delta = 0.0;
};

// Options that only route output and are left out of the parameter echo.
bool is_routing(const std::string& name) {
    return name == "out" || name == "profile-out" || name == "format" || name == "help";
}

struct Context {
    CLI::App* command = nullptr;
    Options opt;
    Streams streams;
};

// ---------------------------------------------------------------- option sets

void add_length(CLI::App* sub, Options& o) {
    auto* len = sub->add_option("--length", o.length, "Right absorbing index L (sites 0..L); default 102");
    auto* tr = sub->add_option("--transient", o.transient, "Number of transient sites, L - 1");
    len->excludes(tr);
    tr->excludes(len);
}

void add_background(CLI::App* sub, Options& o) {
    sub->add_option("--p", o.p, "Background right-hop probability")->capture_default_str();
}

void add_defect(CLI::App* sub, Options& o) {
    sub->add_option("--eps", o.eps, "Defect bias");
    sub->add_option("--d", o.d, "Defect site (mode for model d)");
}

void add_model(CLI::App* sub, Options& o) {
    sub->add_option("--model", o.model, "Defect dynamics")
        ->check(CLI::IsMember({"static", "a", "b", "c", "d"}))
        ->capture_default_str();
    sub->add_option("--psi", o.psi, "Model a: activity probability");
    sub->add_option("--lambda-a", o.lambda_a, "Model b: mean attached phase length");
    sub->add_option("--lambda-d", o.lambda_d, "Model b: mean detached phase length");
    sub->add_option("--spread", o.spread, "Model d: half-width a of the triangle");
}

void add_output(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Write the result to this file instead of stdout");
}

void add_check(CLI::App* sub, Options& o) {
    sub->add_flag("--check", o.check, "Cross-check against an independent evaluation");
}

void add_lane_file(CLI::App* sub, Options& o) {
    sub->add_option("--lane-file", o.lane_file, "JSON lane {\"L\": int, \"p\": [...]}")
        ->check(CLI::ExistingFile);
}

// ------------------------------------------------------------------- helpers

// Reference lanes are L = 102 (101 transient sites).
constexpr int kDefaultLength = 102;

LengthSpec length_spec(const Options& o) {
    if (o.length) return LengthSpec::from_length(*o.length);
    if (o.transient) return LengthSpec::from_transient(*o.transient);
    return LengthSpec::from_length(kDefaultLength);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(fmt::format("cannot read {}", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

// The defect described by --model and its parameter flags, or nothing when
// no bias was given. Flags belonging to another model are rejected.
std::optional<DefectDynamics> dynamics_from(const Options& o, bool d_optional_for_c = false) {
    const std::string& m = o.model;
    require(!o.psi || m == "a", "--psi requires --model a");
    require((!o.lambda_a && !o.lambda_d) || m == "b", "--lambda-a/--lambda-d require --model b");
    require(!o.spread || m == "d", "--spread requires --model d");
    if (!o.eps) {
        require(m == "static", fmt::format("--model {} requires --eps", m));
        require(!o.d, "--d requires --eps");
        return std::nullopt;
    }
    const double eps = *o.eps;
    if (m == "c") {
        require(d_optional_for_c || !o.d, "--d is not used by --model c");
        return UniformMovingDefect{eps};
    }
    require(o.d.has_value(), fmt::format("--model {} requires --d", m));
    const int d = *o.d;
    if (m == "static") return StaticDefect{d, eps};
    if (m == "a") {
        require(o.psi.has_value(), "--model a requires --psi");
        return IntermittentDefect{d, eps, *o.psi};
    }
    if (m == "b") {
        require(o.lambda_a && o.lambda_d, "--model b requires --lambda-a and --lambda-d");
        return RenewalDefect{d, eps, *o.lambda_a, *o.lambda_d};
    }
    require(o.spread.has_value(), "--model d requires --spread");
    return TriangularMovingDefect{d, eps, *o.spread};
}

Lane lane_from(const Options& o, const LengthSpec& length,
               const std::optional<DefectDynamics>& dyn) {
    const HomogeneousParams base(o.p);
    if (!dyn) return make_homogeneous_lane(length.boundary_index, base.p());
    return effective_lane(base, length.boundary_index, *dyn);
}

// Lane and length from --lane-file or from the homogeneous/defect flags.
std::pair<Lane, LengthSpec> resolve_lane(const Context& ctx) {
    const Options& o = ctx.opt;
    if (o.lane_file) {
        require(!o.length && !o.transient && !o.eps && !o.d && o.model == "static",
                "--lane-file cannot be combined with length or defect flags");
        Lane lane = lane_from_json(read_file(*o.lane_file));
        return {lane, LengthSpec::from_length(lane.length())};
    }
    const LengthSpec length = length_spec(o);
    return {lane_from(o, length, dynamics_from(o)), length};
}

Table base_table(const Context& ctx, const std::optional<LengthSpec>& length) {
    Table t;
    t.with("version", std::string(version())).with("command", ctx.command->get_name());
    for (const CLI::Option* opt : ctx.command->get_options()) {
        const std::string name = opt->get_single_name();
        if (opt->count() == 0 || is_routing(name)) continue;
        const auto& results = opt->results();
        t.with(name, results.empty() ? std::string("true") : fmt::format("{}", fmt::join(results, ";")));
    }
    if (length) {
        t.with("L", length->boundary_index)
            .with("convention", std::string(to_string(length->given)));
    } else if (ctx.opt.lane_file) {
        t.with("convention", std::string("lane-file"));
    }
    t.with("seed", static_cast<std::int64_t>(ctx.opt.seed));
    return t;
}

void emit(const Context& ctx, const Table& table, const std::string& default_format = "csv",
          const std::string& path_override = "") {
    const std::string format = ctx.opt.format.empty() ? default_format : ctx.opt.format;
    const std::string text = format == "json" ? to_json(table) : to_csv(table);
    const std::string& path = path_override.empty() ? ctx.opt.out : path_override;
    if (path.empty()) {
        ctx.streams.out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError(fmt::format("cannot write {}", path));
    file << text;
}

double relative_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        diff = std::max(diff, std::fabs(a[k] - b[k]));
        scale = std::max(scale, std::fabs(b[k]));
    }
    return scale > 0.0 ? diff / scale : diff;
}

void check_close(const char* what, double gap) {
    if (!(gap <= kCheckTolerance)) {
        throw NumericalCheckError(
            fmt::format("{}: relative gap {:.3e} exceeds {:.0e}", what, gap, kCheckTolerance));
    }
}

// --------------------------------------------------------------- subcommands

void cmd_exact(const Context& ctx) {
    const auto [lane, length] = resolve_lane(ctx);
    SolverOptions so;
    so.verify_with_oracle = ctx.opt.check;
    const LaneSolution sol = solve_lane(lane, so);
    Table t = lane_table(sol, length);
    Table out = base_table(ctx, ctx.opt.lane_file ? std::optional<LengthSpec>{} : length);
    if (ctx.opt.lane_file) out.with("L", lane.length());
    out.with("c", sol.visits.current)
        .with("gamma", sol.residence.gamma)
        .with("precision_warning", std::string(sol.visits.precision_warning ? "true" : "false"));
    out.columns = std::move(t.columns);
    out.rows = std::move(t.rows);
    if (sol.visits.precision_warning) {
        ctx.streams.err << fmt::format(
            "warning: product-form visit profile differs from the substitution result by {:.3e}\n",
            sol.visits.closed_form_discrepancy);
    }
    emit(ctx, out);
}

struct ClosedFormProfile {
    std::vector<double> visits;
    std::vector<double> exits;
    std::vector<double> local;
    double current = 0.0;
    double gamma = 0.0;
};

ClosedFormProfile closed_form_profile(int L, int d, double eps, double p) {
    namespace cf = closed_form;
    ClosedFormProfile f;
    if (p == 0.5) {
        f.visits = cf::symmetric_visits(L, d, eps);
        f.local = cf::symmetric_local_residence(L, d, eps);
        for (int i = 1; i < L; ++i) f.exits.push_back(cf::symmetric_exit_probability(L, d, eps, i));
        f.current = cf::symmetric_current(L, d, eps);
        f.gamma = cf::symmetric_gamma(L, d, eps);
        return f;
    }
    f.visits = cf::driven_visits(L, d, eps, p);
    for (int i = 1; i < L; ++i) f.exits.push_back(cf::driven_exit_probability(L, d, eps, p, i));
    for (int i = 1; i < L; ++i) {
        f.local.push_back(f.exits[i - 1] / f.exits[0] * f.visits[i - 1]);
    }
    f.current = cf::driven_current(L, d, eps, p);
    f.gamma = cf::driven_gamma(L, d, eps, p);
    return f;
}

void cmd_closed_form(const Context& ctx) {
    const Options& o = ctx.opt;
    const LengthSpec length = length_spec(o);
    const int L = length.boundary_index;
    const ClosedFormProfile f = closed_form_profile(L, *o.d, *o.eps, o.p);
    if (o.check) {
        const Lane lane = apply_static_defect(make_homogeneous_lane(L, o.p), {*o.d, *o.eps});
        const LaneSolution sol = solve_lane(lane);
        check_close("mean visits", relative_gap(f.visits, sol.visits.visits));
        check_close("exit probabilities", relative_gap(f.exits, sol.exits.right));
        check_close("local residence", relative_gap(f.local, sol.residence.local));
        check_close("residence time", relative_gap({f.gamma}, {sol.residence.gamma}));
    }
    Table t = base_table(ctx, length);
    t.with("regime", std::string(o.p == 0.5 ? "symmetric" : "driven"))
        .with("c", f.current)
        .with("gamma", f.gamma);
    t.columns = {"site", "N1i", "P_RE", "local_residence"};
    for (int i = 1; i < L; ++i) {
        t.rows.push_back({std::int64_t{i}, f.visits[i - 1], f.exits[i - 1], f.local[i - 1]});
    }
    emit(ctx, t);
}

void cmd_scan_d(const Context& ctx) {
    const Options& o = ctx.opt;
    const LengthSpec length = length_spec(o);
    const int L = length.boundary_index;
    require(L >= 4, "scan-d needs L >= 4");
    const HomogeneousParams base(o.p);
    const auto rows = scan_defect_position(base, *o.eps, L, 2, L - 2);
    if (o.check) {
        std::vector<double> formula, solver;
        for (const ScanRow& r : rows) {
            formula.push_back(r.gamma);
            const Lane lane = apply_static_defect(make_homogeneous_lane(L, o.p), {r.position, *o.eps});
            solver.push_back(residence_report(lane).gamma);
        }
        check_close("residence time scan", relative_gap(formula, solver));
    }
    Table t = base_table(ctx, length);
    t.with("gamma_no_defect", baseline_gamma(base, L));
    t.columns = {"d", "gamma"};
    for (const ScanRow& r : rows) t.rows.push_back({std::int64_t{r.position}, r.gamma});
    emit(ctx, t);
}

void cmd_scan_spread(const Context& ctx) {
    const Options& o = ctx.opt;
    const LengthSpec length = length_spec(o);
    const int L = length.boundary_index;
    const int d = *o.d;
    const int a_max = std::min(d - 2, L - 2 - d);
    require(a_max >= 0, fmt::format("defect site d={} outside [2, L-2] for L={}", d, L));
    const HomogeneousParams base(o.p);
    const auto rows = scan_spread(base, *o.eps, L, d, 0, a_max);
    const double gamma_static = closed_form::static_defect_gamma(L, d, *o.eps, o.p);
    if (o.check) check_close("spread a=0 against the static defect",
                             relative_gap({rows.front().gamma}, {gamma_static}));
    Table t = base_table(ctx, length);
    t.with("gamma_static", gamma_static).with("gamma_no_defect", baseline_gamma(base, L));
    t.columns = {"a", "a_over_L", "gamma"};
    for (const ScanRow& r : rows) {
        t.rows.push_back({std::int64_t{r.position}, static_cast<double>(r.position) / L, r.gamma});
    }
    emit(ctx, t);
}

void cmd_profiles(const Context& ctx) {
    const Options& o = ctx.opt;
    const LengthSpec length = length_spec(o);
    const int L = length.boundary_index;
    require(o.eps.has_value(), "profiles requires --eps");
    const auto dyn = dynamics_from(o, /*d_optional_for_c=*/true);
    const HomogeneousParams base(o.p);
    const LaneSolution none = solve_lane(make_homogeneous_lane(L, o.p));
    const LaneSolution model = solve_lane(effective_lane(base, L, *dyn), {o.check, 1e-10});
    std::optional<LaneSolution> fixed;
    if (o.d) fixed = solve_lane(effective_lane(base, L, StaticDefect{*o.d, *o.eps}), {o.check, 1e-10});

    Table t = base_table(ctx, length);
    t.with("gamma_no_defect", none.residence.gamma).with("gamma_model", model.residence.gamma);
    if (fixed) t.with("gamma_static", fixed->residence.gamma);
    t.columns = {"site", "N1i_none", "local_none"};
    if (fixed) t.columns.insert(t.columns.end(), {"N1i_static", "local_static"});
    t.columns.insert(t.columns.end(), {"N1i_model", "local_model"});
    for (int i = 1; i < L; ++i) {
        std::vector<Cell> row{std::int64_t{i}, none.visits.at(i), none.residence.at(i)};
        if (fixed) {
            row.emplace_back(fixed->visits.at(i));
            row.emplace_back(fixed->residence.at(i));
        }
        row.emplace_back(model.visits.at(i));
        row.emplace_back(model.residence.at(i));
        t.rows.push_back(std::move(row));
    }
    emit(ctx, t);
}

void cmd_simulate(const Context& ctx) {
    const Options& o = ctx.opt;
    const LengthSpec length = length_spec(o);
    const int L = length.boundary_index;
    McConfig cfg;
    cfg.walks = o.walks;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    cfg.base = HomogeneousParams(o.p);
    cfg.L = L;
    cfg.dynamics = dynamics_from(o);
    if (ctx.streams.progress) {
        std::ostream& err = ctx.streams.err;
        cfg.progress = [&err](std::uint64_t done, std::uint64_t total) {
            err << fmt::format("\rwalks {}/{}", done, total) << (done == total ? "\n" : "")
                << std::flush;
        };
    }
    const McEstimate est = simulate(cfg);
    const Lane effective = lane_from(o, length, cfg.dynamics);
    const ResidenceReport exact = residence_report(effective);
    const double p_re_exact = exit_probabilities(effective).at(1);

    Table t = base_table(ctx, length);
    t.with("model", std::string(cfg.dynamics ? model_name(*cfg.dynamics) : "none"))
        .with("gamma_exact_effective", exact.gamma)
        .with("p_re_exact_effective", p_re_exact);
    t.columns = {"quantity", "estimate", "se"};
    t.rows.push_back({std::string("gamma"), est.gamma_hat, est.gamma_se});
    t.rows.push_back({std::string("p_re"), est.p_re_hat, est.p_re_se});
    t.rows.push_back({std::string("n_right"), static_cast<std::int64_t>(est.n_right), std::string()});
    t.rows.push_back({std::string("n_left"), static_cast<std::int64_t>(est.n_left), std::string()});
    emit(ctx, t);

    if (!o.profile_out.empty()) {
        Table prof = base_table(ctx, length);
        prof.columns = {"site", "local_hat", "local_se", "local_exact_effective"};
        for (int i = 1; i < L; ++i) {
            prof.rows.push_back({std::int64_t{i}, est.local_hat[i - 1], est.local_se[i - 1],
                                 exact.at(i)});
        }
        emit(ctx, prof, "csv", o.profile_out);
    }
}

std::vector<IpasPoint> read_ipas_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<IpasPoint> data;
    bool header = true;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            require(line == "phi,ipas", fmt::format("{}: expected header 'phi,ipas'", path));
            continue;
        }
        const auto comma = line.find(',');
        require(comma != std::string::npos, fmt::format("{}:{}: expected two columns", path, line_no));
        try {
            std::size_t used_phi = 0;
            std::size_t used_ipas = 0;
            const std::string phi_text = line.substr(0, comma);
            const std::string ipas_text = line.substr(comma + 1);
            IpasPoint pt{std::stod(phi_text, &used_phi), std::stod(ipas_text, &used_ipas)};
            require(used_phi == phi_text.size() && used_ipas == ipas_text.size(),
                    fmt::format("{}:{}: trailing characters", path, line_no));
            data.push_back(pt);
        } catch (const std::logic_error& e) {
            if (dynamic_cast<const ValidationError*>(&e)) throw;
            throw ValidationError(fmt::format("{}:{}: not a number", path, line_no));
        }
    }
    return data;
}

Table fit_table(const Context& ctx, const LengthSpec& length, const IpasSetting& setting,
                const FitResult& fit, bool converged) {
    Table t = base_table(ctx, length);
    t.with("p", setting.base.p()).with("d", setting.d).with("converged", std::string(converged ? "true" : "false"));
    t.columns = {"a_bar", "b_bar", "alpha", "c_fit", "rss", "iterations", "degenerate"};
    t.rows.push_back({fit.a_bar, fit.b_bar, fit.alpha, fit.c_fit, fit.rss,
                      std::int64_t{fit.iterations}, std::string(fit.degenerate ? "true" : "false")});
    return t;
}

int cmd_fit_ipas(const Context& ctx) {
    const Options& o = ctx.opt;
    const LengthSpec length = length_spec(o);
    IpasSetting setting;
    setting.L = length.boundary_index;
    setting.d = o.d.value_or(setting.L / 2);
    // the fit lives on the driven p = 0.55 background unless told otherwise
    if (ctx.command->count("--p") > 0) setting.base = HomogeneousParams(o.p);
    const auto data = read_ipas_csv(*o.data);
    try {
        emit(ctx, fit_table(ctx, length, setting, fit_ipas(data, setting), true), "json");
        return kExitOk;
    } catch (const FitConvergenceError& e) {
        ctx.streams.err << "error: " << e.what() << "; best point so far follows\n";
        emit(ctx, fit_table(ctx, length, setting, e.best(), false), "json");
        return kExitFailure;
    }
}

void cmd_zrp(const Context& ctx) {
    const Options& o = ctx.opt;
    const auto [lane, length] = resolve_lane(ctx);
    const ZrpProfile prof = zrp_stationary(lane, o.alpha, o.delta);
    if (o.check) {
        // rho = alpha N_{1.} + delta N_{L-1,.}; row L-1 is row 1 of the mirrored lane.
        const int n = lane.transient_count();
        std::vector<double> mirrored(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) mirrored[static_cast<std::size_t>(i - 1)] = lane.q(n + 1 - i);
        const auto first = mean_visits(lane).visits;
        const auto last = mean_visits(Lane::from_right_probabilities(mirrored)).visits;
        std::vector<double> expected(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) expected[k] = o.alpha * first[k] + o.delta * last[n - 1 - k];
        check_close("stationary profile against visit rows", relative_gap(prof.rho, expected));
    }
    Table t = base_table(ctx, ctx.opt.lane_file ? std::optional<LengthSpec>{} : length);
    if (ctx.opt.lane_file) t.with("L", lane.length());
    t.columns = {"site", "rho"};
    for (int i = 1; i <= lane.transient_count(); ++i) t.rows.push_back({std::int64_t{i}, prof.at(i)});
    emit(ctx, t);
}

}  // namespace

int run(const std::vector<std::string>& args, Streams streams) {
    CLI::App app{"Residence times of random walks with defects between absorbing boundaries",
                 "restime"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    Options o;
    std::function<int(const Context&)> action;
    CLI::App* chosen = nullptr;
    auto bind = [&](CLI::App* sub, std::function<int(const Context&)> fn) {
        sub->callback([&, sub, fn] {
            chosen = sub;
            action = fn;
        });
    };
    auto returning_ok = [](void (*fn)(const Context&)) {
        return [fn](const Context& c) {
            fn(c);
            return kExitOk;
        };
    };

    auto* exact = app.add_subcommand("exact", "Visit profile, exit probabilities and residence time");
    add_length(exact, o);
    add_lane_file(exact, o);
    add_background(exact, o);
    add_defect(exact, o);
    add_model(exact, o);
    add_output(exact, o);
    add_check(exact, o);
    bind(exact, returning_ok(cmd_exact));

    auto* cf = app.add_subcommand("closed-form", "Single static defect by explicit formulas");
    add_length(cf, o);
    add_background(cf, o);
    cf->add_option("--eps", o.eps, "Defect bias")->required();
    cf->add_option("--d", o.d, "Defect site")->required();
    add_output(cf, o);
    add_check(cf, o);
    bind(cf, returning_ok(cmd_closed_form));

    auto* scan_d = app.add_subcommand("scan-d", "Residence time against the defect site");
    add_length(scan_d, o);
    add_background(scan_d, o);
    scan_d->add_option("--eps", o.eps, "Defect bias")->required();
    add_output(scan_d, o);
    add_check(scan_d, o);
    bind(scan_d, returning_ok(cmd_scan_d));

    auto* scan_a = app.add_subcommand("scan-spread", "Model d residence time against the spread");
    add_length(scan_a, o);
    add_background(scan_a, o);
    scan_a->add_option("--eps", o.eps, "Defect bias")->required();
    scan_a->add_option("--d", o.d, "Mode of the triangle")->required();
    add_output(scan_a, o);
    add_check(scan_a, o);
    bind(scan_a, returning_ok(cmd_scan_spread));

    auto* profiles = app.add_subcommand("profiles", "Visit and local residence profiles per model");
    add_length(profiles, o);
    add_background(profiles, o);
    add_defect(profiles, o);
    add_model(profiles, o);
    add_output(profiles, o);
    add_check(profiles, o);
    bind(profiles, returning_ok(cmd_profiles));

    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimates conditioned on right exit");
    add_length(sim, o);
    add_background(sim, o);
    add_defect(sim, o);
    add_model(sim, o);
    sim->add_option("--walks", o.walks, "Number of trajectories")->capture_default_str();
    sim->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    sim->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
    sim->add_option("--profile-out", o.profile_out, "Also write the per-site profile CSV here");
    add_output(sim, o);
    bind(sim, returning_ok(cmd_simulate));

    auto* fit = app.add_subcommand("fit-ipas", "Fit the effective-bias curve to I_pas data");
    fit->add_option("--data", o.data, "CSV with header phi,ipas")->required()->check(CLI::ExistingFile);
    add_length(fit, o);
    fit->add_option("--p", o.p, "Background right-hop probability")->default_str("0.55");
    fit->add_option("--d", o.d, "Defect site (default L/2)");
    add_output(fit, o);
    bind(fit, cmd_fit_ipas);

    auto* zrp = app.add_subcommand("zrp", "Stationary occupations with boundary injection");
    add_length(zrp, o);
    add_lane_file(zrp, o);
    add_background(zrp, o);
    add_defect(zrp, o);
    zrp->add_option("--alpha", o.alpha, "Injection rate at site 1")->capture_default_str();
    zrp->add_option("--delta", o.delta, "Injection rate at site L-1")->capture_default_str();
    add_output(zrp, o);
    add_check(zrp, o);
    bind(zrp, returning_ok(cmd_zrp));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, streams.out, streams.err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        Context ctx{chosen, o, streams};
        return action(ctx);
    } catch (const ValidationError& e) {
        streams.err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalCheckError& e) {
        streams.err << "check failed: " << e.what() << '\n';
        return kExitCheck;
    } catch (const std::exception& e) {
        streams.err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace restime::cli
