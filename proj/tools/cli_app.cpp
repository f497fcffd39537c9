#include "cli_app.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shearlab/functionals.hpp"
#include "shearlab/io.hpp"
#include "shearlab/ratelab.hpp"
#include "shearlab/stochastic.hpp"

namespace shearlab::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;

struct FlowArgs {
    std::string flow = "sine";
    double c = 0.0;
    int k0 = 1;
    double flow_alpha = 0.5;
    int lambda = 2;
    int terms = 12;
    double hurst = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    bool seed_given = false;
    std::size_t n = 0;  // 0 = subcommand default
};

void add_flow_options(CLI::App* cmd, FlowArgs& fa) {
    cmd->add_option("--flow", fa.flow,
                    "flow generator: constant|zero|linear|sine|weierstrass|fbm|fbm-sym");
    cmd->add_option("--c", fa.c, "constant flow value");
    cmd->add_option("--k0", fa.k0, "sine frequency");
    cmd->add_option("--flow-alpha", fa.flow_alpha, "weierstrass regularity exponent");
    cmd->add_option("--lambda", fa.lambda, "weierstrass base");
    cmd->add_option("--terms", fa.terms, "weierstrass term count");
    cmd->add_option("--hurst", fa.hurst, "fbm Hurst parameter");
    cmd->add_option("--seed", fa.seed, "random seed")->each([&fa](const std::string&) {
        fa.seed_given = true;
    });
    cmd->add_option("--stream", fa.stream, "seed substream");
    cmd->add_option("--n", fa.n, "grid size");
}

RandomSeed resolve_seed(const FlowArgs& fa) {
    if (fa.seed_given) return {fa.seed, fa.stream};
    if (const char* env = std::getenv("SHEARLAB_SEED"))
        return {static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10)), fa.stream};
    return {fa.seed, fa.stream};
}

FlowSample build_flow(const FlowArgs& fa, std::size_t default_n) {
    const std::size_t n = fa.n ? fa.n : default_n;
    const RandomSeed seed = resolve_seed(fa);
    if (fa.flow == "constant")
        return analytic_flow({AnalyticKind::Constant, fa.c, 1, {}}, Grid1D::torus(n));
    if (fa.flow == "zero")
        return analytic_flow({AnalyticKind::Constant, 0.0, 1, {}}, Grid1D::torus(n));
    if (fa.flow == "linear")
        return analytic_flow({AnalyticKind::Linear, 0.0, 1, {}}, Grid1D::interval(n));
    if (fa.flow == "sine")
        return analytic_flow({AnalyticKind::Sine, 0.0, fa.k0, {}}, Grid1D::torus(n));
    if (fa.flow == "weierstrass")
        return weierstrass(fa.flow_alpha, fa.lambda, fa.terms, Grid1D::torus(n));
    if (fa.flow == "fbm") return sample_fbm(fa.hurst, Grid1D::interval(n), seed);
    if (fa.flow == "fbm-sym")
        return symmetrize(sample_fbm(fa.hurst, Grid1D::interval(n / 2), seed));
    throw BadParameter("unknown --flow: " + fa.flow);
}

json flow_config(const FlowArgs& fa, std::size_t default_n) {
    json j;
    j["flow"] = fa.flow;
    j["n"] = fa.n ? fa.n : default_n;
    if (fa.flow == "constant") j["c"] = fa.c;
    if (fa.flow == "sine") j["k0"] = fa.k0;
    if (fa.flow == "weierstrass") {
        j["flow_alpha"] = fa.flow_alpha;
        j["lambda"] = fa.lambda;
        j["terms"] = fa.terms;
    }
    if (fa.flow == "fbm" || fa.flow == "fbm-sym") {
        j["hurst"] = fa.hurst;
        j["seed"] = resolve_seed(fa).seed;
        j["stream"] = fa.stream;
    }
    return j;
}

/// "a:b:count" -> count log-spaced values from a to b (either order).
std::vector<double> parse_range(const std::string& s) {
    const auto p1 = s.find(':');
    const auto p2 = s.find(':', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw BadParameter("range must be a:b:count, got " + s);
    const double a = std::stod(s.substr(0, p1));
    const double b = std::stod(s.substr(p1 + 1, p2 - p1 - 1));
    const std::size_t count = std::stoul(s.substr(p2 + 1));
    if (a <= 0.0 || b <= 0.0) throw BadParameter("range endpoints must be positive");
    if (count < 2) throw BadParameter("range needs at least 2 points");
    auto vals = log_spaced(std::min(a, b), std::max(a, b), count);
    if (a > b) std::reverse(vals.begin(), vals.end());
    return vals;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

/// Finalize an artifact: embed schema version, resolved config, its hash,
/// and a timestamp (the one field excluded from reproducibility).
json seal(json config, json payload) {
    json out;
    out["schema_version"] = kSchemaVersion;
    out["config"] = config;
    out["config_hash"] = config_hash(config.dump());
    for (auto& [k, v] : payload.items()) out[k] = v;
    out["timestamp"] = timestamp_utc();
    return out;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string());
    out << j.dump(2) << "\n";
}

// Expand a config file into flags inserted right after the subcommand
// token; explicit command-line flags override because every option takes
// the last value given. Unknown fields are rejected.
void apply_config_file(CLI::App& app, const std::string& path,
                       std::vector<std::string>& args) {
    std::ifstream in(path);
    if (!in) throw BadParameter("cannot read config file " + path);
    json cfg = json::parse(in);
    if (cfg.contains("schema_version") &&
        cfg["schema_version"].get<int>() != kSchemaVersion)
        throw BadParameter("config schema_version mismatch");

    std::vector<std::string> extra;
    for (auto& [key, val] : cfg.items()) {
        if (key == "schema_version" || key == "command") continue;
        const std::string flag = "--" + key;
        bool known = app.get_option_no_throw(flag) != nullptr;
        for (const auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
            if (sub->get_option_no_throw(flag)) known = true;
        if (!known) throw BadParameter("unknown config field: " + key);
        extra.push_back(flag);
        if (val.is_array()) {
            for (const auto& item : val)
                extra.push_back(item.is_string() ? item.get<std::string>() : item.dump());
        } else if (!val.is_boolean()) {
            extra.push_back(val.is_string() ? val.get<std::string>() : val.dump());
        }
    }

    // locate the subcommand token (first bare word, or the config's own
    // "command" field when the command line has none)
    std::size_t pos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!args[i].empty() && args[i][0] != '-' &&
            (i == 0 || args[i - 1] != "--config") &&
            app.get_subcommand_no_throw(args[i]) != nullptr) {
            pos = i + 1;
            break;
        }
    }
    if (pos == args.size() && cfg.contains("command")) {
        args.insert(args.begin(), cfg["command"].get<std::string>());
        pos = 1;
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), extra.begin(), extra.end());
}

int dispatch(const std::vector<std::string>& args);

}  // namespace

int run(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const UnderResolved& e) {
        std::cerr << json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
        return 3;
    } catch (const ResolutionExceeded& e) {
        std::cerr << json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
        return 3;
    } catch (const StepTooLarge& e) {
        std::cerr << json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
        return 3;
    } catch (const NyquistViolation& e) {
        std::cerr << json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
        return 3;
    } catch (const EmbeddingFailure& e) {
        std::cerr << json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
        return 3;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << json{{"error", e.what()}, {"code", 2}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}, {"code", 2}}.dump() << "\n";
        return 2;
    }
}

namespace {

int dispatch(const std::vector<std::string>& raw_args) {
    CLI::App app{"shear-flow mixing and enhanced-dissipation laboratory"};
    app.require_subcommand(1);
    app.fallthrough(true);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string config_path;
    int jobs = 0;
    std::string out_dir = ".";
    app.add_option("--config", config_path, "JSON config file (flags override)");
    app.add_option("--jobs", jobs, "max worker threads");
    app.add_option("--out", out_dir, "output directory");

    FlowArgs fa;

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a flow sample and write CSV + descriptor");
    add_flow_options(gen, fa);

    // ---- diag ----
    auto* diag = app.add_subcommand("diag", "evaluate one irregularity functional");
    add_flow_options(diag, fa);
    std::string functional = "gamma-wei";
    double alpha = 1.0, gamma = 0.5, rho = 0.5, p_exp = 1.0, delta = 0.125;
    double xi = 1.0, xi_max = 1e4;
    int per_decade = 64, depth = 8, levels = 6;
    double stride = 0.25, eps_k = 0.05;
    diag->add_option("--functional", functional,
                     "phi|rho-norm|gamma-wei|besov|roughness|pvar|omega1|k-alpha");
    diag->add_option("--alpha", alpha, "functional exponent");
    diag->add_option("--gamma", gamma, "interval exponent for rho-norm");
    diag->add_option("--rho", rho, "frequency exponent for rho-norm");
    diag->add_option("--p", p_exp, "L^p index (besov) or variation order (pvar)");
    diag->add_option("--delta", delta, "window half-length for omega1");
    diag->add_option("--xi", xi, "frequency for phi");
    diag->add_option("--ximax", xi_max, "largest scanned frequency");
    diag->add_option("--per-decade", per_decade, "xi grid density");
    diag->add_option("--depth", depth, "dyadic interval depth");
    diag->add_option("--levels", levels, "dyadic delta levels");
    diag->add_option("--stride", stride, "ybar stride as fraction of delta");
    diag->add_option("--eps", eps_k, "epsilon for k-alpha");

    // ---- mix ----
    auto* mix = app.add_subcommand("mix", "inviscid mixing experiment");
    add_flow_options(mix, fa);
    std::string times_spec = "10:1000:20";
    int k_mode = 1;
    double alpha_nominal = 0.5;
    mix->add_option("--times", times_spec, "record times a:b:count (log-spaced)");
    mix->add_option("--k", k_mode, "x-wavenumber");
    mix->add_option("--alpha", alpha_nominal, "nominal regularity (predicted -1/(2 alpha))");

    // ---- dissipate ----
    auto* dis = app.add_subcommand("dissipate", "enhanced dissipation sweep");
    add_flow_options(dis, fa);
    std::string nu_spec = "1e-6:1e-3:7";
    double q_thresh = std::exp(-1.0);
    double tau_exponent = -1.0;  // <0 = default alpha/(alpha+2)
    dis->add_option("--nu", nu_spec, "viscosity sweep a:b:count (log-spaced)");
    dis->add_option("--q", q_thresh, "crossing threshold fraction");
    dis->add_option("--k", k_mode, "x-wavenumber");
    dis->add_option("--alpha", alpha_nominal, "nominal regularity");
    dis->add_option("--tau-exponent", tau_exponent,
                    "t_end = 50 nu^-e (default e = alpha/(alpha+2); use 1 for diffusion)");

    // ---- fdr ----
    auto* fdr = app.add_subcommand("fdr", "fluctuation-dissipation identity check");
    add_flow_options(fdr, fa);
    double nu_one = 1e-2, t_one = 5.0;
    std::size_t paths = 10000, steps = 1000;
    fdr->add_option("--xi", xi, "frequency");
    fdr->add_option("--nu", nu_one, "viscosity");
    fdr->add_option("--t", t_one, "time horizon");
    fdr->add_option("--paths", paths, "Monte Carlo paths");
    fdr->add_option("--steps", steps, "time steps per path");

    // ---- wei ----
    auto* wei = app.add_subcommand("wei", "closed-form decay bound vs measured decay");
    add_flow_options(wei, fa);
    std::string wei_times = "1:200:12";
    std::vector<double> deltas{0.1, 0.2, 0.4};
    wei->add_option("--nu", nu_one, "viscosity");
    wei->add_option("--times", wei_times, "time grid a:b:count");
    wei->add_option("--delta", deltas, "window half-lengths");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "multi-seed batch of mix or dissipate");
    add_flow_options(sweep, fa);
    std::string experiment = "mix";
    int n_seeds = 8;
    sweep->add_option("--experiment", experiment, "mix|dissipate");
    sweep->add_option("--seeds", n_seeds, "number of seeds");
    sweep->add_option("--times", times_spec, "record times a:b:count");
    sweep->add_option("--nu", nu_spec, "viscosity sweep for dissipate");
    sweep->add_option("--k", k_mode, "x-wavenumber");
    sweep->add_option("--alpha", alpha_nominal, "nominal regularity");

    // ---- report ----
    auto* report = app.add_subcommand("report", "merge JSON artifacts into a CSV summary");
    std::string in_dir = ".";
    bool svg = false;
    report->add_option("--in", in_dir, "directory of JSON/CSV artifacts");
    report->add_flag("--svg", svg, "emit log-log SVG plots for curve CSVs");

    std::vector<std::string> args = raw_args;
    // peel the first --config out early so its values become defaults
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            apply_config_file(app, args[i + 1], args);
            break;
        }
    }

    std::vector<const char*> argv;
    argv.push_back("shearlab");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (jobs > 0) set_max_threads(jobs);
    fs::create_directories(out_dir);
    const fs::path out(out_dir);

    if (*gen) {
        auto flow = build_flow(fa, 1 << 14);
        write_flow_csv(out / "flow.csv", flow);
        json cfg = flow_config(fa, 1 << 14);
        cfg["command"] = "gen";
        json payload;
        payload["descriptor"] = json::parse(flow_descriptor_json(flow));
        write_json(out / "flow.json", seal(cfg, payload));
        std::cout << "wrote " << (out / "flow.csv").string() << "\n";
        return 0;
    }

    if (*diag) {
        auto flow = build_flow(fa, 1 << 14);
        json cfg = flow_config(fa, 1 << 14);
        cfg["command"] = "diag";
        cfg["functional"] = functional;
        json payload;
        payload["functional"] = functional;
        double value = 0.0;
        json scan;
        json flags = json::object();
        if (functional == "phi") {
            const bool torus = flow.grid().domain() == Domain::Torus;
            Interval iv{torus ? -std::numbers::pi : 0.0, std::numbers::pi};
            const auto z = osc_integral(flow, xi, iv);
            value = std::abs(z);
            payload["re"] = z.real();
            payload["im"] = z.imag();
            scan = {{"xi", xi}, {"interval", {iv.a, iv.b}}};
            // profile |Phi| vs xi on the default grid
            auto grid_xi = make_xi_grid(1.0, xi_max, per_decade, false);
            std::vector<double> mags;
            for (double x : grid_xi) mags.push_back(std::abs(osc_integral(flow, x, iv)));
            write_csv(out / "phi_profile.csv", {"xi", "abs_phi"}, {grid_xi, mags});
        } else if (functional == "rho-norm") {
            auto est = rho_irregularity_norm(flow, gamma, rho,
                                             make_xi_grid(1.0, xi_max, per_decade), depth);
            value = est.value;
            scan = {{"gamma", gamma},     {"rho", rho},   {"xi_max", est.xi_max},
                    {"per_decade", per_decade}, {"depth", depth}};
        } else if (functional == "gamma-wei") {
            GammaWeiOptions gw;
            gw.delta_levels = levels;
            gw.ybar_stride = stride;
            auto est = gamma_wei(flow, alpha, gw);
            value = est.value;
            scan = {{"alpha", alpha},
                    {"delta_levels", levels},
                    {"ybar_stride", stride},
                    {"argmin_ybar", est.argmin_ybar},
                    {"argmin_delta", est.argmin_delta}};
        } else if (functional == "besov") {
            value = besov_seminorm(flow, alpha, p_exp);
            scan = {{"alpha", alpha}, {"p", p_exp}};
        } else if (functional == "roughness") {
            value = holder_roughness(flow, alpha, levels);
            scan = {{"alpha", alpha}, {"delta_levels", levels}};
        } else if (functional == "pvar") {
            value = p_variation(flow, p_exp);
            scan = {{"p", p_exp}};
        } else if (functional == "omega1") {
            value = omega1(flow, delta);
            scan = {{"delta", delta}};
        } else if (functional == "k-alpha") {
            auto r = k_alpha_eps(flow, alpha, eps_k, levels);
            value = r.value;
            flags["clamped"] = r.clamped;
            scan = {{"alpha", alpha}, {"eps", eps_k}, {"max_level", levels}};
        } else {
            throw BadParameter("unknown functional: " + functional);
        }
        payload["value"] = value;
        payload["scan_spec"] = scan;
        payload["flags"] = flags;
        const json artifact = seal(cfg, payload);
        write_json(out / ("diag_" + functional + ".json"), artifact);
        std::cout << artifact.dump(2) << "\n";
        return 0;
    }

    if (*mix) {
        const std::size_t default_n = 1 << 18;
        auto flow = build_flow(fa, default_n);
        if (flow.grid().domain() != Domain::Torus)
            throw BadParameter("mix: flow must be periodic (use fbm-sym or a torus flow)");
        auto g0 = ComplexField::mode(flow.grid(), 1);
        auto times = parse_range(times_spec);
        auto res = mixing_experiment(flow, alpha_nominal, k_mode, times, g0);
        write_curve_csv(out / "mix_curve.csv", res.curve);
        json cfg = flow_config(fa, default_n);
        cfg["command"] = "mix";
        cfg["times"] = times_spec;
        cfg["k"] = k_mode;
        cfg["alpha"] = alpha_nominal;
        json payload;
        payload["fit"] = json::parse(fit_result_json(res.fit));
        payload["curve"] = json::parse(curve_json(res.curve));
        payload["predicted_exponent"] = res.predicted_exponent;
        payload["max_usable_time"] = res.max_usable_time;
        payload["dropped_times"] = res.dropped_times;
        payload["note"] = "per-sample estimate of an asymptotic, generic rate; "
                          "individual seeds may stray";
        const json artifact = seal(cfg, payload);
        write_json(out / "mix_fit.json", artifact);
        std::cout << "exponent " << res.fit.exponent << " (predicted "
                  << res.predicted_exponent << "), r^2 " << res.fit.r_squared << "\n";
        return 0;
    }

    if (*dis) {
        const std::size_t default_n = 1 << 13;
        auto flow = build_flow(fa, default_n);
        if (flow.grid().domain() != Domain::Torus)
            throw BadParameter("dissipate: flow must be periodic");
        auto g0 = ComplexField::mode(flow.grid(), 1);
        auto nus = parse_range(nu_spec);
        std::sort(nus.begin(), nus.end());
        DissipationExperimentOptions dopts;
        dopts.q = q_thresh;
        if (tau_exponent >= 0.0) dopts.tau_exponent = tau_exponent;
        auto res = dissipation_experiment(flow, alpha_nominal, k_mode, nus, g0, dopts);
        res.table.provenance = config_hash(flow_config(fa, default_n).dump());
        write_sweep_csv(out / "dissipate_sweep.csv", res.table);
        json cfg = flow_config(fa, default_n);
        cfg["command"] = "dissipate";
        cfg["nu"] = nu_spec;
        cfg["q"] = q_thresh;
        cfg["k"] = k_mode;
        cfg["alpha"] = alpha_nominal;
        json payload;
        payload["fit"] = json::parse(fit_result_json(res.fit));
        payload["table"] = json::parse(sweep_table_json(res.table));
        payload["predicted_slope"] = res.predicted_slope;
        const json artifact = seal(cfg, payload);
        write_json(out / "dissipate_fit.json", artifact);
        std::cout << "slope " << res.fit.exponent << " (predicted " << res.predicted_slope
                  << ")\n";
        return 0;
    }

    if (*fdr) {
        const std::size_t default_n = 256;
        auto flow = build_flow(fa, default_n);
        const double dt = t_one / static_cast<double>(steps);
        BrownianBundle bundle(paths, steps, dt, resolve_seed(fa));
        auto g0 = ComplexField::mode(flow.grid(), 1);
        auto rep = fdr_check(flow, g0, xi, nu_one, t_one, bundle);
        json cfg = flow_config(fa, default_n);
        cfg["command"] = "fdr";
        cfg["xi"] = xi;
        cfg["nu"] = nu_one;
        cfg["t"] = t_one;
        cfg["paths"] = paths;
        cfg["steps"] = steps;
        json payload;
        payload["lhs"] = rep.lhs;
        payload["rhs"] = rep.rhs;
        payload["mc_stderr"] = rep.mc_stderr;
        payload["rel_err"] = rep.rel_err;
        payload["bundle"] = {{"paths", rep.paths},
                             {"steps", rep.steps},
                             {"dt", rep.dt},
                             {"seed", rep.seed.seed},
                             {"stream", rep.seed.stream}};
        const json artifact = seal(cfg, payload);
        write_json(out / "fdr_report.json", artifact);
        std::cout << artifact.dump(2) << "\n";
        return 0;
    }

    if (*wei) {
        const std::size_t default_n = 1 << 12;
        auto flow = build_flow(fa, default_n);
        auto t_grid = parse_range(wei_times);
        std::vector<ComplexField> probes;
        probes.push_back(ComplexField::mode(flow.grid(), 1));
        json cells = json::array();
        bool all_ok = true;
        for (double d : deltas) {
            auto res = wei_bound_experiment(flow, nu_one, t_grid, d, probes);
            for (const auto& cell : res) {
                cells.push_back({{"delta", d},
                                 {"t", cell.t},
                                 {"measured", cell.measured},
                                 {"bound", cell.bound},
                                 {"ok", cell.ok}});
                all_ok = all_ok && cell.ok;
            }
        }
        json cfg = flow_config(fa, default_n);
        cfg["command"] = "wei";
        cfg["nu"] = nu_one;
        cfg["times"] = wei_times;
        cfg["deltas"] = deltas;
        json payload;
        payload["cells"] = cells;
        payload["all_ok"] = all_ok;
        const json artifact = seal(cfg, payload);
        write_json(out / "wei_bound.json", artifact);
        std::cout << "all cells ok: " << (all_ok ? "yes" : "no") << "\n";
        return all_ok ? 0 : 1;
    }

    if (*sweep) {
        json per_seed = json::array();
        std::vector<double> exponents;
        for (int s = 0; s < n_seeds; ++s) {
            FlowArgs fs_args = fa;
            fs_args.seed_given = true;
            fs_args.seed = resolve_seed(fa).seed + static_cast<std::uint64_t>(s);
            if (experiment == "mix") {
                auto flow = build_flow(fs_args, 1 << 18);
                auto g0 = ComplexField::mode(flow.grid(), 1);
                auto res = mixing_experiment(flow, alpha_nominal, k_mode,
                                             parse_range(times_spec), g0);
                exponents.push_back(res.fit.exponent);
                per_seed.push_back({{"seed", fs_args.seed}, {"exponent", res.fit.exponent}});
            } else if (experiment == "dissipate") {
                auto flow = build_flow(fs_args, 1 << 13);
                auto g0 = ComplexField::mode(flow.grid(), 1);
                auto nus = parse_range(nu_spec);
                std::sort(nus.begin(), nus.end());
                auto res = dissipation_experiment(flow, alpha_nominal, k_mode, nus, g0);
                exponents.push_back(res.fit.exponent);
                per_seed.push_back({{"seed", fs_args.seed}, {"slope", res.fit.exponent}});
            } else {
                throw BadParameter("sweep: experiment must be mix or dissipate");
            }
        }
        std::sort(exponents.begin(), exponents.end());
        const double median =
            exponents.size() % 2
                ? exponents[exponents.size() / 2]
                : 0.5 * (exponents[exponents.size() / 2 - 1] + exponents[exponents.size() / 2]);
        json cfg = flow_config(fa, experiment == "mix" ? (1 << 18) : (1 << 13));
        cfg["command"] = "sweep";
        cfg["experiment"] = experiment;
        cfg["seeds"] = n_seeds;
        cfg["alpha"] = alpha_nominal;
        json payload;
        payload["per_seed"] = per_seed;
        payload["median_exponent"] = median;
        payload["note"] = "median over seeds stands in for the genericity quantifier "
                          "('almost every u'); individual samples may stray";
        const json artifact = seal(cfg, payload);
        write_json(out / ("sweep_" + experiment + ".json"), artifact);
        std::cout << "median exponent " << median << "\n";
        return 0;
    }

    if (*report) {
        // gather every sealed JSON artifact and flatten scalar fields
        std::ofstream summary(out / "summary.csv");
        if (!summary) throw Error("cannot open summary.csv");
        summary << "file,key,value\r\n";
        for (const auto& entry : fs::directory_iterator(in_dir)) {
            if (entry.path().extension() == ".json") {
                std::ifstream in(entry.path());
                json j;
                try {
                    in >> j;
                } catch (...) {
                    continue;
                }
                const std::function<void(const json&, const std::string&)> walk =
                    [&](const json& node, const std::string& prefix) {
                        if (node.is_number()) {
                            summary << entry.path().filename().string() << "," << prefix
                                    << "," << node.dump() << "\r\n";
                        } else if (node.is_object()) {
                            for (auto& [k, v] : node.items())
                                if (k != "config" && k != "timestamp")
                                    walk(v, prefix.empty() ? k : prefix + "." + k);
                        }
                    };
                walk(j, "");
            }
            if (svg && entry.path().extension() == ".csv" &&
                entry.path().filename() != "summary.csv") {
                // plot first two numeric columns in log-log
                std::ifstream in(entry.path());
                std::string line;
                std::getline(in, line);  // header
                std::vector<double> xs, ys;
                while (std::getline(in, line)) {
                    const auto c1 = line.find(',');
                    if (c1 == std::string::npos) continue;
                    const auto c2 = line.find(',', c1 + 1);
                    try {
                        const double x = std::stod(line.substr(0, c1));
                        const double y = std::stod(
                            line.substr(c1 + 1, c2 == std::string::npos ? std::string::npos
                                                                        : c2 - c1 - 1));
                        if (x > 0 && y > 0) {
                            xs.push_back(x);
                            ys.push_back(y);
                        }
                    } catch (...) {
                        continue;
                    }
                }
                if (xs.size() >= 2) {
                    auto svg_path = out / entry.path().filename().replace_extension(".svg");
                    write_loglog_svg(svg_path, xs, ys, entry.path().stem().string());
                }
            }
        }
        std::cout << "wrote " << (out / "summary.csv").string() << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

}  // namespace shearlab::cli
