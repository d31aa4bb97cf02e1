// liplab: generate random ReLU networks, evaluate them, compute exact or
// estimated Lipschitz constants, evaluate the closed-form bounds, and run the
// Monte Carlo experiment suites. Machine output is JSON on stdout; human
// summaries go to stderr. Exit codes: 0 ok, 1 failed assertive check,
// 2 usage/config error, 3 budget or numeric error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "liplab/bounds.hpp"
#include "liplab/errors.hpp"
#include "liplab/estimators.hpp"
#include "liplab/exact_lip.hpp"
#include "liplab/experiments.hpp"
#include "liplab/io.hpp"
#include "liplab/parallel.hpp"

using nlohmann::json;
using namespace liplab;

namespace {

Vector parse_vector(const std::string& text) {
    Vector out;
    std::string token;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!token.empty()) {
                std::size_t pos = 0;
                out.push_back(std::stod(token, &pos));
                if (pos != token.size()) throw InvalidArgument("bad number in vector: " + token);
                token.clear();
            }
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            token.push_back(ch);
        }
    }
    if (out.empty()) throw InvalidArgument("empty vector argument");
    return out;
}

json pattern_to_json(const ActivationPattern& p) {
    json out = json::array();
    for (const auto& layer : p.bits) {
        json l = json::array();
        for (auto b : layer) l.push_back(static_cast<int>(b));
        out.push_back(std::move(l));
    }
    return out;
}

BiasSpec bias_from_flags(const std::string& kind, double sigma, double m, double scale,
                         double value) {
    BiasSpec spec;
    if (kind == "zero")
        spec.default_law = BiasLaw::zero();
    else if (kind == "gaussian")
        spec.default_law = BiasLaw::gaussian(sigma);
    else if (kind == "uniform")
        spec.default_law = BiasLaw::uniform(m);
    else if (kind == "rademacher")
        spec.default_law = BiasLaw::rademacher(scale);
    else if (kind == "constant")
        spec.default_law = BiasLaw::constant(value);
    else
        throw InvalidArgument("unknown bias kind \"" + kind +
                              "\" (zero|gaussian|uniform|rademacher|constant)");
    return spec;
}

int threads_or_env(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("LIPLAB_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return default_thread_count();
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json merged_config(const std::string& path, std::initializer_list<const char*> allowed) {
    if (path.empty()) return json::object();
    json j = json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded()) throw InvalidArgument("config file is not valid JSON: " + path);
    if (!j.is_object()) throw InvalidArgument("config file must contain a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) throw InvalidArgument("config: unknown key \"" + it.key() + "\"");
    }
    return j;
}

// Flags win over config-file values: a config value applies only when the
// option was not given on the command line.
template <typename T>
void maybe_override(const CLI::Option* opt, const json& cfg, const char* key, T& value) {
    if (opt->count() == 0 && cfg.contains(key)) value = cfg[key].get<T>();
}

void check_keys(const json& cfg, std::initializer_list<const char*> allowed) {
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known)
            throw InvalidArgument("experiment config: unknown key \"" + it.key() + "\"");
    }
}

ExperimentReport run_named_experiment(const std::string& name, const json& cfg, int threads) {
    auto bias_of = [&](const char* key) {
        BiasSpec spec;
        if (cfg.contains(key)) spec = bias_spec_from_json(cfg[key].dump());
        return spec;
    };
    if (name == "scaling-shallow") {
        check_keys(cfg, {"d_grid", "N_grid", "R", "lip_method", "n_samples", "bias",
                         "master_seed", "budget_lps", "budget_seconds"});
        ScalingConfig c;
        if (cfg.contains("d_grid")) c.d_grid = cfg["d_grid"].get<std::vector<int>>();
        if (cfg.contains("N_grid")) c.N_grid = cfg["N_grid"].get<std::vector<int>>();
        c.R = cfg.value("R", c.R);
        const std::string method = cfg.value("lip_method", std::string("sampled"));
        if (method == "exact")
            c.method = LipMethod::Exact;
        else if (method == "sampled")
            c.method = LipMethod::Sampled;
        else
            throw InvalidArgument("lip_method must be \"exact\" or \"sampled\"");
        c.n_samples = cfg.value("n_samples", c.n_samples);
        c.bias = bias_of("bias");
        c.master_seed = cfg.value("master_seed", c.master_seed);
        c.budget.max_lp_solves = cfg.value("budget_lps", c.budget.max_lp_solves);
        c.budget.max_seconds = cfg.value("budget_seconds", c.budget.max_seconds);
        c.threads = threads;
        return scaling_shallow(c);
    }
    if (name == "isotropy") {
        check_keys(cfg, {"k", "N", "x", "bias", "M", "master_seed"});
        IsotropyConfig c;
        c.k = cfg.value("k", c.k);
        c.N = cfg.value("N", c.N);
        if (!cfg.contains("x")) throw InvalidArgument("isotropy config needs \"x\"");
        c.x = cfg["x"].get<Vector>();
        c.bias = bias_of("bias");
        c.M = cfg.value("M", c.M);
        c.master_seed = cfg.value("master_seed", c.master_seed);
        c.threads = threads;
        return isotropy_check(c);
    }
    if (name == "subgaussian") {
        check_keys(cfg, {"k", "N", "x", "M", "master_seed"});
        SubgaussianConfig c;
        c.k = cfg.value("k", c.k);
        c.N = cfg.value("N", c.N);
        if (!cfg.contains("x")) throw InvalidArgument("subgaussian config needs \"x\"");
        c.x = cfg["x"].get<Vector>();
        c.M = cfg.value("M", c.M);
        c.master_seed = cfg.value("master_seed", c.master_seed);
        c.threads = threads;
        return subgaussian_tail_check(c);
    }
    if (name == "near-isometry") {
        check_keys(cfg, {"d", "N", "L", "x0", "bias", "R", "probes", "u", "C", "master_seed"});
        NearIsometryConfig c;
        c.d = cfg.value("d", c.d);
        c.N = cfg.value("N", c.N);
        c.L = cfg.value("L", c.L);
        if (cfg.contains("x0"))
            c.x0 = cfg["x0"].get<Vector>();
        else {
            c.x0.assign(static_cast<std::size_t>(c.d), 0.0);
            c.x0[0] = 1.0;
        }
        c.bias = bias_of("bias");
        c.R = cfg.value("R", c.R);
        c.probes = cfg.value("probes", c.probes);
        c.u = cfg.value("u", c.u);
        c.C = cfg.value("C", c.C);
        c.master_seed = cfg.value("master_seed", c.master_seed);
        c.threads = threads;
        return near_isometry_check(c);
    }
    if (name == "deep-lower-event") {
        check_keys(cfg, {"d", "N", "L", "bias", "R", "master_seed"});
        DeepLowerEventConfig c;
        c.d = cfg.value("d", c.d);
        c.N = cfg.value("N", c.N);
        c.L = cfg.value("L", c.L);
        c.bias = bias_of("bias");
        c.R = cfg.value("R", c.R);
        c.master_seed = cfg.value("master_seed", c.master_seed);
        c.threads = threads;
        return deep_lower_event(c);
    }
    if (name == "counterexamples") {
        check_keys(cfg, {"master_seed", "random_shallow_trials"});
        CounterexampleConfig c;
        c.master_seed = cfg.value("master_seed", c.master_seed);
        c.random_shallow_trials = cfg.value("random_shallow_trials", c.random_shallow_trials);
        c.threads = threads;
        return counterexample_suite(c);
    }
    throw InvalidArgument("unknown experiment \"" + name +
                          "\" (scaling-shallow|isotropy|subgaussian|near-isometry|"
                          "deep-lower-event|counterexamples)");
}

int run(int argc, char** argv) {
    CLI::App app{"Lipschitz constants of random ReLU networks: exact computation at small "
                 "scale, sampled lower bounds, closed-form bound evaluation, and Monte Carlo "
                 "verification experiments"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: all cores, or LIPLAB_THREADS)");

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "sample a random network and write it as JSON");
    int g_d = 2, g_N = 4, g_L = 1;
    std::string g_bias = "zero", g_out, g_config;
    double g_sigma = 1.0, g_m = 1.0, g_scale = 1.0, g_value = 0.0;
    std::uint64_t g_seed = 0;
    auto* og_d = gen->add_option("--d", g_d, "input dimension");
    auto* og_N = gen->add_option("--N", g_N, "hidden width");
    auto* og_L = gen->add_option("--L", g_L, "hidden layers");
    auto* og_bias = gen->add_option("--bias", g_bias, "zero|gaussian|uniform|rademacher|constant");
    gen->add_option("--sigma", g_sigma, "gaussian bias sigma");
    gen->add_option("--m", g_m, "uniform bias half-width");
    gen->add_option("--scale", g_scale, "rademacher bias scale");
    gen->add_option("--value", g_value, "constant bias value");
    auto* og_seed = gen->add_option("--seed", g_seed, "rng seed");
    gen->add_option("--out", g_out, "output path (default: stdout)");
    gen->add_option("--config", g_config, "JSON config merged under explicit flags");

    // ---- eval / grad ----
    auto* eval = app.add_subcommand("eval", "evaluate a network at a point");
    std::string e_net, e_x;
    eval->add_option("--net", e_net, "network JSON file")->required();
    eval->add_option("--x", e_x, "input, comma separated")->required();

    auto* grad = app.add_subcommand("grad", "gradient at a point");
    std::string gr_net, gr_x;
    grad->add_option("--net", gr_net, "network JSON file")->required();
    grad->add_option("--x", gr_x, "input, comma separated")->required();

    // ---- lip-exact ----
    auto* lipx = app.add_subcommand("lip-exact", "exact Lipschitz constant by region enumeration");
    std::string lx_net, lx_config;
    bool lx_supall = false;
    std::uint64_t lx_budget_lps = EnumerationBudget{}.max_lp_solves;
    double lx_budget_seconds = EnumerationBudget{}.max_seconds;
    lipx->add_option("--net", lx_net, "network JSON file")->required();
    lipx->add_flag("--sup-all", lx_supall, "also report the sup over all realizable patterns");
    auto* ox_lps = lipx->add_option("--budget-lps", lx_budget_lps, "LP-solve budget");
    auto* ox_sec = lipx->add_option("--budget-seconds", lx_budget_seconds, "wall-clock budget");
    lipx->add_option("--config", lx_config, "JSON config merged under explicit flags");

    // ---- lip-estimate ----
    auto* lipe = app.add_subcommand("lip-estimate", "sampled lower bound plus hill climbing");
    std::string le_net, le_law = "gaussian", le_config;
    std::int64_t le_samples = 100000;
    int le_hill = 0;
    double le_radius = 1.0;
    std::uint64_t le_seed = 0;
    lipe->add_option("--net", le_net, "network JSON file")->required();
    auto* oe_samples = lipe->add_option("--samples", le_samples, "sample count");
    auto* oe_hill = lipe->add_option("--hill-climb", le_hill, "hill-climb steps from best sample");
    auto* oe_seed = lipe->add_option("--seed", le_seed, "rng seed");
    auto* oe_law = lipe->add_option("--law", le_law, "gaussian|sphere|ball");
    auto* oe_radius = lipe->add_option("--radius", le_radius, "radius for sphere/ball laws");
    lipe->add_option("--config", le_config, "JSON config merged under explicit flags");

    // ---- bounds ----
    auto* bnd = app.add_subcommand("bounds", "evaluate a closed-form bound");
    std::string b_which, b_config;
    int b_d = 1, b_N = 1, b_L = 1, b_k = 1;
    double b_u = 0.0, b_t = 0.0, b_eps = 0.1, b_lambda = 1.0, b_normw0 = 1.0;
    BoundConstants consts;
    bnd->add_option("--which", b_which,
                    "shallow-upper|shallow-upper-simple|shallow-expectation|deep-upper|"
                    "deep-upper-simple|deep-expectation|shallow-lower|shallow-lower-simple|"
                    "deep-lower|deep-lower-simple|covering-shallow|covering-deep|dudley-shallow")
        ->required();
    auto* ob_d = bnd->add_option("--d", b_d, "input dimension");
    auto* ob_N = bnd->add_option("--N", b_N, "width");
    auto* ob_L = bnd->add_option("--L", b_L, "depth");
    auto* ob_u = bnd->add_option("--u", b_u, "deviation parameter u");
    auto* ob_t = bnd->add_option("--t", b_t, "deviation parameter t");
    auto* ob_k = bnd->add_option("--k", b_k, "rank parameter of the covering bound");
    auto* ob_eps = bnd->add_option("--eps", b_eps, "covering radius");
    auto* ob_lambda = bnd->add_option("--lambda", b_lambda, "scale Lambda");
    auto* ob_normw0 = bnd->add_option("--normw0", b_normw0, "first-layer spectral norm");
    bnd->add_option("--C", consts.C_upper, "upper-bound constant C");
    bnd->add_option("--c1", consts.c1, "probability constant c1");
    bnd->add_option("--c", consts.c, "probability constant c");
    bnd->add_option("--C-lower", consts.C_lower, "deep lower-bound constant");
    bnd->add_option("--C-cov", consts.C_cov, "covering exponent constant");
    bnd->add_option("--config", b_config, "JSON config merged under explicit flags");

    // ---- experiment ----
    auto* exp = app.add_subcommand("experiment", "run a Monte Carlo verification experiment");
    std::string x_name, x_config, x_out;
    exp->add_option("name", x_name, "experiment name")->required();
    exp->add_option("--config", x_config, "experiment config JSON")->required();
    exp->add_option("--out", x_out, "output directory for rows.csv and summary.json");

    // ---- counterexamples ----
    auto* cex = app.add_subcommand("counterexamples", "run the fixed counterexample suite");
    std::uint64_t c_seed = 1;
    int c_trials = 100;
    cex->add_option("--seed", c_seed, "master seed for the random depth-1 sweep");
    cex->add_option("--trials", c_trials, "random depth-1 nets to test");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    if (gen->parsed()) {
        const json cfg = merged_config(
            g_config, {"d", "N", "L", "bias", "seed", "sigma", "m", "scale", "value"});
        maybe_override(og_d, cfg, "d", g_d);
        maybe_override(og_N, cfg, "N", g_N);
        maybe_override(og_L, cfg, "L", g_L);
        maybe_override(og_seed, cfg, "seed", g_seed);
        InitConfig init;
        init.d = g_d;
        init.N = g_N;
        init.L = g_L;
        init.seed = g_seed;
        if (og_bias->count() == 0 && cfg.contains("bias"))
            init.bias = bias_spec_from_json(cfg["bias"].dump());
        else
            init.bias = bias_from_flags(g_bias, g_sigma, g_m, g_scale, g_value);
        const NetworkParams net = sample_network(init);
        if (g_out.empty())
            std::cout << network_to_json(net) << "\n";
        else {
            save_network(net, g_out);
            std::cerr << "wrote " << g_out << "\n";
        }
        return 0;
    }

    if (eval->parsed()) {
        const NetworkParams net = load_network(e_net);
        const ForwardResult r = forward(net, parse_vector(e_x));
        emit(json{{"value", r.value},
                  {"boundary_margin", r.trace.boundary_margin},
                  {"pattern", pattern_to_json(r.trace.pattern)}});
        return 0;
    }

    if (grad->parsed()) {
        const NetworkParams net = load_network(gr_net);
        const GradientResult r = gradient_at(net, parse_vector(gr_x));
        emit(json{{"gradient", r.gradient},
                  {"grad_norm", norm2(r.gradient)},
                  {"boundary_margin", r.boundary_margin}});
        return 0;
    }

    if (lipx->parsed()) {
        const json cfg = merged_config(lx_config, {"budget_lps", "budget_seconds", "sup_all"});
        maybe_override(ox_lps, cfg, "budget_lps", lx_budget_lps);
        maybe_override(ox_sec, cfg, "budget_seconds", lx_budget_seconds);
        if (cfg.value("sup_all", false)) lx_supall = true;
        const NetworkParams net = load_network(lx_net);
        EnumerationBudget budget{lx_budget_lps, lx_budget_seconds};
        const LipResult r = exact_lipschitz(net, budget, lx_supall);
        json out{{"lip", r.lip},
                 {"region_count", r.full_dim_region_count},
                 {"argmax_pattern", pattern_to_json(r.argmax_region.pattern)},
                 {"witness", r.argmax_region.witness},
                 {"witness_margin", r.argmax_region.margin},
                 {"lp_solves", r.lp_solves}};
        if (r.sup_all_patterns) out["sup_all_patterns"] = *r.sup_all_patterns;
        if (r.all_pattern_count) out["all_pattern_count"] = *r.all_pattern_count;
        emit(out);
        return 0;
    }

    if (lipe->parsed()) {
        const json cfg =
            merged_config(le_config, {"samples", "hill_climb", "seed", "law", "radius"});
        maybe_override(oe_samples, cfg, "samples", le_samples);
        maybe_override(oe_hill, cfg, "hill_climb", le_hill);
        maybe_override(oe_seed, cfg, "seed", le_seed);
        maybe_override(oe_law, cfg, "law", le_law);
        maybe_override(oe_radius, cfg, "radius", le_radius);
        const NetworkParams net = load_network(le_net);

        SampleLaw law;
        if (le_law == "gaussian")
            law.kind = SampleLawKind::StdGaussian;
        else if (le_law == "sphere")
            law = {SampleLawKind::SphereRadius, le_radius};
        else if (le_law == "ball")
            law = {SampleLawKind::BallRadius, le_radius};
        else
            throw InvalidArgument("unknown sample law \"" + le_law + "\" (gaussian|sphere|ball)");

        // Same sampling stream as sampled_lip_lower, but tracking the best
        // point so the hill climb can start there.
        Rng rng(le_seed);
        double best_norm = 0.0;
        Vector best_x;
        for (std::int64_t s = 0; s < le_samples; ++s) {
            Vector x(static_cast<std::size_t>(net.input_dim));
            for (double& v : x) v = rng.gaussian();
            if (law.kind == SampleLawKind::SphereRadius || law.kind == SampleLawKind::BallRadius) {
                double n = norm2(x);
                double r = law.radius;
                if (law.kind == SampleLawKind::BallRadius) r *= rng.uniform01();
                for (double& v : x) v *= r / n;
            }
            const GradientResult g = gradient_at(net, x);
            if (g.boundary_margin <= 0.0) continue;
            const double gn = norm2(g.gradient);
            if (gn > best_norm) {
                best_norm = gn;
                best_x = std::move(x);
            }
        }
        json breakdown{{"sampled", best_norm}};
        double lower = best_norm;
        ActivationPattern best_pattern;
        if (!best_x.empty()) best_pattern = trace_pattern(net, best_x);
        if (le_hill > 0 && !best_x.empty()) {
            const HillClimbResult hc = pattern_hill_climb(net, best_x, le_hill, le_seed);
            breakdown["hill_climbed"] = hc.grad_norm;
            breakdown["hill_climb_steps_taken"] = hc.history.size() - 1;
            if (hc.grad_norm > lower) {
                lower = hc.grad_norm;
                best_pattern = hc.pattern;
            }
        }
        emit(json{{"lower_bound", lower},
                  {"best_pattern", pattern_to_json(best_pattern)},
                  {"method_breakdown", breakdown}});
        return 0;
    }

    if (bnd->parsed()) {
        const json cfg = merged_config(
            b_config, {"d", "N", "L", "u", "t", "k", "eps", "lambda", "normw0"});
        maybe_override(ob_d, cfg, "d", b_d);
        maybe_override(ob_N, cfg, "N", b_N);
        maybe_override(ob_L, cfg, "L", b_L);
        maybe_override(ob_u, cfg, "u", b_u);
        maybe_override(ob_t, cfg, "t", b_t);
        maybe_override(ob_k, cfg, "k", b_k);
        maybe_override(ob_eps, cfg, "eps", b_eps);
        maybe_override(ob_lambda, cfg, "lambda", b_lambda);
        maybe_override(ob_normw0, cfg, "normw0", b_normw0);

        json out;
        out["which"] = b_which;
        out["constants"] = {{"C", consts.C_upper},
                            {"c1", consts.c1},
                            {"c", consts.c},
                            {"C_lower", consts.C_lower},
                            {"C_cov", consts.C_cov}};
        auto set = [&](const BoundValue& v) {
            out["value"] = v.value;
            out["prob_lower_bound"] = v.prob_lower_bound;
        };
        if (b_which == "shallow-upper")
            set(shallow_upper(b_d, b_N, b_u, b_t, consts));
        else if (b_which == "shallow-upper-simple")
            out["value"] = shallow_upper_simple(b_d, consts);
        else if (b_which == "shallow-expectation")
            out["value"] = shallow_expectation(b_d, b_N, consts);
        else if (b_which == "deep-upper")
            set(deep_upper(b_d, b_N, b_L, b_u, b_t, consts));
        else if (b_which == "deep-upper-simple")
            set(deep_upper_simple(b_d, b_N, b_L, consts));
        else if (b_which == "deep-expectation")
            out["value"] = deep_expectation(b_d, b_N, b_L, consts);
        else if (b_which == "shallow-lower")
            set(shallow_lower(b_d, b_N, b_u, b_t, consts));
        else if (b_which == "shallow-lower-simple")
            set(shallow_lower_simple(b_d, b_N, consts));
        else if (b_which == "deep-lower")
            set(deep_lower(b_d, b_N, b_L, b_u, b_t, consts));
        else if (b_which == "deep-lower-simple")
            set(deep_lower_simple(b_d, b_N, b_L, consts));
        else if (b_which == "covering-shallow")
            out["value"] = covering_bound_shallow(b_normw0, b_k, b_eps, consts);
        else if (b_which == "covering-deep")
            out["value"] = covering_bound_deep(b_lambda, b_d, b_N, b_L, b_eps);
        else if (b_which == "dudley-shallow") {
            const double W = b_normw0;
            const double Ck = consts.C_cov * b_k;
            out["value"] = dudley_entropy_integral(
                [&](double eps) { return eps >= W ? 0.0 : Ck * std::log(9.0 * W / eps); }, W);
        } else {
            throw InvalidArgument("unknown bound \"" + b_which + "\"");
        }
        emit(out);
        return 0;
    }

    if (exp->parsed()) {
        json cfg = json::parse(read_text_file(x_config), nullptr, false);
        if (cfg.is_discarded()) throw InvalidArgument("experiment config is not valid JSON");
        const ExperimentReport report =
            run_named_experiment(x_name, cfg, threads_or_env(threads));
        if (!x_out.empty()) write_report(report, x_out);
        std::cout << summary_to_json(report);
        for (const Check& c : report.checks)
            std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        return report.all_checks_pass() ? 0 : 1;
    }

    if (cex->parsed()) {
        CounterexampleConfig c;
        c.master_seed = c_seed;
        c.random_shallow_trials = c_trials;
        c.threads = threads_or_env(threads);
        const ExperimentReport report = counterexample_suite(c);
        std::cout << summary_to_json(report);
        for (const Check& ck : report.checks)
            std::cerr << (ck.pass ? "PASS " : "FAIL ") << ck.name << ": " << ck.detail << "\n";
        return report.all_checks_pass() ? 0 : 1;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
