#include "muntz/cli.hpp"

#include "muntz/approx.hpp"
#include "muntz/basis.hpp"
#include "muntz/core.hpp"
#include "muntz/error.hpp"
#include "muntz/fourier.hpp"
#include "muntz/io.hpp"
#include "muntz/muntz_ops.hpp"
#include "muntz/rng.hpp"
#include "muntz/weil.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

namespace muntz::cli {

namespace {

constexpr const char* kArtifactVersion = "1";

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        cur.erase(0, cur.find_first_not_of(" \t"));
        cur.erase(cur.find_last_not_of(" \t") + 1);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::size_t to_index(const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw PreconditionError("not a nonnegative integer: \"" + s + "\"");
    }
    if (pos != s.size() || s.front() == '-') throw PreconditionError("not a nonnegative integer: \"" + s + "\"");
    return static_cast<std::size_t>(v);
}

// ---------------------------------------------------------------------------
// Shared option groups
// ---------------------------------------------------------------------------

struct SequenceOptions {
    std::string lambda;  // "power:p" | "geometric:b" | "explicit:l1,l2,..."
    std::string rule = "power";
    double p = 2.0;
    double base = 2.0;
    std::string exponents;
    std::size_t N = 16;

    void add(CLI::App* sub) {
        sub->add_option("--lambda", lambda, "Exponent rule as power:p, geometric:base or explicit:l1,l2,...");
        sub->add_option("--rule", rule, "power | geometric | explicit (ignored when --lambda is given)");
        sub->add_option("--p", p, "Power rule exponent, λ_k = k^p");
        sub->add_option("--base", base, "Geometric rule base, λ_k = base^k");
        sub->add_option("--exponents", exponents, "Comma-separated exponents for the explicit rule");
        sub->add_option("--N", N, "Number of exponents in the truncation");
    }

    ExponentSequence build() const {
        std::string r = rule;
        std::string arg;
        if (!lambda.empty()) {
            const auto colon = lambda.find(':');
            if (colon == std::string::npos) throw PreconditionError("--lambda expects rule:parameter");
            r = lambda.substr(0, colon);
            arg = lambda.substr(colon + 1);
        }
        if (r == "power") return ExponentSequence::power(arg.empty() ? p : std::stod(arg), N);
        if (r == "geometric") return ExponentSequence::geometric(arg.empty() ? base : std::stod(arg), N);
        if (r == "explicit") return ExponentSequence::explicit_list(parse_real_list(arg.empty() ? exponents : arg));
        throw PreconditionError("unknown exponent rule \"" + r + "\"");
    }
};

struct FunctionOptions {
    std::string function = "t2-t4";
    std::string muntz_file;
    std::string trig_file;
    std::size_t k = 1;

    void add(CLI::App* sub) {
        sub->add_option("--function", function,
                        "Built-in test function on [0,1): t2-t4, t2-t, abs-cos, cos (frequency --k), 2t, "
                        "inverse-distance");
        sub->add_option("--muntz", muntz_file, "Müntz polynomial JSON file, periodized on [0,1)");
        sub->add_option("--trig", trig_file, "Trigonometric polynomial JSON file");
        sub->add_option("--k", k, "Frequency for --function cos");
    }

    RealFunction build() const {
        if (!trig_file.empty()) {
            const TrigPolynomial p = trig_polynomial_from_json(read_json_file(trig_file));
            return [p](double x) { return p(x); };
        }
        if (!muntz_file.empty()) {
            const Periodized v = periodize(muntz_polynomial_from_json(read_json_file(muntz_file)));
            return [v](double x) { return v(x); };
        }
        const double two_pi = 2.0 * std::numbers::pi;
        const auto frac = [](double x) { return x - std::floor(x); };
        if (function == "t2-t4") return [frac](double x) { const double t = frac(x); return t * t - t * t * t * t; };
        if (function == "t2-t") return [frac](double x) { const double t = frac(x); return t * t - t; };
        if (function == "abs-cos") return [two_pi](double x) { return std::abs(std::cos(two_pi * x)); };
        if (function == "cos") {
            const double kk = static_cast<double>(k);
            return [two_pi, kk](double x) { return std::cos(two_pi * kk * x); };
        }
        if (function == "2t") return [](double t) { return 2.0 * t; };
        if (function == "inverse-distance") return [two_pi](double t) { return 1.0 / (two_pi * (1.0 - t)); };
        throw PreconditionError("unknown function \"" + function + "\"");
    }
};

Json report_of(const ApproxResult& r) {
    return Json{{"n", r.n},
                {"En", r.En},
                {"lower", r.lower},
                {"upper", r.upper},
                {"certified_gap", r.certified_gap},
                {"grid_size", r.grid_size},
                {"passes", r.passes},
                {"lp_iterations", r.lp_iterations},
                {"equioscillation_points", r.equioscillation_points},
                {"equioscillation_ok", r.equioscillation_ok},
                {"witness", to_json(r.witness)}};
}

Json report_of(const PsiClassReport& r) {
    return Json{{"in_F1", r.in_F1},
                {"positive_ok", r.positive_ok},
                {"vanishing_ok", r.vanishing_ok},
                {"convexity_ok", r.convexity_ok},
                {"sum_ok", r.sum_ok},
                {"partial_sum", r.partial_sum},
                {"tail_bound", std::isfinite(r.tail_bound) ? Json(r.tail_bound) : Json("inf")},
                {"tail_method", r.tail_method},
                {"reason", r.reason}};
}

Json finite_or_string(double x) {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Result of one command: JSON body or CSV text, plus the tolerances it used.
struct Outcome {
    Json result;
    std::string csv;
    std::vector<std::string> csv_header;
    std::vector<std::vector<double>> csv_rows;
    Json tolerances = Json::object();
};

struct Command {
    CLI::App* app = nullptr;
    std::function<Outcome()> body;
    bool csv = false;
};

struct Context {
    std::string out_path;
    std::string config_path;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Context& ctx, bool has_seed) {
    sub->add_option("--config", ctx.config_path, "JSON file with the same keys as the flags; flags override it");
    sub->add_option("--out", ctx.out_path, "Artifact path (default: standard output)");
    if (has_seed) sub->add_option("--seed", ctx.seed, "64-bit seed for every random draw");
}

}  // namespace

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& part : split(text, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_index(part));
            continue;
        }
        const std::size_t a = to_index(part.substr(0, dots));
        const std::size_t b = to_index(part.substr(dots + 2));
        if (b < a) throw PreconditionError("empty range \"" + part + "\"");
        for (std::size_t n = a; n <= b; ++n) out.push_back(n);
    }
    if (out.empty()) throw PreconditionError("empty index list");
    return out;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &pos);
        } catch (const std::exception&) {
            throw PreconditionError("not a number: \"" + part + "\"");
        }
        if (pos != part.size()) throw PreconditionError("not a number: \"" + part + "\"");
        out.push_back(v);
    }
    return out;
}

namespace {

/// Converts a config value to command-line arguments; arrays become comma lists.
std::vector<std::string> config_arguments(const Json& cfg) {
    if (!cfg.is_object()) throw IoError("config must be a JSON object");
    std::vector<std::string> args;
    for (const auto& [key, value] : cfg.items()) {
        if (key.empty() || key.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_") !=
                               std::string::npos) {
            throw PreconditionError("invalid config key \"" + key + "\"");
        }
        if (key == "config") throw PreconditionError("config files cannot nest --config");
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
            if (text.empty()) continue;  // empty strings are the defaults of optional paths and lists
        } else if (value.is_boolean()) {
            text = value.get<bool>() ? "true" : "false";
        } else if (value.is_number_integer() || value.is_number_unsigned()) {
            text = value.dump();
        } else if (value.is_number()) {
            text = format_real(value.get<double>());
        } else if (value.is_array()) {
            for (const auto& e : value) {
                if (!text.empty()) text += ',';
                text += e.is_string() ? e.get<std::string>() : e.is_number_float() ? format_real(e.get<double>()) : e.dump();
            }
        } else {
            throw PreconditionError("unsupported config value for \"" + key + "\"");
        }
        args.push_back("--" + key + "=" + text);
    }
    return args;
}

/// Effective option values of a parsed subcommand (given or default), as strings.
Json effective_config(const CLI::App* sub) {
    Json cfg = Json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "config" || name == "out") continue;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            cfg[name] = res.empty() ? "" : res.back();
        } else {
            cfg[name] = opt->get_default_str();
        }
    }
    return cfg;
}

int run_impl(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Müntz-space approximation experiments"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();

    Context ctx;
    std::map<std::string, Command> commands;
    auto add = [&](const std::string& name, const std::string& help, bool has_seed, bool csv) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, ctx, has_seed);
        commands[name] = Command{sub, {}, csv};
        return sub;
    };

    // check-lambda
    auto seq_check = std::make_shared<SequenceOptions>();
    {
        CLI::App* sub = add("check-lambda", "Gap and Müntz conditions of an exponent sequence", false, false);
        seq_check->add(sub);
        commands["check-lambda"].body = [seq_check]() {
            const ExponentSequence seq = seq_check->build();
            const GapCondition gap = check_gap_condition(seq);
            const MuntzSum ms = muntz_sum(seq);
            std::string verdict;
            const bool sum_known = std::isfinite(ms.tail) || seq.rule().kind != ExponentRuleKind::Explicit;
            if (!sum_known) {
                verdict = gap.holds ? "gap-holds-muntz-undecided" : "gap-fails-muntz-undecided";
            } else if (gap.holds && ms.condition_holds()) {
                verdict = "both-conditions-hold";
            } else if (gap.holds) {
                verdict = "muntz-condition-fails";
            } else if (ms.condition_holds()) {
                verdict = "gap-condition-fails";
            } else {
                verdict = "both-conditions-fail";
            }
            Outcome o;
            o.result = Json{{"sequence", to_json(seq)},
                            {"alpha0", seq.gap_alpha0()},
                            {"gap_holds", gap.holds},
                            {"gap_decided_by_rule", gap.decided_by_rule},
                            {"alpha1", finite_or_string(ms.alpha1 + ms.tail)},
                            {"alpha1_partial", ms.alpha1},
                            {"alpha1_tail_bound", finite_or_string(ms.tail)},
                            {"muntz_condition_holds", ms.condition_holds()},
                            {"verdict", verdict}};
            return o;
        };
    }

    // fourier-approx
    auto fa_fn = std::make_shared<FunctionOptions>();
    auto fa = std::make_shared<std::tuple<std::string, std::string, std::size_t, double>>("fejer", "1,2,4,8,16,32", 0,
                                                                                        1e-12);
    {
        CLI::App* sub = add("fourier-approx", "‖U_n(f,Q) − f‖_C for a list of n", false, true);
        fa_fn->add(sub);
        sub->add_option("--method", std::get<0>(*fa), "dirichlet | fejer | vallee-poussin");
        sub->add_option("--n", std::get<1>(*fa), "Degrees, e.g. 1..32 or 1,2,4");
        sub->add_option("--K", std::get<2>(*fa), "Coefficient truncation (0: 4·max n)");
        sub->add_option("--tol", std::get<3>(*fa), "Coefficient quadrature tolerance");
        commands["fourier-approx"].body = [fa_fn, fa]() {
            const auto Q = SummationMatrix::from_name(std::get<0>(*fa));
            const auto ns = parse_index_list(std::get<1>(*fa));
            const ConvergenceTable t =
                convergence_experiment(fa_fn->build(), Q, ns, std::get<2>(*fa), std::get<3>(*fa));
            Outcome o;
            o.csv_header = {"n", "value", "tol"};
            for (const auto& r : t.rows) o.csv_rows.push_back({static_cast<double>(r.n), r.error, std::get<3>(*fa)});
            o.tolerances["coefficients"] = std::get<3>(*fa);
            return o;
        };
    }

    // lebesgue
    auto leb = std::make_shared<std::tuple<std::string, std::string, double>>("fejer", "1..32", 1e-10);
    {
        CLI::App* sub = add("lebesgue", "Lebesgue constants 2∫|U_n(t,Q)|dt", false, true);
        sub->add_option("--method", std::get<0>(*leb), "dirichlet | fejer | vallee-poussin");
        sub->add_option("--n", std::get<1>(*leb), "Degrees, e.g. 1..32");
        sub->add_option("--tol", std::get<2>(*leb), "Quadrature tolerance");
        commands["lebesgue"].body = [leb]() {
            const auto Q = SummationMatrix::from_name(std::get<0>(*leb));
            Outcome o;
            o.csv_header = {"n", "value", "tol"};
            for (std::size_t n : parse_index_list(std::get<1>(*leb))) {
                o.csv_rows.push_back({static_cast<double>(n), lebesgue_constant(Q, n, std::get<2>(*leb)), std::get<2>(*leb)});
            }
            o.tolerances["quadrature"] = std::get<2>(*leb);
            return o;
        };
    }

    // weil-deriv
    auto wd_fn = std::make_shared<FunctionOptions>();
    struct WeilOpts {
        std::string psi_file;
        std::string psi_rule = "power";
        double r = 1.0;
        double beta = 1.0;
        std::size_t psi_K = 1024;
        std::size_t K = 16;
        double tol = 1e-12;
    };
    auto wd = std::make_shared<WeilOpts>();
    {
        CLI::App* sub = add("weil-deriv", "Weil (ψ,β)-derivative of a function", false, false);
        wd_fn->add(sub);
        sub->add_option("--psi", wd->psi_file, "ψ weight JSON file (overrides --psi-rule)");
        sub->add_option("--psi-rule", wd->psi_rule, "power | inverse-log");
        sub->add_option("--r", wd->r, "ψ(k) = k^{−r} for the power rule");
        sub->add_option("--beta", wd->beta, "Phase β (harmonics rotate by βπ/2)");
        sub->add_option("--psi-K", wd->psi_K, "Truncation used by the ψ class checks");
        sub->add_option("--K", wd->K, "Fourier coefficients kept");
        sub->add_option("--tol", wd->tol, "Coefficient quadrature tolerance");
        commands["weil-deriv"].body = [wd_fn, wd]() {
            PsiWeight psi = PsiWeight::power(1.0, 0.0);
            if (!wd->psi_file.empty()) {
                psi = psi_weight_from_json(read_json_file(wd->psi_file));
            } else if (wd->psi_rule == "power") {
                psi = PsiWeight::power(wd->r, wd->beta, wd->psi_K);
            } else if (wd->psi_rule == "inverse-log") {
                psi = PsiWeight::inverse_log(wd->beta, wd->psi_K);
            } else {
                throw PreconditionError("unknown ψ rule \"" + wd->psi_rule + "\"");
            }
            const FourierCoefficients c = fourier_coefficients(wd_fn->build(), wd->K, wd->tol);
            const FourierCoefficients d = weil_derivative(c, psi);
            const FourierCoefficients back = weil_reconstruct(d, psi, c.a0);
            double roundtrip = std::abs(back.a0 - c.a0);
            for (std::size_t k = 0; k < c.K(); ++k) {
                roundtrip = std::max({roundtrip, std::abs(back.harmonics[k].a - c.harmonics[k].a),
                                      std::abs(back.harmonics[k].b - c.harmonics[k].b)});
            }
            Outcome o;
            o.result = Json{{"psi", to_json(psi)},
                            {"psi_class", report_of(validate_psi_class(psi))},
                            {"input", to_json(c.as_polynomial())},
                            {"derivative", to_json(d.as_polynomial())},
                            {"nagy_norm", weil_nagy_norm(c, psi)},
                            {"roundtrip_error", roundtrip}};
            o.tolerances["coefficients"] = wd->tol;
            return o;
        };
    }

    // best-approx
    auto ba_fn = std::make_shared<FunctionOptions>();
    auto ba = std::make_shared<std::tuple<std::string, std::size_t, std::size_t>>("1,2,4,8", 0, 1);
    {
        CLI::App* sub = add("best-approx", "E_n(f) by discrete minimax with certified bounds", false, false);
        ba_fn->add(sub);
        sub->add_option("--n", std::get<0>(*ba), "Values of n (trig degree ≤ n−1)");
        sub->add_option("--grid-m", std::get<1>(*ba), "Grid size (0: 32n)");
        sub->add_option("--passes", std::get<2>(*ba), "Refinement passes");
        commands["best-approx"].body = [ba_fn, ba]() {
            const RealFunction f = ba_fn->build();
            ApproxOptions opt;
            opt.grid_m = std::get<1>(*ba);
            opt.refinement_passes = std::get<2>(*ba);
            Outcome o;
            o.result = Json::array();
            for (std::size_t n : parse_index_list(std::get<0>(*ba))) o.result.push_back(report_of(best_trig_approx(f, n, opt)));
            o.tolerances["grid_m"] = opt.grid_m;
            return o;
        };
    }

    // rate-experiment
    auto re_seq = std::make_shared<SequenceOptions>();
    auto re = std::make_shared<std::tuple<double, std::size_t, std::size_t, double, std::size_t>>(0.5, 128, 4, 0.9, 32);
    {
        CLI::App* sub = add("rate-experiment", "E_n·n^γ/ln n over a seeded Müntz family", true, true);
        re_seq->add(sub);
        sub->add_option("--gamma", std::get<0>(*re), "Rate exponent γ");
        sub->add_option("--n-max", std::get<1>(*re), "Largest n; n runs over round(4·2^{i/2})");
        sub->add_option("--samples", std::get<2>(*re), "Family size");
        sub->add_option("--rho", std::get<3>(*re), "Coefficient decay ρ");
        sub->add_option("--grid-factor", std::get<4>(*re), "Minimax grid points per n");
        commands["rate-experiment"].body = [re_seq, re, &ctx]() {
            std::vector<std::size_t> ns;
            for (int i = 0;; ++i) {
                const auto n = static_cast<std::size_t>(std::lround(4.0 * std::pow(2.0, 0.5 * i)));
                if (n > std::get<1>(*re)) break;
                ns.push_back(n);
            }
            RateConfig cfg;
            cfg.N = re_seq->N;
            cfg.seed = ctx.seed;
            cfg.samples = std::get<2>(*re);
            cfg.rho = std::get<3>(*re);
            cfg.grid_factor = std::get<4>(*re);
            const RateTable t = rate_experiment(re_seq->build(), std::get<0>(*re), ns, cfg);
            Outcome o;
            o.csv_header = {"n", "En", "lower", "upper", "statistic"};
            for (const auto& r : t.rows) {
                o.csv_rows.push_back({static_cast<double>(r.n), r.En, r.lower, r.upper, r.statistic});
            }
            o.tolerances["grid_factor"] = cfg.grid_factor;
            return o;
        };
    }

    // asymptotic
    auto as = std::make_shared<std::tuple<double, std::string, std::size_t, double>>(
        0.5, "0.005,0.01,0.02,0.03,0.05,0.07,0.1", 1u << 16, 1e-6);
    {
        CLI::App* sub = add("asymptotic", "Small-x asymptotics of Σ n^{−α} sin/cos(2πnx)", false, false);
        sub->add_option("--alpha", std::get<0>(*as), "α ∈ (0,1)");
        sub->add_option("--x", std::get<1>(*as), "Evaluation points");
        sub->add_option("--K", std::get<2>(*as), "Explicit terms before the tail correction");
        sub->add_option("--tail-tol", std::get<3>(*as), "Tail bound required for certification");
        commands["asymptotic"].body = [as]() {
            const AsymptoticReport r =
                asymptotic_check(std::get<0>(*as), parse_real_list(std::get<1>(*as)), std::get<2>(*as), std::get<3>(*as));
            Json rows = Json::array();
            for (const auto& row : r.rows) {
                rows.push_back(Json{{"x", row.x},
                                    {"sin_sum", row.sin_sum},
                                    {"cos_sum", row.cos_sum},
                                    {"asymptote_sin", row.asymptote_sin},
                                    {"asymptote_cos", row.asymptote_cos},
                                    {"tail_bound", row.tail_bound},
                                    {"residual_sin", row.residual_sin},
                                    {"residual_cos", row.residual_cos}});
            }
            Outcome o;
            o.result = Json{{"alpha", r.alpha},
                            {"K", r.K},
                            {"mu", r.mu},
                            {"nu", r.nu},
                            {"max_residual_sin", r.max_residual_sin},
                            {"max_residual_cos", r.max_residual_cos},
                            {"certified", r.certified},
                            {"aux_constant", r.aux_constant},
                            {"aux_nu", r.aux_nu},
                            {"aux_max_residual_cos", r.aux_max_residual_cos},
                            {"rows", rows}};
            o.tolerances["tail"] = std::get<3>(*as);
            return o;
        };
    }

    // remez-eta
    auto rz_seq = std::make_shared<SequenceOptions>();
    auto rz = std::make_shared<std::tuple<double, std::size_t, std::size_t>>(0.5, 1000, 8);
    {
        CLI::App* sub = add("remez-eta", "Seeded lower estimate of the Remez-type constant", true, false);
        rz_seq->add(sub);
        sub->add_option("--delta", std::get<0>(*rz), "δ ∈ (0,1)");
        sub->add_option("--samples", std::get<1>(*rz), "Random polynomials");
        sub->add_option("--terms", std::get<2>(*rz), "Exponents used per polynomial");
        commands["remez-eta"].body = [rz_seq, rz, &ctx]() {
            const RemezEta r = remez_eta_estimate(rz_seq->build(), std::get<0>(*rz), std::get<1>(*rz), ctx.seed,
                                                  std::get<2>(*rz));
            Outcome o;
            o.result = Json{{"eta_lower", r.eta_lower},
                            {"samples_used", r.samples_used},
                            {"skipped", r.skipped},
                            {"maximizer", to_json(r.maximizer)}};
            return o;
        };
    }

    // theorem5
    auto t5 = std::make_shared<std::tuple<std::string, std::string, std::string, std::size_t>>("", "", "", 200);
    {
        CLI::App* sub = add("theorem5", "Exponent-shift bound ‖p − p1‖ ≤ 4‖p‖Δ_m/λ_m", true, false);
        sub->add_option("--from", std::get<0>(*t5), "Source exponent sequence JSON")->required();
        sub->add_option("--to", std::get<1>(*t5), "Target exponent sequence JSON")->required();
        sub->add_option("--coefficients", std::get<2>(*t5), "Coefficients of one test polynomial (default: seeded)");
        sub->add_option("--samples", std::get<3>(*t5), "Seeded test polynomials");
        commands["theorem5"].body = [t5, &ctx]() {
            const ExponentSequence from = exponent_sequence_from_json(read_json_file(std::get<0>(*t5)));
            const ExponentSequence to = exponent_sequence_from_json(read_json_file(std::get<1>(*t5)));
            if (from.size() != to.size()) throw ShapeError("--from and --to must have the same length");
            const ExponentShiftPlan plan(from.exponents(), to.exponents());
            std::vector<MuntzPolynomial> ps;
            if (!std::get<2>(*t5).empty()) {
                const auto c = parse_real_list(std::get<2>(*t5));
                if (c.size() > from.size()) throw ShapeError("more coefficients than exponents");
                ps.push_back(MuntzPolynomial::from_sequence(from, c));
            } else {
                for (std::size_t i = 0; i < std::get<3>(*t5); ++i) {
                    Rng rng = Rng::substream(ctx.seed, i);
                    std::vector<double> c(from.size(), 0.0);
                    switch (i % 3) {
                        case 0: c[static_cast<std::size_t>(rng.uniform() * static_cast<double>(c.size())) % c.size()] = rng.normal(); break;
                        case 1: for (auto& v : c) v = std::abs(rng.normal()); break;
                        default: for (auto& v : c) v = rng.normal(); break;
                    }
                    ps.push_back(MuntzPolynomial::from_sequence(from, c));
                }
            }
            Json cases = Json::array();
            std::size_t violations = 0;
            std::size_t asserted = 0;
            for (const auto& p : ps) {
                const ShiftResult r = exponent_shift_operator(p, plan);
                const bool admissible = r.admissibility != Admissibility::Observe;
                if (admissible) {
                    ++asserted;
                    if (!r.holds()) ++violations;
                }
                cases.push_back(Json{{"polynomial", to_json(p)},
                                     {"admissibility", to_string(r.admissibility)},
                                     {"norm", r.norm},
                                     {"bound", r.bound},
                                     {"actual", r.actual},
                                     {"holds", r.holds()}});
            }
            Outcome o;
            o.result = Json{{"m", plan.m() == ExponentShiftPlan::npos ? Json(nullptr) : Json(plan.m() + 1)},
                            {"ratio", plan.ratio()},
                            {"asserted_cases", asserted},
                            {"violations", violations},
                            {"cases", cases}};
            return o;
        };
    }

    // weak-norm
    auto wn_fn = std::make_shared<FunctionOptions>();
    auto wn = std::make_shared<std::tuple<double, double, double, std::size_t>>(0.0, 1.0, 1.0, 1u << 20);
    {
        CLI::App* sub = add("weak-norm", "Weak L_s quasi-norm on (a,b)", false, false);
        wn_fn->add(sub);
        sub->add_option("--a", std::get<0>(*wn), "Left end");
        sub->add_option("--b", std::get<1>(*wn), "Right end");
        sub->add_option("--s", std::get<2>(*wn), "Exponent s > 0");
        sub->add_option("--scan", std::get<3>(*wn), "Midpoint scan size");
        commands["weak-norm"].body = [wn_fn, wn]() {
            WeakNormOptions opt;
            opt.scan = std::get<3>(*wn);
            const WeakNorm w = weak_norm(wn_fn->build(), std::get<0>(*wn), std::get<1>(*wn), std::get<2>(*wn), opt);
            Outcome o;
            o.result = Json{{"value", w.value}, {"level", w.level}, {"measure", w.measure}, {"stabilized", w.stabilized}};
            o.tolerances["stability"] = opt.stability_tol;
            return o;
        };
    }

    // prop10
    auto p10 = std::make_shared<std::tuple<std::string, std::string, std::string>>("", "", "");
    {
        CLI::App* sub = add("prop10", "Weak-L1 norm of p′ and the pointwise derivative bound", false, false);
        sub->add_option("--muntz", std::get<0>(*p10), "Müntz polynomial JSON file");
        sub->add_option("--exponents", std::get<1>(*p10), "Exponents (with --coefficients)");
        sub->add_option("--coefficients", std::get<2>(*p10), "Coefficients (with --exponents)");
        commands["prop10"].body = [p10]() {
            MuntzPolynomial p;
            if (!std::get<0>(*p10).empty()) {
                p = muntz_polynomial_from_json(read_json_file(std::get<0>(*p10)));
            } else {
                const auto e = parse_real_list(std::get<1>(*p10));
                const auto c = parse_real_list(std::get<2>(*p10));
                if (e.size() != c.size()) throw ShapeError("--exponents and --coefficients differ in length");
                std::vector<MuntzTerm> terms;
                for (std::size_t i = 0; i < e.size(); ++i) terms.push_back({e[i], c[i]});
                p = MuntzPolynomial(std::move(terms));
            }
            const DerivativeReport r = derivative_weak_l1_check(p);
            Outcome o;
            o.result = Json{{"polynomial", to_json(p)},
                            {"weak_norm", r.weak_norm_value},
                            {"weak_norm_stabilized", r.weak_norm_stabilized},
                            {"disc_checked", r.disc_checked},
                            {"G", r.cauchy_G},
                            {"pointwise_bound_ok", r.pointwise_bound_ok},
                            {"worst_x", r.worst_x},
                            {"worst_ratio", r.worst_ratio},
                            {"note", r.note}};
            return o;
        };
    }

    // basis-build
    auto bb_seq = std::make_shared<SequenceOptions>();
    auto bb = std::make_shared<std::tuple<std::string, std::string, double>>("fejer", "2,4,8,16", 1e-12);
    {
        CLI::App* sub = add("basis-build", "Step system from the difference monomials", false, false);
        bb_seq->N = 8;
        bb_seq->rule = "geometric";
        bb_seq->add(sub);
        sub->add_option("--method", std::get<0>(*bb), "dirichlet | fejer | vallee-poussin");
        sub->add_option("--degrees", std::get<1>(*bb), "Summation degrees for the candidates");
        sub->add_option("--pivot-tol", std::get<2>(*bb), "Elimination pivot threshold");
        commands["basis-build"].body = [bb_seq, bb]() {
            const ExponentSequence seq = bb_seq->build();
            const StepBuild b = build_step_system(seq, seq.size(), SummationMatrix::from_name(std::get<0>(*bb)),
                                                  parse_index_list(std::get<1>(*bb)), std::get<2>(*bb));
            Json system = to_json(b.exclusion.system);
            Outcome o;
            o.result = Json{{"system", system},
                            {"candidates", b.candidates.candidates.size()},
                            {"dropped", b.candidates.dropped},
                            {"rejected", b.exclusion.rejected},
                            {"violations", step_system_violations(b.exclusion.system)},
                            {"span_residual", span_residual(b.candidates.candidates, b.exclusion.system)}};
            o.tolerances["pivot"] = std::get<2>(*bb);
            return o;
        };
    }

    // basis-validate
    auto bv = std::make_shared<std::tuple<std::string, std::size_t, std::size_t, std::size_t>>("", 6, 200, 0);
    {
        CLI::App* sub = add("basis-validate", "Inclinations, s(n) curve and projection norms", true, false);
        sub->add_option("--in", std::get<0>(*bv), "Step system JSON (basis-build output or its \"system\" field)")
            ->required();
        sub->add_option("--L", std::get<1>(*bv), "Rows used");
        sub->add_option("--probes", std::get<2>(*bv), "Seeded probe combinations");
        sub->add_option("--grid", std::get<3>(*bv), "Inclination grid (0: automatic)");
        commands["basis-validate"].body = [bv, &ctx]() {
            Json doc = read_json_file(std::get<0>(*bv));
            if (doc.contains("result") && doc["result"].contains("system")) doc = doc["result"]["system"];
            const StepSystem S = step_system_from_json(doc);
            const BasisReport r = validate_basis_section(S, std::get<1>(*bv), std::get<2>(*bv), ctx.seed, std::get<3>(*bv));
            Json s_curve = Json::array();
            for (const auto& [n, s] : r.s_curve) s_curve.push_back({n, s});
            Outcome o;
            o.result = Json{{"L", r.L},
                            {"lead_columns", r.lead_columns},
                            {"lead_frequencies", r.lead_frequencies},
                            {"lead_columns_strict", r.lead_columns_strict},
                            {"lead_frequencies_strict", r.lead_frequencies_strict},
                            {"s_curve", s_curve},
                            {"s_nonincreasing", r.s_nonincreasing},
                            {"inclinations", r.inclinations},
                            {"inclination_lower", r.inclination_lower},
                            {"inclination_floor", r.inclination_floor},
                            {"inclination_floor_refined", r.inclination_floor_refined},
                            {"floor_stable", r.floor_stable},
                            {"meets_half", r.meets_half},
                            {"projection_norms", r.projection_norms},
                            {"projection_bound_ok", r.projection_bound_ok}};
            return o;
        };
    }

    // Config files are expanded into flags placed before the user's flags, so flags win.
    std::vector<std::string> args = raw_args;
    if (!args.empty() && commands.count(args[0])) {
        std::string config;
        for (std::size_t i = 1; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
            if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
        }
        if (!config.empty()) {
            const auto extra = config_arguments(read_json_file(config));
            args.insert(args.begin() + 1, extra.begin(), extra.end());
        }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }

    for (auto& [name, cmd] : commands) {
        if (!cmd.app->parsed()) continue;
        Outcome o = cmd.body();
        Json artifact;
        artifact["command"] = name;
        artifact["version"] = kArtifactVersion;
        artifact["config"] = effective_config(cmd.app);
        artifact["seed"] = ctx.seed;
        artifact["tolerances"] = o.tolerances;
        std::string body;
        if (cmd.csv) {
            body = "# " + artifact.dump() + "\n" + csv_table(o.csv_header, o.csv_rows);
        } else {
            artifact["result"] = o.result;
            body = artifact.dump(2) + "\n";
        }
        if (ctx.out_path.empty()) {
            out << body;
        } else {
            write_text_file(ctx.out_path, body);
        }
        return kExitOk;
    }
    return kExitPrecondition;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_impl(args, out, err);
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const AccuracyError& e) {
        err << "accuracy error: " << e.what() << " (best estimate " << format_real(e.best_estimate()) << ")\n";
        return kExitAccuracy;
    } catch (const OptimizationError& e) {
        err << "solver error: " << e.what() << "\n";
        for (const auto& line : e.trace()) err << "  " << line << "\n";
        return kExitAccuracy;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::invalid_argument& e) {
        err << "error: invalid number: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::out_of_range& e) {
        err << "error: value out of range: " << e.what() << "\n";
        return kExitPrecondition;
    }
}

}  // namespace muntz::cli
