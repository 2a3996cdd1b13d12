// Command-line front end for beta-expansion and digit-restricted set
// computations. Every numeric field is emitted with its enclosure radius.

#include "betadim/cantor_dim.hpp"
#include "betadim/covers.hpp"
#include "betadim/errors.hpp"
#include "betadim/local_ifs.hpp"
#include "betadim/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using json = nlohmann::ordered_json;
using namespace betadim;

namespace {

// Exit codes: 0 success, 2 parse, 3 precision/depth, 4 degenerate,
// 5 precondition.
int exit_code_for(errc kind) {
    switch (kind) {
        case errc::parse_error:
            return 2;
        case errc::ambiguous_floor:
        case errc::depth_exhausted:
        case errc::simplicity_undecided:
        case errc::no_convergence:
        case errc::tol_unreachable:
            return 3;
        default:
            return 5;
    }
}

json enc(const high_real& x) {
    return json{{"mid", x.str()}, {"rad", x.radius_str()}};
}

json interval_json(const exact_interval& iv, int prec) {
    json j;
    j["lo"] = enc(iv.lo.enclosure(prec));
    j["hi"] = enc(iv.hi.enclosure(prec));
    if (iv.lo.is_rational()) j["lo_exact"] = iv.lo.as_rational().get_str();
    if (iv.hi.is_rational()) j["hi_exact"] = iv.hi.as_rational().get_str();
    return j;
}

struct common_opts {
    std::string config_path;
    run_config cfg;

    void attach(CLI::App* cmd) {
        apply_env(cfg);
        cmd->add_option("--config", config_path, "key=value configuration file");
        cmd->add_option("--prec", cfg.precision_bits, "working precision in bits (>= 64)");
        cmd->add_option("--max-prec", cfg.max_precision_bits, "precision cap for floor retries");
        cmd->add_option("--depth", cfg.max_depth, "maximum expansion depth");
        cmd->add_option_function<std::string>(
            "--tol", [this](const std::string& s) { cfg.tol = parse_rational(s); },
            "tolerance as a decimal or rational string");
        cmd->add_option_function<std::string>(
            "--format",
            [this](const std::string& s) {
                if (s == "json")
                    cfg.output = run_config::fmt::json;
                else if (s == "csv")
                    cfg.output = run_config::fmt::csv;
                else
                    raise(errc::parse_error, "format must be json or csv");
            },
            "output format (json|csv)");
    }

    void finalize() {
        if (!config_path.empty()) load_config_file(config_path, cfg);
        cfg.validate();
    }

    pipeline_options pipeline() const {
        pipeline_options o;
        o.tol = cfg.tol;
        o.prec = cfg.precision_bits;
        o.max_depth = cfg.max_depth;
        o.pp = cfg.precision();
        return o;
    }
};

void emit(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_expand(const std::string& beta_s, const std::string& x_s, int n, common_opts& opts) {
    opts.finalize();
    real_alg beta = parse_real(beta_s);
    real_alg x = parse_real(x_s);
    digit_word w = expand(beta, x, n, opts.cfg.precision());
    if (opts.cfg.output == run_config::fmt::csv) {
        std::cout << "beta,x,digits\n" << beta_s << "," << x_s << ",";
        for (size_t i = 0; i < w.size(); ++i) std::cout << (i ? " " : "") << w[i];
        std::cout << "\n";
        return 0;
    }
    json j;
    j["beta"] = beta_s;
    j["x"] = x_s;
    j["digits"] = w;
    emit(std::cout, j);
    return 0;
}

int cmd_dimension(const std::string& beta_s, const std::string& theta_s, common_opts& opts) {
    opts.finalize();
    real_alg beta = parse_real(beta_s);
    digit_set theta(parse_theta(theta_s));
    dimension_result res = hausdorff_dimension(beta, theta, opts.pipeline());

    json j;
    j["beta"] = beta_s;
    j["beta_enclosure"] = enc(res.beta_enclosure);
    j["theta"] = theta.thetas;
    j["z_prefix"] = std::vector<int>(res.z_prefix.begin(),
                                     res.z_prefix.begin() + std::min<size_t>(res.z_prefix.size(), 32));
    j["omega_prefix"] = std::vector<int>(
        res.omega_prefix.begin(), res.omega_prefix.begin() + std::min<size_t>(res.omega_prefix.size(), 32));
    j["alpha"] = enc(res.alpha.alpha);
    j["alpha_residual"] = enc(res.alpha.residual);
    j["truncation"] = res.alpha.truncation;
    j["s"] = enc(res.s);
    j["degenerate"] = res.degenerate;
    if (res.period) {
        j["period"] = {{"preperiod", res.period->preperiod},
                       {"period", res.period->period},
                       {"certified", res.period->certified}};
    }
    emit(std::cout, j);
    return res.degenerate ? 4 : 0;
}

int cmd_curve(const std::string& theta_s, const std::string& lo_s, const std::string& hi_s,
              int samples, const std::string& out_path, int jobs, common_opts& opts) {
    opts.finalize();
    digit_set theta(parse_theta(theta_s));
    curve_result curve =
        dimension_curve(theta, parse_rational(lo_s), parse_rational(hi_s), samples,
                        opts.pipeline(), jobs);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) raise(errc::parse_error, "cannot open output file '" + out_path + "'");
        os = &file;
    }

    int ok_rows = 0;
    for (const auto& row : curve.rows) ok_rows += row.ok ? 1 : 0;

    if (opts.cfg.output == run_config::fmt::csv) {
        *os << "beta,s_mid,s_rad,alpha_mid,alpha_rad,plateau,error\n";
        for (const auto& row : curve.rows) {
            *os << row.beta.get_str() << ",";
            if (row.ok)
                *os << row.dim->s.str() << "," << row.dim->s.radius_str() << ","
                    << row.dim->alpha.alpha.str() << "," << row.dim->alpha.alpha.radius_str();
            else
                *os << ",,,";
            *os << "," << (row.plateau ? 1 : 0) << "," << row.error << "\n";
        }
    } else {
        json rows = json::array();
        for (const auto& row : curve.rows) {
            json r;
            r["beta"] = row.beta.get_str();
            r["ok"] = row.ok;
            if (row.ok) {
                r["s"] = enc(row.dim->s);
                r["alpha"] = enc(row.dim->alpha.alpha);
                r["degenerate"] = row.dim->degenerate;
            } else {
                r["error"] = row.error;
            }
            r["plateau"] = row.plateau;
            rows.push_back(std::move(r));
        }
        json j;
        j["theta"] = theta.thetas;
        j["samples"] = samples;
        j["alpha_nondecreasing"] = curve.alpha_nondecreasing;
        j["rows"] = std::move(rows);
        emit(*os, j);
    }
    return ok_rows > 0 ? 0 : 3;
}

int cmd_count(const std::string& beta_s, int k_max, const std::string& theta_s,
              common_opts& opts) {
    opts.finalize();
    real_alg beta = parse_real(beta_s);
    one_expansion one(beta, std::max(2 * k_max + 16, 64), opts.cfg.precision());
    std::optional<digit_set> theta;
    if (!theta_s.empty()) theta.emplace(parse_theta(theta_s));
    std::vector<int> theta_digits = theta ? theta->thetas : std::vector<int>{};
    auto rows = word_count_table(one, k_max, theta ? &theta_digits : nullptr,
                                 opts.cfg.precision_bits);

    if (opts.cfg.output == run_config::fmt::csv) {
        std::cout << "k,count,lower,upper,within\n";
        for (const auto& row : rows)
            std::cout << row.k << "," << row.count.get_str() << "," << row.lower_bound.str(20)
                      << "," << row.upper_bound.str(20) << "," << (row.within_bounds ? 1 : 0)
                      << "\n";
        return 0;
    }
    json j;
    j["beta"] = beta_s;
    if (theta) j["theta"] = theta->thetas;
    json arr = json::array();
    for (const auto& row : rows) {
        arr.push_back(json{{"k", row.k},
                           {"count", row.count.get_str()},
                           {"lower", enc(row.lower_bound)},
                           {"upper", enc(row.upper_bound)},
                           {"within", row.within_bounds}});
    }
    j["rows"] = std::move(arr);
    emit(std::cout, j);
    return 0;
}

int cmd_localifs(const std::string& beta_s, int depth, const std::string& action,
                 common_opts& opts) {
    opts.finalize();
    real_alg beta = parse_real(beta_s);
    int prec = opts.cfg.precision_bits;
    json j;
    j["beta"] = beta_s;
    j["depth"] = depth;
    j["action"] = action;

    auto parts_json = [&](const interval_union& u) {
        json arr = json::array();
        for (const auto& part : u.parts()) arr.push_back(interval_json(part, prec));
        return arr;
    };

    if (action == "build-b") {
        auto b = build_b(beta, depth);
        j["parts"] = parts_json(b.set);
        j["tie_skips"] = b.tie_skips;
        emit(std::cout, j);
        return 0;
    }
    one_expansion one(beta, std::max(4 * depth + 32, 64), opts.cfg.precision());
    if (action == "build-c") {
        auto c = build_c_approx(one, depth);
        j["parts"] = parts_json(c);
        emit(std::cout, j);
        return 0;
    }
    if (action == "check") {
        auto b = build_b(beta, depth);
        high_real d = invariance_check(b.set, beta, prec);
        high_real be = beta.enclosure(prec);
        high_real bound = be.pow_si(-depth) * be / (be - high_real(1, prec));
        j["distance"] = enc(d);
        j["bound"] = enc(bound);
        j["ok"] = !(d.upper() > bound.upper());
        emit(std::cout, j);
        return 0;
    }
    if (action == "q") {
        auto r = member_q(one);
        switch (r.v) {
            case q_status::verdict::in_q:
                j["verdict"] = "InQ";
                j["eps"] = r.eps;
                break;
            case q_status::verdict::not_in_q:
                j["verdict"] = "NotInQ";
                j["position"] = r.pos;
                j["digit"] = r.digit;
                break;
            case q_status::verdict::undecided_at_depth:
                j["verdict"] = "UndecidedAtDepth";
                j["inspected_depth"] = r.pos;
                break;
        }
        emit(std::cout, j);
        return 0;
    }
    if (action == "diff") {
        auto pts = difference_points(one, depth);
        json arr = json::array();
        for (const auto& p : pts) {
            json e = enc(p.enclosure(prec));
            if (p.is_rational()) e["exact"] = p.as_rational().get_str();
            arr.push_back(std::move(e));
        }
        j["points"] = std::move(arr);
        emit(std::cout, j);
        return 0;
    }
    raise(errc::parse_error, "unknown localifs action '" + action + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"beta-expansion toolkit: digit-restricted sets and their Hausdorff dimension"};
    app.require_subcommand(1);

    std::string beta_s, x_s, theta_s, lo_s, hi_s, out_path, action;
    int n = 16, k_max = 10, samples = 11, depth = 8, jobs = 1;

    common_opts oexp, odim, ocurve, ocount, olocal;

    auto* c_expand = app.add_subcommand("expand", "greedy digits of x in base beta");
    c_expand->add_option("--beta", beta_s, "base (p/q, decimal, or poly:[c0,..]@[lo,hi])")
        ->required();
    c_expand->add_option("--x", x_s, "point in [0,1), same grammar")->required();
    c_expand->add_option("--n", n, "number of digits")->required();
    oexp.attach(c_expand);

    auto* c_dim = app.add_subcommand("dimension", "Hausdorff dimension of the restricted set");
    c_dim->add_option("--beta", beta_s, "base")->required();
    c_dim->add_option("--theta", theta_s, "digit set, e.g. 0,1,3")->required();
    odim.attach(c_dim);

    auto* c_curve = app.add_subcommand("curve", "dimension along a beta grid");
    c_curve->add_option("--theta", theta_s, "digit set")->required();
    c_curve->add_option("--lo", lo_s, "grid start")->required();
    c_curve->add_option("--hi", hi_s, "grid end")->required();
    c_curve->add_option("--samples", samples, "number of grid points");
    c_curve->add_option("--out", out_path, "output file (default stdout)");
    c_curve->add_option("--jobs", jobs, "parallel workers");
    ocurve.attach(c_curve);

    auto* c_count = app.add_subcommand("count", "admissible word counts with growth bounds");
    c_count->add_option("--beta", beta_s, "base")->required();
    c_count->add_option("--k", k_max, "maximum word length")->required();
    c_count->add_option("--theta", theta_s, "optional digit restriction");
    ocount.attach(c_count);

    auto* c_local = app.add_subcommand("localifs", "interval-removal set machinery on (2,3]");
    c_local->add_option("--beta", beta_s, "base in (2,3]")->required();
    c_local->add_option("--depth", depth, "construction depth");
    c_local->add_option("action", action, "one of build-b, build-c, check, q, diff")->required();
    olocal.attach(c_local);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(c_expand)) return cmd_expand(beta_s, x_s, n, oexp);
        if (app.got_subcommand(c_dim)) return cmd_dimension(beta_s, theta_s, odim);
        if (app.got_subcommand(c_curve))
            return cmd_curve(theta_s, lo_s, hi_s, samples, out_path, jobs, ocurve);
        if (app.got_subcommand(c_count)) return cmd_count(beta_s, k_max, theta_s, ocount);
        if (app.got_subcommand(c_local)) return cmd_localifs(beta_s, depth, action, olocal);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 2;
}
