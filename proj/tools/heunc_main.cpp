// Command-line interface: series evaluation, coefficient dumps, polynomial
// spectra, and identity verification reports, with JSON (default) or CSV
// output. Exit codes: 0 success, 1 verification failure, 2 usage or domain
// error.

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "heunc/verify.hpp"

using heunc::cplx;
using json = nlohmann::ordered_json;

namespace {

// Complex flag syntax: "a", "a+bi", "a-bi", "bi", with optional unit
// imaginary part ("a+i"). Whitespace inside the token is rejected.
cplx parse_complex(const std::string& text) {
    const auto fail = [&]() -> void {
        throw CLI::ValidationError("complex", "'" + text + "' is not of the form a, a+bi or bi");
    };
    if (text.empty()) fail();
    for (char ch : text)
        if (std::isspace(static_cast<unsigned char>(ch))) fail();

    const auto to_double = [&](const std::string& s) -> double {
        if (s.empty()) fail();
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(s.c_str(), &end);
        if (errno != 0 || end != s.c_str() + s.size()) fail();
        return v;
    };

    std::string body = text;
    const char last = body.back();
    if (last != 'i' && last != 'I') return {to_double(body), 0.0};

    body.pop_back();
    // Split point: the last +/- that is not a leading sign and not an
    // exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        if (body.empty() || body == "+" || body == "-")
            return {0.0, body == "-" ? -1.0 : 1.0};
        return {0.0, to_double(body)};
    }
    const std::string re_part = body.substr(0, split);
    std::string im_part = body.substr(split);
    if (im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    return {to_double(re_part), to_double(im_part)};
}

json cnum(cplx v) {
    return json{{"re", v.real()}, {"im", v.imag()}};
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json params_json(const heunc::HeunParams& p) {
    return json{{"alpha", cnum(p.alpha)},
                {"beta", cnum(p.beta)},
                {"gamma", cnum(p.gamma)},
                {"delta", cnum(p.delta)},
                {"eta", cnum(p.eta)}};
}

json report_json(const heunc::VerificationReport& r, int trial) {
    json details = json::array();
    for (const auto& d : r.details)
        details.push_back(json{{"index", d.index},
                               {"abs_error", d.abs_error},
                               {"rel_error", d.rel_error}});
    json measured = json::object();
    for (const auto& [name, value] : r.measured) measured[name] = cnum(value);
    return json{{"trial", trial},        {"identity", r.identity},
                {"params", params_json(r.params)}, {"order_n", r.order_n},
                {"residual", r.residual}, {"tolerance", r.tolerance},
                {"passed", r.passed},    {"details", details},
                {"measured", measured}};
}

int default_max_terms() {
    if (const char* env = std::getenv("HEUNC_MAX_TERMS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
        std::cerr << "warning: ignoring malformed HEUNC_MAX_TERMS='" << env << "'\n";
    }
    return 10000;
}

struct ParamFlags {
    std::string alpha, beta, gamma, delta, eta;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f, bool need_delta_eta, bool required) {
    auto* a = cmd->add_option("--alpha", f.alpha, "alpha (complex, e.g. 1.5 or 1.5-2i)");
    auto* b = cmd->add_option("--beta", f.beta, "beta (complex; not a negative integer)");
    auto* g = cmd->add_option("--gamma", f.gamma, "gamma (complex)");
    if (required) {
        a->required();
        b->required();
        g->required();
    }
    if (need_delta_eta) {
        auto* d = cmd->add_option("--delta", f.delta, "delta (complex)");
        auto* e = cmd->add_option("--eta", f.eta, "eta (complex)");
        if (required) {
            d->required();
            e->required();
        }
    }
}

heunc::HeunParams params_from_flags(const ParamFlags& f) {
    return heunc::HeunParams(parse_complex(f.alpha), parse_complex(f.beta),
                             parse_complex(f.gamma),
                             f.delta.empty() ? cplx(0.0) : parse_complex(f.delta),
                             f.eta.empty() ? cplx(0.0) : parse_complex(f.eta));
}

// 16 probe points on two circles inside |z| <= 0.5, for the function-value
// view of an identity.
std::vector<cplx> zgrid_points() {
    std::vector<cplx> pts;
    for (int ring = 0; ring < 2; ++ring) {
        const double r = ring == 0 ? 0.25 : 0.5;
        for (int j = 0; j < 8; ++j) {
            const double angle = 2.0 * 3.14159265358979323846 * (j + 0.21) / 8.0;
            pts.emplace_back(r * std::cos(angle), r * std::sin(angle));
        }
    }
    return pts;
}

double zgrid_four_term(const heunc::HeunParams& p, int n, const heunc::EvalOptions& opts) {
    const auto shifted = heunc::shift_params(p, heunc::ShiftIndex(n));
    const auto op = heunc::build_operator(shifted);
    const cplx factor =
        double(n) * (p.delta + p.alpha * (p.beta + p.gamma) / 2.0 + double(n) * p.alpha);
    double worst = 0.0;
    for (const cplx z : zgrid_points()) {
        const cplx h2 = heunc::eval_derivative(p, z, n + 2, opts);
        const cplx h1 = heunc::eval_derivative(p, z, n + 1, opts);
        const cplx h0 = heunc::eval_derivative(p, z, n, opts);
        const cplx hm = heunc::eval_derivative(p, z, n - 1, opts);
        const cplx p2 = z * z - z;
        const cplx p1 = op.p1[0] + op.p1[1] * z + op.p1[2] * z * z;
        const cplx p0 = op.p0[0] + op.p0[1] * z;
        const cplx lhs = p2 * h2 + p1 * h1 + p0 * h0;
        const cplx rhs = -factor * hm;
        const double scale = std::max({1.0, std::abs(p2 * h2), std::abs(p1 * h1),
                                       std::abs(p0 * h0), std::abs(rhs)});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

double zgrid_darboux(cplx alpha, cplx beta, cplx gamma, cplx eta, int N, cplx p_n,
                     const heunc::EvalOptions& opts) {
    const heunc::HeunParams p(alpha, beta, gamma,
                              heunc::delta_for_condition(alpha, beta, gamma, N), eta);
    const auto assoc = heunc::associate_params(alpha, beta, gamma, eta, N);
    double worst = 0.0;
    for (const cplx z : zgrid_points()) {
        const cplx lhs = heunc::eval_derivative(p, z, N + 1, opts);
        const cplx rhs = p_n * heunc::eval(assoc, z, opts);
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

struct VerifyOrders {
    int basic = 2;
    int four_term = 2;
    int chain = 2;
    int high_ode = 1;
    int darboux_N = 1;
};

const std::vector<std::string> kAllIdentities = {
    "basic", "four-term", "chain", "high-ode", "darboux", "selfadjoint", "swap"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"confluent Heun function toolkit: series evaluation, Taylor "
                 "coefficients, polynomial spectra, identity verification"};
    app.require_subcommand(1);

    // --- eval ---------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "evaluate HeunC (and derivatives) inside the disk");
    ParamFlags eval_params;
    add_param_flags(eval_cmd, eval_params, true, true);
    std::string z_flag;
    eval_cmd->add_option("--z", z_flag, "evaluation point (complex, |z| <= 0.95)")->required();
    int deriv_order = 0;
    eval_cmd->add_option("--deriv", deriv_order, "also evaluate this derivative order")
        ->check(CLI::NonNegativeNumber);
    double eval_tol = 1e-12;
    eval_cmd->add_option("--tol", eval_tol, "series tail tolerance (default 1e-12)");
    int max_terms = default_max_terms();
    eval_cmd->add_option("--max-terms", max_terms, "term cap (default 10000 or HEUNC_MAX_TERMS)");

    // --- coeffs -------------------------------------------------------
    auto* coeffs_cmd = app.add_subcommand("coeffs", "dump Taylor coefficients v_0..v_M");
    ParamFlags coeffs_params;
    add_param_flags(coeffs_cmd, coeffs_params, true, true);
    int coeffs_order = 0;
    coeffs_cmd->add_option("--order", coeffs_order, "highest coefficient index M")
        ->required()
        ->check(CLI::NonNegativeNumber);
    std::string coeffs_format = "json";
    coeffs_cmd->add_option("--format", coeffs_format, "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // --- poly ---------------------------------------------------------
    auto* poly_cmd = app.add_subcommand(
        "poly", "determinant spectrum and confluent Heun polynomials for degree N");
    ParamFlags poly_params;
    add_param_flags(poly_cmd, poly_params, false, true);
    int poly_N = 0;
    poly_cmd->add_option("--N", poly_N, "polynomial degree N")->required()->check(
        CLI::NonNegativeNumber);
    int poly_k = 0;  // 0 = all roots
    poly_cmd->add_option("--k", poly_k, "only this root index (1..N+1; default all)");
    std::string poly_format = "json";
    poly_cmd->add_option("--format", poly_format, "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // --- verify -------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "run identity verification reports");
    ParamFlags verify_params;
    add_param_flags(verify_cmd, verify_params, true, false);
    std::string identity = "all";
    verify_cmd->add_option("--identity", identity, "identity to check (default all)")
        ->check(CLI::IsMember(
            {"basic", "four-term", "chain", "high-ode", "darboux", "selfadjoint", "swap", "all"}));
    int random_trials = 0;
    verify_cmd->add_option("--random", random_trials,
                           "number of random parameter sets (otherwise use the flags)");
    std::uint64_t seed = 0;
    verify_cmd->add_option("--seed", seed, "seed for --random (default 0)");
    int order_flag = -1;
    verify_cmd->add_option("--n", order_flag, "derivative order for basic/four-term/chain/high-ode");
    int darboux_N = 1;
    verify_cmd->add_option("--N", darboux_N, "degree for the darboux identity (default 1)")
        ->check(CLI::NonNegativeNumber);
    int truncation = 0;
    verify_cmd->add_option("--M", truncation, "series truncation override");
    int basic_trials = 3;
    verify_cmd->add_option("--trials", basic_trials,
                           "random series per basic-commutation report (default 3)");
    double corruption = 0.0;
    verify_cmd->add_option("--corruption", corruption,
                           "negative control: perturb each identity's constant by this "
                           "relative amount (honest run = 0)");
    bool zgrid = false;
    verify_cmd->add_flag("--zgrid", zgrid,
                         "also probe four-term/darboux on 16 points |z| <= 0.5");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(eval_cmd)) {
            const auto p = params_from_flags(eval_params);
            const cplx z = parse_complex(z_flag);
            heunc::EvalOptions opts;
            opts.tol = eval_tol;
            opts.max_terms = max_terms;
            const auto value = heunc::eval_with_info(p, z, opts);

            // Point-wise equation residual as a convergence diagnostic.
            const cplx h1 = heunc::eval_derivative(p, z, 1, opts);
            const cplx h2 = heunc::eval_derivative(p, z, 2, opts);
            const auto mn = heunc::to_mu_nu(p);
            const cplx t2 = z * (z - 1.0) * h2;
            const cplx t1 = (p.alpha * z * (z - 1.0) + (p.beta + 1.0) * (z - 1.0) +
                             (p.gamma + 1.0) * z) * h1;
            const cplx t0 = (mn.mu * (z - 1.0) + mn.nu * z) * value.value;
            const double scale = std::max({1.0, std::abs(t2), std::abs(t1), std::abs(t0)});
            const double ode_residual = std::abs(t2 + t1 + t0) / scale;

            json record{{"command", "eval"},
                        {"inputs",
                         {{"alpha", cnum(p.alpha)},
                          {"beta", cnum(p.beta)},
                          {"gamma", cnum(p.gamma)},
                          {"delta", cnum(p.delta)},
                          {"eta", cnum(p.eta)},
                          {"z", cnum(z)},
                          {"deriv", deriv_order},
                          {"tol", eval_tol},
                          {"max_terms", max_terms}}},
                        {"results", {{"value", cnum(value.value)}}},
                        {"diagnostics",
                         {{"terms_used", value.terms_used}, {"ode_residual", ode_residual}}}};
            if (deriv_order > 0) {
                const auto dv = heunc::eval_derivative_with_info(p, z, deriv_order, opts);
                record["results"]["derivative"] =
                    json{{"order", deriv_order}, {"value", cnum(dv.value)}};
                record["diagnostics"]["derivative_terms_used"] = dv.terms_used;
            }
            std::cout << record.dump(2) << "\n";
            return 0;
        }

        if (app.got_subcommand(coeffs_cmd)) {
            const auto p = params_from_flags(coeffs_params);
            const auto s = heunc::taylor_coeffs(p, coeffs_order);
            if (coeffs_format == "csv") {
                std::cout << "n,re,im\n";
                for (std::size_t n = 0; n < s.coeffs.size(); ++n)
                    std::cout << n << "," << fmt17(s.coeffs[n].real()) << ","
                              << fmt17(s.coeffs[n].imag()) << "\n";
                return 0;
            }
            json rows = json::array();
            for (std::size_t n = 0; n < s.coeffs.size(); ++n)
                rows.push_back(json{{"n", n},
                                    {"re", s.coeffs[n].real()},
                                    {"im", s.coeffs[n].imag()}});
            json record{{"command", "coeffs"},
                        {"inputs",
                         {{"alpha", cnum(p.alpha)},
                          {"beta", cnum(p.beta)},
                          {"gamma", cnum(p.gamma)},
                          {"delta", cnum(p.delta)},
                          {"eta", cnum(p.eta)},
                          {"order", coeffs_order}}},
                        {"results", {{"coefficients", rows}}},
                        {"diagnostics", {{"count", int(s.coeffs.size())}}}};
            std::cout << record.dump(2) << "\n";
            return 0;
        }

        if (app.got_subcommand(poly_cmd)) {
            const cplx alpha = parse_complex(poly_params.alpha);
            const cplx beta = parse_complex(poly_params.beta);
            const cplx gamma = parse_complex(poly_params.gamma);
            const auto dp = heunc::delta_determinant(alpha, beta, gamma, poly_N);
            const auto roots = heunc::find_mu_roots(dp);
            const auto clusters = heunc::root_cluster_sizes(roots);
            if (poly_k != 0 && (poly_k < 1 || poly_k > poly_N + 1))
                throw heunc::Error("--k must be in 1..N+1");

            std::vector<heunc::PolySolution> solutions;
            for (int k = 1; k <= poly_N + 1; ++k) {
                if (poly_k != 0 && k != poly_k) continue;
                solutions.push_back(heunc::construct_polynomial(alpha, beta, gamma, poly_N, k));
            }

            if (poly_format == "csv") {
                std::cout << "k,mu_re,mu_im,eta_re,eta_im,multiplicity,tail_residual\n";
                for (const auto& sol : solutions)
                    std::cout << sol.k << "," << fmt17(sol.mu_k.real()) << ","
                              << fmt17(sol.mu_k.imag()) << "," << fmt17(sol.eta_k.real()) << ","
                              << fmt17(sol.eta_k.imag()) << ","
                              << clusters[std::size_t(sol.k - 1)] << ","
                              << fmt17(sol.tail_residual) << "\n";
                return 0;
            }

            json delta_coeffs = json::array();
            for (const auto& c : dp.coeffs) delta_coeffs.push_back(cnum(c));

            // The full spectrum is always reported; --k only selects which
            // polynomial solutions get constructed.
            json spectrum = json::array();
            for (std::size_t i = 0; i < roots.size(); ++i)
                spectrum.push_back(
                    json{{"k", int(i) + 1},
                         {"mu", cnum(roots[i])},
                         {"eta", cnum(heunc::mu_to_eta(alpha, beta, gamma, roots[i]))},
                         {"multiplicity", clusters[i]}});

            json solution_records = json::array();
            double max_tail = 0.0;
            for (const auto& sol : solutions) {
                json coeffs = json::array();
                for (const auto& c : sol.coeffs) coeffs.push_back(cnum(c));
                solution_records.push_back(json{{"k", sol.k},
                                                {"mu", cnum(sol.mu_k)},
                                                {"eta", cnum(sol.eta_k)},
                                                {"multiplicity", clusters[std::size_t(sol.k - 1)]},
                                                {"coefficients", coeffs},
                                                {"tail_residual", sol.tail_residual}});
                max_tail = std::max(max_tail, sol.tail_residual);
            }
            json record{{"command", "poly"},
                        {"inputs",
                         {{"alpha", cnum(alpha)},
                          {"beta", cnum(beta)},
                          {"gamma", cnum(gamma)},
                          {"N", poly_N},
                          {"k", poly_k}}},
                        {"results",
                         {{"delta_coefficients", delta_coeffs},
                          {"spectrum", spectrum},
                          {"roots", solution_records}}},
                        {"diagnostics",
                         {{"degree", poly_N + 1}, {"max_tail_residual", max_tail}}}};
            std::cout << record.dump(2) << "\n";
            return 0;
        }

        // --- verify ----------------------------------------------------
        const bool use_random = random_trials > 0;
        if (!use_random &&
            (verify_params.alpha.empty() || verify_params.beta.empty() ||
             verify_params.gamma.empty() || verify_params.eta.empty()))
            throw heunc::Error("verify needs either --random T or --alpha/--beta/--gamma/--eta "
                               "(--delta for identities other than darboux)");

        VerifyOrders orders;
        if (order_flag >= 0) {
            orders.basic = order_flag;
            orders.four_term = std::max(1, order_flag);
            orders.chain = std::max(1, order_flag);
            orders.high_ode = std::max(1, order_flag);
        }

        std::vector<std::string> identities;
        if (identity == "all")
            identities = kAllIdentities;
        else
            identities.push_back(identity);

        std::vector<heunc::HeunParams> param_sets;
        if (use_random) {
            heunc::SplitMix64 rng(seed);
            for (int t = 0; t < random_trials; ++t)
                param_sets.push_back(heunc::random_params(rng));
        } else {
            param_sets.push_back(params_from_flags(verify_params));
        }

        heunc::EvalOptions grid_opts;
        grid_opts.max_terms = default_max_terms();

        json reports = json::array();
        int num_passed = 0;
        for (std::size_t trial = 0; trial < param_sets.size(); ++trial) {
            const auto& p = param_sets[trial];
            for (const auto& id : identities) {
                heunc::VerificationReport report = [&]() {
                    if (id == "basic")
                        return heunc::verify_basic_commutation(p, orders.basic, basic_trials,
                                                               corruption, seed + trial);
                    if (id == "four-term")
                        return heunc::verify_four_term(
                            p, orders.four_term,
                            truncation > 0 ? truncation : std::max(2 * orders.four_term + 6, 40),
                            corruption);
                    if (id == "chain")
                        return heunc::verify_chain(
                            p, orders.chain,
                            truncation > 0 ? truncation : 3 * orders.chain + 12, corruption);
                    if (id == "high-ode")
                        return heunc::verify_high_order_ode(
                            p, orders.high_ode,
                            truncation > 0 ? truncation : 3 * orders.high_ode + 10, corruption);
                    if (id == "darboux")
                        return heunc::verify_darboux_relation(
                            p.alpha, p.beta, p.gamma, p.eta, darboux_N,
                            truncation > 0 ? truncation : darboux_N + 26, corruption);
                    if (id == "selfadjoint")
                        return heunc::verify_selfadjoint_form(
                            p, truncation > 0 ? truncation : 20, corruption);
                    return heunc::verify_symmetry_swap(p, corruption);
                }();

                json rj = report_json(report, int(trial));
                if (zgrid) {
                    if (id == "four-term")
                        rj["measured"]["zgrid_residual"] =
                            cnum(cplx(zgrid_four_term(p, orders.four_term, grid_opts), 0.0));
                    else if (id == "darboux")
                        rj["measured"]["zgrid_residual"] = cnum(cplx(
                            zgrid_darboux(p.alpha, p.beta, p.gamma, p.eta, darboux_N,
                                          report.measured.at("P_N"), grid_opts),
                            0.0));
                }
                if (report.passed) ++num_passed;
                reports.push_back(std::move(rj));
            }
        }

        json inputs{{"identity", identity}, {"random", random_trials}, {"seed", seed},
                    {"n", order_flag},      {"N", darboux_N},          {"trials", basic_trials},
                    {"corruption", corruption}, {"zgrid", zgrid}};
        if (!use_random) inputs["params"] = params_json(param_sets[0]);
        const int num_reports = int(reports.size());
        json record{{"command", "verify"},
                    {"inputs", inputs},
                    {"results", {{"reports", reports}}},
                    {"diagnostics",
                     {{"num_reports", num_reports},
                      {"num_passed", num_passed},
                      {"num_failed", num_reports - num_passed}}}};
        std::cout << record.dump(2) << "\n";
        return num_passed == num_reports ? 0 : 1;
    } catch (const heunc::OutOfDisk& e) {
        std::cerr << "OutOfDisk: " << e.what() << "\n";
        return 2;
    } catch (const heunc::NoConvergence& e) {
        std::cerr << "NoConvergence: " << e.what() << "\n";
        return 2;
    } catch (const heunc::InvalidBeta& e) {
        std::cerr << "InvalidBeta: " << e.what() << "\n";
        return 2;
    } catch (const heunc::AlphaZero& e) {
        std::cerr << "AlphaZero: " << e.what() << "\n";
        return 2;
    } catch (const heunc::DegreeTooLow& e) {
        std::cerr << "DegreeTooLow: " << e.what() << "\n";
        return 2;
    } catch (const heunc::DeltaConditionViolated& e) {
        std::cerr << "DeltaConditionViolated: " << e.what() << "\n";
        return 2;
    } catch (const heunc::VerificationFailed& e) {
        std::cerr << "VerificationFailed: " << e.what() << "\n";
        return 2;
    } catch (const heunc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
