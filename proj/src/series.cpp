#include "heunc/series.hpp"

#include <cmath>
#include <sstream>

namespace heunc {

RecurrenceCoeffs recurrence_coeffs(const HeunParams& p, int n) {
    if (n < 1) throw Error("recurrence_coeffs requires n >= 1");
    const auto r = detail::recurrence_abc(detail::widen<double>(p), n);
    return {r.a, r.b, r.c};
}

TruncatedSeries taylor_coeffs(const HeunParams& p, int M) {
    if (M < 0) throw Error("taylor_coeffs requires M >= 0");
    return detail::taylor_coeffs_t(detail::widen<double>(p), M);
}

TruncatedSeries differentiate(const TruncatedSeries& s) {
    return detail::differentiate_t(s);
}

TruncatedSeries mul_poly(const TruncatedSeries& s, const std::vector<cplx>& q) {
    return detail::mul_poly_t(s, q);
}

namespace {

void check_disk(cplx z, const EvalOptions& opts) {
    if (std::abs(z) > opts.r_max) {
        std::ostringstream msg;
        msg << "|z| = " << std::abs(z) << " exceeds r_max = " << opts.r_max
            << "; the series is only summed inside the disk";
        throw OutOfDisk(msg.str());
    }
}

}  // namespace

EvalInfo eval_derivative_with_info(const HeunParams& p, cplx z, int n, const EvalOptions& opts) {
    if (n < 0) throw Error("eval_derivative requires n >= 0");
    check_disk(z, opts);
    const auto ps = detail::widen<double>(p);

    // Falling factorial k!/(k-n)! and power z^{k-n}, updated incrementally.
    double falling = 1.0;
    for (int j = 2; j <= n; ++j) falling *= double(j);

    cplx v_prev2(0.0), v_prev1(1.0), v(1.0);
    for (int m = 1; m <= n; ++m) {
        const auto r = detail::recurrence_abc(ps, m);
        v = (r.b * v_prev1 + r.c * v_prev2) / r.a;
        v_prev2 = v_prev1;
        v_prev1 = v;
    }
    // v now holds v_n (v_0 when n = 0).

    cplx zpow(1.0, 0.0);
    cplx sum(0.0, 0.0);
    double term_prev = 0.0;
    for (int k = n;; ++k) {
        const cplx term = v * falling * zpow;
        sum += term;
        const double term_abs = std::abs(term);
        if (k > n && term_abs + term_prev < opts.tol * (1.0 + std::abs(sum)))
            return {sum, k - n + 1};
        term_prev = term_abs;
        if (k - n + 1 >= opts.max_terms) {
            std::ostringstream msg;
            msg << "series did not pass the two-term tail test within " << opts.max_terms
                << " terms at |z| = " << std::abs(z);
            throw NoConvergence(msg.str());
        }
        const auto r = detail::recurrence_abc(ps, k + 1);
        const cplx v_next = (r.b * v_prev1 + r.c * v_prev2) / r.a;
        v_prev2 = v_prev1;
        v_prev1 = v_next;
        v = v_next;
        falling *= double(k + 1) / double(k + 1 - n);
        zpow *= z;
    }
}

EvalInfo eval_with_info(const HeunParams& p, cplx z, const EvalOptions& opts) {
    return eval_derivative_with_info(p, z, 0, opts);
}

cplx eval(const HeunParams& p, cplx z, const EvalOptions& opts) {
    return eval_with_info(p, z, opts).value;
}

cplx eval_derivative(const HeunParams& p, cplx z, int n, const EvalOptions& opts) {
    return eval_derivative_with_info(p, z, n, opts).value;
}

}  // namespace heunc
