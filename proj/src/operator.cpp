#include "heunc/operator.hpp"

namespace heunc {

HeunOperator build_operator(const HeunParams& p) {
    return detail::build_operator_t(detail::widen<double>(p));
}

TruncatedSeries apply(const HeunOperator& op, const TruncatedSeries& s) {
    return detail::apply_t(op, s);
}

TruncatedSeries apply_shifted_chain(const HeunParams& p, int from, int to,
                                    const TruncatedSeries& s) {
    if (from < 1 || from > to) throw Error("apply_shifted_chain requires 1 <= from <= to");
    if (s.valid_degree < 2 * (to - from + 1))
        throw DegreeTooLow("chain application needs valid_degree >= 2*(to-from+1)");
    TruncatedSeries acc = s;
    for (int k = to; k >= from; --k)
        acc = apply(build_operator(shift_params(p, ShiftIndex(k))), acc);
    return acc;
}

double eigen_shift_residual(const HeunParams& p, EigenShift lam, int M) {
    if (M < 4) throw Error("eigen_shift_residual requires M >= 4");
    const HeunParams shifted(p.alpha, p.beta, p.gamma, p.delta, p.eta - lam.lambda);
    const TruncatedSeries h = taylor_coeffs(shifted, M);
    const TruncatedSeries lhs = apply(build_operator(p), h);
    const TruncatedSeries diff = detail::sub_t(lhs, detail::scaled_t(h, lam.lambda));
    return detail::max_trusted_abs(diff);
}

}  // namespace heunc
