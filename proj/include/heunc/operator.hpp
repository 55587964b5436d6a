#pragma once

#include <array>

#include "heunc/series.hpp"

namespace heunc {

// The confluent Heun differential expression multiplied through by z(z-1):
//
//   D[H] = p2 H'' + p1 H' + p0 H,
//   p2 = z(z-1),
//   p1 = alpha z(z-1) + (beta+1)(z-1) + (gamma+1) z,
//   p0 = mu (z-1) + nu z.
//
// The mu/z and nu/(z-1) poles cancel exactly against z(z-1), so application
// to a truncated series is exact polynomial arithmetic.
namespace detail {

template <class R>
struct OperatorT {
    std::array<std::complex<R>, 3> p2;  // [0, -1, 1]
    std::array<std::complex<R>, 3> p1;  // [-(beta+1), -alpha+beta+gamma+2, alpha]
    std::array<std::complex<R>, 2> p0;  // [-mu, mu+nu]
    ParamSet<R> source;
};

template <class R>
OperatorT<R> build_operator_t(const ParamSet<R>& p) {
    using C = std::complex<R>;
    const C mu = mu_of(p);
    const C nu = nu_of(p);
    OperatorT<R> op;
    op.p2 = {C(0), C(-1), C(1)};
    op.p1 = {-(p.beta + C(1)), -p.alpha + p.beta + p.gamma + C(2), p.alpha};
    op.p0 = {-mu, mu + nu};
    op.source = p;
    return op;
}

template <class R>
BasicSeries<R> apply_t(const OperatorT<R>& op, const BasicSeries<R>& s) {
    if (s.valid_degree < 2)
        throw DegreeTooLow("operator application needs valid_degree >= 2");
    const auto d1 = differentiate_t(s);
    const auto d2 = differentiate_t(d1);
    const std::vector<std::complex<R>> q2(op.p2.begin(), op.p2.end());
    const std::vector<std::complex<R>> q1(op.p1.begin(), op.p1.end());
    const std::vector<std::complex<R>> q0(op.p0.begin(), op.p0.end());
    return add_t(add_t(mul_poly_t(d2, q2), mul_poly_t(d1, q1)), mul_poly_t(s, q0));
}

}  // namespace detail

using HeunOperator = detail::OperatorT<double>;

HeunOperator build_operator(const HeunParams& p);

// p2 s'' + p1 s' + p0 s; the result's trusted range shrinks by two.
TruncatedSeries apply(const HeunOperator& op, const TruncatedSeries& s);

// D_from ... D_to acting rightward: D_to is applied first, D_from last,
// where D_k is the operator built from shift_params(p, k).
// Requires valid_degree(s) >= 2*(to - from + 1).
TruncatedSeries apply_shifted_chain(const HeunParams& p, int from, int to,
                                    const TruncatedSeries& s);

// Max trusted-coefficient magnitude of D_p[H_lambda] - lambda H_lambda, where
// H_lambda is the series with eta replaced by eta - lambda. Zero up to
// rounding for every lambda.
double eigen_shift_residual(const HeunParams& p, EigenShift lam, int M);

}  // namespace heunc
