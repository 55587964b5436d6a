#include "heunc/params.hpp"

#include <cmath>
#include <sstream>

namespace heunc {

bool near_negative_integer(cplx b, double tol) {
    if (std::abs(b.imag()) >= tol) return false;
    const double r = std::round(b.real());
    return r <= -1.0 && std::abs(b.real() - r) < tol;
}

HeunParams::HeunParams(cplx a, cplx b, cplx g, cplx d, cplx e)
    : alpha(a), beta(b), gamma(g), delta(d), eta(e) {
    if (near_negative_integer(beta)) {
        std::ostringstream msg;
        msg << "beta = (" << beta.real() << "," << beta.imag()
            << ") is within 1e-12 of a negative integer; A_n = 1 + beta/n would vanish";
        throw InvalidBeta(msg.str());
    }
}

ShiftIndex::ShiftIndex(int n_) : n(n_) {
    if (n < 0) throw Error("ShiftIndex requires n >= 0");
}

MuNu to_mu_nu(const HeunParams& p) {
    const auto ps = detail::widen<double>(p);
    return {detail::mu_of(ps), detail::nu_of(ps)};
}

HeunParams from_mu_nu(cplx alpha, cplx beta, cplx gamma, const MuNu& mn) {
    const cplx eta = 0.5 * (alpha - beta - gamma + alpha * beta - beta * gamma) - mn.mu;
    const cplx delta = mn.mu + mn.nu - alpha * ((beta + gamma) / 2.0 + 1.0);
    return HeunParams(alpha, beta, gamma, delta, eta);
}

HeunParams shift_params(const HeunParams& p, ShiftIndex s) {
    const auto q = detail::shift(detail::widen<double>(p), s.n);
    return HeunParams(q.alpha, q.beta, q.gamma, q.delta, q.eta);
}

cplx delta_for_condition(cplx alpha, cplx beta, cplx gamma, int N) {
    return -alpha * ((beta + gamma) / 2.0 + double(N) + 1.0);
}

std::optional<int> check_delta_condition(const HeunParams& p, double tol) {
    if (p.alpha == cplx(0.0, 0.0)) return std::nullopt;
    const cplx target = -p.delta / p.alpha - (p.beta + p.gamma) / 2.0 - 1.0;
    const double n_real = std::round(target.real());
    if (n_real < 0.0) return std::nullopt;
    const int N = static_cast<int>(n_real);
    if (std::abs(target - cplx(n_real, 0.0)) < tol) return N;
    return std::nullopt;
}

cplx pochhammer(cplx x, int n) {
    if (n < 0) throw Error("pochhammer requires n >= 0");
    cplx prod(1.0, 0.0);
    for (int k = 0; k < n; ++k) prod *= x + double(k);
    return prod;
}

}  // namespace heunc
