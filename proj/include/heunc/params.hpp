#pragma once

#include <complex>
#include <optional>

#include "heunc/errors.hpp"

namespace heunc {

using cplx = std::complex<double>;

// Parameter set (alpha, beta, gamma, delta, eta) of the confluent Heun
// equation in the Maple/HeunC convention,
//
//   H'' + (alpha + (beta+1)/z + (gamma+1)/(z-1)) H' + (mu/z + nu/(z-1)) H = 0,
//
// with the accessory parameters mu, nu derived below. The constructor rejects
// beta within 1e-12 of a negative integer (A_n = 1 + beta/n would vanish).
class HeunParams {
public:
    HeunParams(cplx alpha, cplx beta, cplx gamma, cplx delta, cplx eta);

    cplx alpha, beta, gamma, delta, eta;
};

struct MuNu {
    cplx mu, nu;
};

// Derivative order used by the parameter-augmentation map.
struct ShiftIndex {
    explicit ShiftIndex(int n);
    int n;
};

// Operator eigenvalue; any complex value is admissible.
struct EigenShift {
    cplx lambda;
};

// True when b lies within tol of a negative integer on the real axis.
bool near_negative_integer(cplx b, double tol = 1e-12);

// mu = (alpha - beta - gamma + alpha*beta - beta*gamma)/2 - eta
// nu = (alpha + beta + gamma + alpha*gamma + beta*gamma)/2 + delta + eta
MuNu to_mu_nu(const HeunParams& p);

// Inverse of to_mu_nu at fixed (alpha, beta, gamma):
//   eta   = (alpha - beta - gamma + alpha*beta - beta*gamma)/2 - mu
//   delta = mu + nu - alpha*((beta+gamma)/2 + 1)
HeunParams from_mu_nu(cplx alpha, cplx beta, cplx gamma, const MuNu& mn);

// Index augmentation for the n-th derivative:
//   (alpha, beta+n, gamma+n, delta + n*alpha, eta + (n/2)(n - alpha + beta + gamma)).
// delta(n) is stored as delta + n*alpha (the ratio form delta/alpha + n times
// alpha, valid also at alpha = 0).
HeunParams shift_params(const HeunParams& p, ShiftIndex s);

// delta_N = -alpha*((beta+gamma)/2 + N + 1), the value making C_{N+2} vanish.
cplx delta_for_condition(cplx alpha, cplx beta, cplx gamma, int N);

// Nearest nonnegative integer N with |delta/alpha + (beta+gamma)/2 + N + 1| < tol,
// empty when alpha = 0 or no such N exists.
std::optional<int> check_delta_condition(const HeunParams& p, double tol = 1e-9);

// Rising factorial x(x+1)...(x+n-1); 1 for n = 0.
cplx pochhammer(cplx x, int n);

namespace detail {

// Precision-generic copy of the parameter set, used by the series engine and
// by the extended-precision verification path.
template <class R>
struct ParamSet {
    std::complex<R> alpha, beta, gamma, delta, eta;
};

template <class R>
ParamSet<R> widen(const HeunParams& p) {
    using C = std::complex<R>;
    return {C(p.alpha.real(), p.alpha.imag()), C(p.beta.real(), p.beta.imag()),
            C(p.gamma.real(), p.gamma.imag()), C(p.delta.real(), p.delta.imag()),
            C(p.eta.real(), p.eta.imag())};
}

template <class R>
std::complex<R> mu_of(const ParamSet<R>& p) {
    return R(0.5) * (p.alpha - p.beta - p.gamma + p.alpha * p.beta - p.beta * p.gamma) - p.eta;
}

template <class R>
std::complex<R> nu_of(const ParamSet<R>& p) {
    return R(0.5) * (p.alpha + p.beta + p.gamma + p.alpha * p.gamma + p.beta * p.gamma) +
           p.delta + p.eta;
}

template <class R>
ParamSet<R> shift(const ParamSet<R>& p, int n) {
    const R half_n = R(n) / R(2);
    return {p.alpha, p.beta + R(n), p.gamma + R(n), p.delta + R(n) * p.alpha,
            p.eta + half_n * (R(n) - p.alpha + p.beta + p.gamma)};
}

// n * alpha * (delta/alpha + (beta+gamma)/2 + n), in the product form
// n * (delta + alpha*(beta+gamma)/2 + n*alpha) that is finite at alpha = 0.
template <class R>
std::complex<R> commutation_factor(const ParamSet<R>& p, int n) {
    return R(n) * (p.delta + p.alpha * (p.beta + p.gamma) / R(2) + R(n) * p.alpha);
}

}  // namespace detail

}  // namespace heunc
