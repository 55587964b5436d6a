#pragma once

#include <vector>

#include "heunc/series.hpp"

namespace heunc {

// Delta_{N+1}(mu) expanded in ascending powers of mu. Monic of degree N+1:
// the determinant diagonal is mu + const, so the leading coefficient is
// exactly one by construction.
struct MuPolynomial {
    std::vector<cplx> coeffs;
    int N = 0;
};

// One confluent Heun polynomial: root index k (1-based, roots sorted
// lexicographically by (Re, Im)), its spectral parameter mu_k, the matching
// eta_k, and the N+1 Taylor coefficients.
struct PolySolution {
    int N = 0;
    int k = 1;
    cplx mu_k, eta_k;
    std::vector<cplx> coeffs;
    double tail_residual = 0.0;  // max(|v_{N+1}|,|v_{N+2}|) / max|v_n|
};

struct PnConstant {
    cplx value;
};

// Tridiagonal determinant, diagonal d_r = mu - q_r + (r-1) alpha with
// q_r = (r-1)(r + beta + gamma), superdiagonal u_r = r(r+beta), subdiagonal
// l_r = (N-r+2) alpha, expanded as a polynomial in mu through the recurrence
// D_r = d_r D_{r-1} - l_r u_{r-1} D_{r-2}.
MuPolynomial delta_determinant(cplx alpha, cplx beta, cplx gamma, int N);

// All N+1 roots by simultaneous (Durand-Kerner) iteration from guesses on a
// circle of radius 1 + max|coeff| rotated by an irrational angle, followed by
// Newton polish; sorted by (Re, Im). Each root satisfies
// |Delta(mu_k)| < tol * (1 + |mu_k|^{N+1}).
std::vector<cplx> find_mu_roots(const MuPolynomial& dp, double tol = 1e-10, int max_iter = 200);

// eta = (alpha - beta - gamma + alpha*beta - beta*gamma)/2 - mu.
cplx mu_to_eta(cplx alpha, cplx beta, cplx gamma, cplx mu);

// Builds the degree-N polynomial solution for root k: delta = delta_N,
// eta = eta_k, then checks that v_{N+1} and v_{N+2} vanish numerically.
PolySolution construct_polynomial(cplx alpha, cplx beta, cplx gamma, int N, int k);

// P_N = (N+1)! v_{N+1}; requires p to satisfy the delta_N condition.
PnConstant pn_constant(const HeunParams& p, int N);

// (alpha, beta+N+1, gamma+N+1, -alpha(beta+gamma)/2,
//  eta + (N+1)(N+1-alpha+beta+gamma)/2); never satisfies a delta_M condition.
HeunParams associate_params(cplx alpha, cplx beta, cplx gamma, cplx eta, int N);

// cluster_sizes[i] = number of roots within tol of roots[i] (>= 1); a value
// above 1 flags a numerically multiple root.
std::vector<int> root_cluster_sizes(const std::vector<cplx>& roots, double tol = 1e-7);

namespace detail {

template <class R>
std::complex<R> horner(const std::vector<std::complex<R>>& coeffs, std::complex<R> x) {
    std::complex<R> acc(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

// Determinant coefficients at precision R (ascending powers of mu).
template <class R>
std::vector<std::complex<R>> delta_coeffs_t(const ParamSet<R>& p, int N) {
    using C = std::complex<R>;
    std::vector<C> d_prev2;         // D_{r-2}
    std::vector<C> d_prev1 = {C(1)};  // D_{r-1}, starting from D_0 = 1
    for (int r = 1; r <= N + 1; ++r) {
        const C q_r = R(r - 1) * (R(r) + p.beta + p.gamma);
        const C c_r = R(r - 1) * p.alpha - q_r;  // d_r(mu) = mu + c_r
        std::vector<C> d(d_prev1.size() + 1, C(0));
        for (std::size_t i = 0; i < d_prev1.size(); ++i) {
            d[i + 1] += d_prev1[i];       // mu * D_{r-1}
            d[i] += c_r * d_prev1[i];     // c_r * D_{r-1}
        }
        if (r >= 2) {
            const C l_r = R(N - r + 2) * p.alpha;
            const C u_rm1 = R(r - 1) * (R(r - 1) + p.beta);
            const C f = l_r * u_rm1;
            for (std::size_t i = 0; i < d_prev2.size(); ++i) d[i] -= f * d_prev2[i];
        }
        d_prev2 = std::move(d_prev1);
        d_prev1 = std::move(d);
    }
    return d_prev1;
}

template <class R>
std::vector<std::complex<R>> durand_kerner(const std::vector<std::complex<R>>& coeffs,
                                           R move_tol, R resid_tol, int max_iter,
                                           int newton_steps, bool* converged = nullptr);

}  // namespace detail

}  // namespace heunc
