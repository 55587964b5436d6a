#include "heunc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heunc {

namespace detail {

template <class R>
std::vector<std::complex<R>> durand_kerner(const std::vector<std::complex<R>>& coeffs,
                                           R move_tol, R resid_tol, int max_iter,
                                           int newton_steps, bool* converged) {
    using C = std::complex<R>;
    const int deg = int(coeffs.size()) - 1;
    std::vector<C> roots;
    if (converged) *converged = true;
    if (deg <= 0) return roots;

    // Monic normalization.
    std::vector<C> c(coeffs);
    const C lead = c.back();
    for (auto& v : c) v /= lead;

    R max_abs(0);
    for (int i = 0; i < deg; ++i) max_abs = std::max(max_abs, std::abs(c[std::size_t(i)]));
    const R radius = R(1) + max_abs;

    // Circle guesses rotated by an irrational angle so no guess starts on a
    // symmetry axis of the root set.
    const R two_pi = R(2) * R(3.14159265358979323846264338327950288L);
    const R rot = R(0.57721566490153286L);
    roots.resize(std::size_t(deg));
    for (int i = 0; i < deg; ++i) {
        const R angle = two_pi * R(i) / R(deg) + rot;
        roots[std::size_t(i)] = radius * C(std::cos(angle), std::sin(angle));
    }

    auto resid_ok = [&](const C& x) {
        return std::abs(horner(c, x)) < resid_tol * (R(1) + std::pow(std::abs(x), R(deg)));
    };

    bool done = false;
    for (int it = 0; it < max_iter && !done; ++it) {
        R max_move(0);
        for (int i = 0; i < deg; ++i) {
            C denom(1);
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= roots[std::size_t(i)] - roots[std::size_t(j)];
            if (std::abs(denom) == R(0)) continue;
            const C dr = horner(c, roots[std::size_t(i)]) / denom;
            roots[std::size_t(i)] -= dr;
            max_move = std::max(max_move, std::abs(dr));
        }
        if (max_move < move_tol) done = true;
        // Movement stalls near a multiple root while the residuals are
        // already at rounding level; accept that state too.
        if (!done && std::all_of(roots.begin(), roots.end(), resid_ok)) done = true;
    }
    if (!done && converged) *converged = false;

    // Newton polish.
    std::vector<C> dc(static_cast<std::size_t>(deg));
    for (int i = 1; i <= deg; ++i) dc[std::size_t(i - 1)] = R(i) * c[std::size_t(i)];
    for (auto& x : roots) {
        for (int s = 0; s < newton_steps; ++s) {
            const C dp = horner(dc, x);
            if (std::abs(dp) == R(0)) break;
            x -= horner(c, x) / dp;
        }
    }

    std::sort(roots.begin(), roots.end(), [](const C& a, const C& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

template std::vector<std::complex<double>> durand_kerner<double>(
    const std::vector<std::complex<double>>&, double, double, int, int, bool*);
template std::vector<std::complex<long double>> durand_kerner<long double>(
    const std::vector<std::complex<long double>>&, long double, long double, int, int, bool*);

}  // namespace detail

MuPolynomial delta_determinant(cplx alpha, cplx beta, cplx gamma, int N) {
    if (N < 0) throw Error("delta_determinant requires N >= 0");
    const detail::ParamSet<double> p{alpha, beta, gamma, cplx(0.0), cplx(0.0)};
    return {detail::delta_coeffs_t(p, N), N};
}

std::vector<cplx> find_mu_roots(const MuPolynomial& dp, double tol, int max_iter) {
    if (dp.coeffs.size() != std::size_t(dp.N) + 2)
        throw Error("MuPolynomial must have degree N+1");
    bool converged = true;
    auto roots = detail::durand_kerner<double>(dp.coeffs, 1e-13, tol, max_iter, 3, &converged);
    const int deg = dp.N + 1;
    for (const auto& r : roots) {
        const double bound = tol * (1.0 + std::pow(std::abs(r), double(deg)));
        if (!(std::abs(detail::horner(dp.coeffs, r)) < bound)) converged = false;
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "root iteration for degree " << deg << " did not meet |Delta(mu)| < " << tol
            << "*(1+|mu|^deg) within " << max_iter << " sweeps";
        throw NoConvergence(msg.str());
    }
    return roots;
}

cplx mu_to_eta(cplx alpha, cplx beta, cplx gamma, cplx mu) {
    return 0.5 * (alpha - beta - gamma + alpha * beta - beta * gamma) - mu;
}

std::vector<int> root_cluster_sizes(const std::vector<cplx>& roots, double tol) {
    std::vector<int> sizes(roots.size(), 0);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) < tol) ++sizes[i];
    return sizes;
}

PolySolution construct_polynomial(cplx alpha, cplx beta, cplx gamma, int N, int k) {
    if (N < 0) throw Error("construct_polynomial requires N >= 0");
    if (k < 1 || k > N + 1) throw Error("construct_polynomial requires 1 <= k <= N+1");
    if (alpha == cplx(0.0, 0.0))
        throw AlphaZero("the delta_N condition divides by alpha; alpha must be nonzero");

    // Roots in extended precision: the tail test below compares coefficients
    // against 1e-9, and root error feeds v_{N+1} linearly.
    using lc = std::complex<long double>;
    const detail::ParamSet<long double> pl{lc(alpha), lc(beta), lc(gamma), lc(0), lc(0)};
    const auto coeffs_l = detail::delta_coeffs_t(pl, N);
    const auto roots_l =
        detail::durand_kerner<long double>(coeffs_l, 1e-17L, 1e-14L, 400, 4, nullptr);

    const cplx mu_k(double(roots_l[std::size_t(k - 1)].real()),
                    double(roots_l[std::size_t(k - 1)].imag()));
    const cplx delta_n = delta_for_condition(alpha, beta, gamma, N);
    const cplx eta_k = mu_to_eta(alpha, beta, gamma, mu_k);

    const HeunParams p(alpha, beta, gamma, delta_n, eta_k);
    const TruncatedSeries s = taylor_coeffs(p, N + 2);
    double max_v = 0.0;
    for (const auto& v : s.coeffs) max_v = std::max(max_v, std::abs(v));
    const double tail =
        std::max(std::abs(s.coeffs[std::size_t(N) + 1]), std::abs(s.coeffs[std::size_t(N) + 2]));
    if (!(tail < 1e-9 * max_v)) {
        std::ostringstream msg;
        msg << "tail coefficients v_{N+1}, v_{N+2} did not vanish: " << tail << " vs "
            << 1e-9 * max_v;
        throw VerificationFailed(msg.str());
    }

    PolySolution sol;
    sol.N = N;
    sol.k = k;
    sol.mu_k = mu_k;
    sol.eta_k = eta_k;
    sol.coeffs.assign(s.coeffs.begin(), s.coeffs.begin() + N + 1);
    sol.tail_residual = tail / max_v;
    return sol;
}

PnConstant pn_constant(const HeunParams& p, int N) {
    if (N < 0) throw Error("pn_constant requires N >= 0");
    const auto found = check_delta_condition(p);
    if (!found || *found != N) {
        std::ostringstream msg;
        msg << "parameters do not satisfy the delta_N condition for N = " << N;
        throw DeltaConditionViolated(msg.str());
    }
    const TruncatedSeries s = taylor_coeffs(p, N + 1);
    double fact = 1.0;
    for (int j = 2; j <= N + 1; ++j) fact *= double(j);
    return {fact * s.coeffs[std::size_t(N) + 1]};
}

HeunParams associate_params(cplx alpha, cplx beta, cplx gamma, cplx eta, int N) {
    if (N < 0) throw Error("associate_params requires N >= 0");
    const double n1 = double(N) + 1.0;
    return HeunParams(alpha, beta + n1, gamma + n1, -alpha * (beta + gamma) / 2.0,
                      eta + n1 * (n1 - alpha + beta + gamma) / 2.0);
}

}  // namespace heunc
