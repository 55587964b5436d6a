#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "heunc/params.hpp"

namespace heunc {

// Truncated Taylor series about z = 0. coeffs[k] is the z^k coefficient.
// Entries above valid_degree are carried along but not trusted: every
// differentiation moves the trusted bound down by one and every operator
// application by two, so chained operations never assert on coefficients
// contaminated by the truncation.
template <class R>
struct BasicSeries {
    std::vector<std::complex<R>> coeffs;
    int valid_degree = 0;
};

using TruncatedSeries = BasicSeries<double>;

// Values of A_n, B_n, C_n of the three-term recurrence A_n v_n = B_n v_{n-1} + C_n v_{n-2}.
struct RecurrenceCoeffs {
    cplx a_n, b_n, c_n;
};

//   A_n = 1 + beta/n
//   B_n = 1 + (-alpha+beta+gamma-1)/n + (eta - (-alpha+beta+gamma)/2 - alpha*beta/2 + beta*gamma/2)/n^2
//   C_n = (delta + alpha*(beta+gamma)/2 + alpha*(n-1)) / n^2
// C_n uses the product form so alpha = 0 needs no special case.
RecurrenceCoeffs recurrence_coeffs(const HeunParams& p, int n);

// Taylor coefficients v_0..v_M with v_0 = 1, v_{-1} = 0; valid_degree = M.
TruncatedSeries taylor_coeffs(const HeunParams& p, int M);

struct EvalOptions {
    double tol = 1e-12;
    int max_terms = 10000;
    double r_max = 0.95;
};

struct EvalInfo {
    cplx value;
    int terms_used = 0;
};

// Partial sum of the series at z, terminated once two consecutive terms are
// below tol*(1 + |sum|). Throws OutOfDisk for |z| > r_max and NoConvergence
// at max_terms.
cplx eval(const HeunParams& p, cplx z, const EvalOptions& opts = {});
EvalInfo eval_with_info(const HeunParams& p, cplx z, const EvalOptions& opts = {});

// n-th derivative by term-wise differentiation, same termination rule.
cplx eval_derivative(const HeunParams& p, cplx z, int n, const EvalOptions& opts = {});
EvalInfo eval_derivative_with_info(const HeunParams& p, cplx z, int n,
                                   const EvalOptions& opts = {});

TruncatedSeries differentiate(const TruncatedSeries& s);
TruncatedSeries mul_poly(const TruncatedSeries& s, const std::vector<cplx>& q);

namespace detail {

// The zero series is represented as [0] with valid_degree 0, never as an
// empty coefficient list.
template <class R>
BasicSeries<R> zero_series() {
    return {{std::complex<R>(0)}, 0};
}

template <class R>
BasicSeries<R> differentiate_t(const BasicSeries<R>& s) {
    if (s.valid_degree < 1 || s.coeffs.size() < 2) return zero_series<R>();
    BasicSeries<R> out;
    out.coeffs.resize(s.coeffs.size() - 1);
    for (std::size_t k = 0; k + 1 < s.coeffs.size(); ++k)
        out.coeffs[k] = R(k + 1) * s.coeffs[k + 1];
    out.valid_degree = s.valid_degree - 1;
    return out;
}

// Cauchy product with a fixed polynomial; the trusted range is unchanged
// (coefficient k of the product only reads s up to index k).
template <class R>
BasicSeries<R> mul_poly_t(const BasicSeries<R>& s, const std::vector<std::complex<R>>& q) {
    if (q.empty()) return zero_series<R>();
    BasicSeries<R> out;
    out.coeffs.assign(s.coeffs.size() + q.size() - 1, std::complex<R>(0));
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out.coeffs[i + j] += s.coeffs[i] * q[j];
    out.valid_degree = s.valid_degree;
    return out;
}

template <class R>
BasicSeries<R> add_t(const BasicSeries<R>& a, const BasicSeries<R>& b) {
    BasicSeries<R> out;
    out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), std::complex<R>(0));
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) out.coeffs[k] += a.coeffs[k];
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) out.coeffs[k] += b.coeffs[k];
    out.valid_degree = std::min(a.valid_degree, b.valid_degree);
    return out;
}

template <class R>
BasicSeries<R> sub_t(const BasicSeries<R>& a, const BasicSeries<R>& b) {
    BasicSeries<R> out;
    out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), std::complex<R>(0));
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) out.coeffs[k] += a.coeffs[k];
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) out.coeffs[k] -= b.coeffs[k];
    out.valid_degree = std::min(a.valid_degree, b.valid_degree);
    return out;
}

template <class R>
BasicSeries<R> scaled_t(const BasicSeries<R>& s, std::complex<R> c) {
    BasicSeries<R> out = s;
    for (auto& v : out.coeffs) v *= c;
    return out;
}

// Max magnitude over the trusted range only.
template <class R>
R max_trusted_abs(const BasicSeries<R>& s) {
    R m(0);
    const int top = std::min<int>(s.valid_degree, int(s.coeffs.size()) - 1);
    for (int k = 0; k <= top; ++k) m = std::max(m, std::abs(s.coeffs[k]));
    return m;
}

template <class R>
struct RecurrenceABC {
    std::complex<R> a, b, c;
};

template <class R>
RecurrenceABC<R> recurrence_abc(const ParamSet<R>& p, int n) {
    const R rn(n);
    const std::complex<R> one(1);
    RecurrenceABC<R> r;
    r.a = one + p.beta / rn;
    r.b = one + (-p.alpha + p.beta + p.gamma - one) / rn +
          (p.eta - (-p.alpha + p.beta + p.gamma) / R(2) - p.alpha * p.beta / R(2) +
           p.beta * p.gamma / R(2)) /
              (rn * rn);
    r.c = (p.delta + p.alpha * (p.beta + p.gamma) / R(2) + p.alpha * (rn - one)) / (rn * rn);
    return r;
}

template <class R>
BasicSeries<R> taylor_coeffs_t(const ParamSet<R>& p, int M) {
    BasicSeries<R> s;
    s.coeffs.assign(std::size_t(M) + 1, std::complex<R>(0));
    s.coeffs[0] = std::complex<R>(1);
    std::complex<R> v_prev2(0), v_prev1(1);
    for (int n = 1; n <= M; ++n) {
        const auto r = recurrence_abc(p, n);
        const std::complex<R> v = (r.b * v_prev1 + r.c * v_prev2) / r.a;
        s.coeffs[std::size_t(n)] = v;
        v_prev2 = v_prev1;
        v_prev1 = v;
    }
    s.valid_degree = M;
    return s;
}

}  // namespace detail

}  // namespace heunc
