#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heunc/operator.hpp"
#include "heunc/polynomial.hpp"

namespace heunc {

struct CoeffMismatch {
    int index = 0;
    double abs_error = 0.0;
    double rel_error = 0.0;
};

// Result of one identity check. residual is the max relative trusted-
// coefficient mismatch between the two sides, measured against the larger of
// the compared series and the identity's input series. measured carries named
// scalars such as the Darboux constant P_N.
struct VerificationReport {
    std::string identity;
    HeunParams params;
    int order_n = 0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<CoeffMismatch> details;
    std::map<std::string, cplx> measured;
};

// Stratified default tolerances: 1e-11 base, one decade looser per extra
// operator application in the chain being checked.
double default_tolerance(const std::string& identity, int n);

// Each verifier accepts a corruption knob for negative controls: the
// identity's characteristic constant is multiplied by (1 + corruption), so a
// verifier that cannot fail is detectable. corruption = 0 checks the honest
// identity.

// d^n/dz^n D_0 = D_n d^n/dz^n + n(delta + alpha(beta+gamma)/2 + n alpha) d^{n-1}/dz^{n-1}
// checked on `trials` random series (not solutions).
VerificationReport verify_basic_commutation(const HeunParams& p, int n, int trials,
                                            double corruption = 0.0,
                                            std::uint64_t seed = 0x5eedULL);

// D_n H^(n) + n(delta + alpha(beta+gamma)/2 + n alpha) H^(n-1) = 0 for solutions.
VerificationReport verify_four_term(const HeunParams& p, int n, int M, double corruption = 0.0);

// D_1 ... D_n H^(n) = scalar * H with scalar = prod_{j=1..n} (-j)(delta + alpha(beta+gamma)/2 + j alpha).
VerificationReport verify_chain(const HeunParams& p, int n, int M, double corruption = 0.0);

// D_0 D_1 ... D_n H^(n) = 0.
VerificationReport verify_high_order_ode(const HeunParams& p, int n, int M,
                                         double corruption = 0.0);

// d^{N+1}/dz^{N+1} HeunC_N = P_N * HeunC-associate_N, coefficient-wise.
VerificationReport verify_darboux_relation(cplx alpha, cplx beta, cplx gamma, cplx eta, int N,
                                           int M, double corruption = 0.0);

// The self-adjoint expansion and the standard operator agree coefficient-wise.
VerificationReport verify_selfadjoint_form(const HeunParams& p, int M, double corruption = 0.0);

// Swapping the regular singular points exchanges (mu, nu); checked at the
// parameter level.
VerificationReport verify_symmetry_swap(const HeunParams& p, double corruption = 0.0);

// Deterministic generator for the random verification inputs; fixed-width
// integer core so identical seeds give identical draws on every platform.
struct SplitMix64 {
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform();  // [0, 1)
    double uniform(double lo, double hi);
    cplx box(double half_width);
    std::uint64_t state;
};

// Parameters drawn uniformly from the complex box |Re|,|Im| <= box; beta is
// resampled while within beta_guard of a negative integer.
HeunParams random_params(SplitMix64& rng, double box = 2.0, double beta_guard = 1e-6);

}  // namespace heunc
