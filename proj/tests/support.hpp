#pragma once

#include <complex>

#include "heunc/verify.hpp"

namespace heunc_test {

inline double cdist(heunc::cplx a, heunc::cplx b) { return std::abs(a - b); }

// Fixed parameter set with O(1) commutation factors, used where a negative
// control must fail by a guaranteed margin.
inline heunc::HeunParams safe_params() {
    return heunc::HeunParams({1.0, 0.0}, {0.25, 0.0}, {-0.5, 0.0}, {0.8, 0.0}, {0.3, 0.0});
}

}  // namespace heunc_test
