#pragma once

#include <vector>

#include "cantorlab/rational.hpp"

namespace cantorlab {

// ceil(c * log(1/eps) / eps) for rational c > 0, eps in (0,1), certified by
// bracketing the irrational value with MPFR directed rounding until both
// bracket ends share a ceiling.
long certified_ceil_c_log_inv(const Rat& c, const Rat& eps);

// Certified strict inequality (1-f)^{n0} (1-a) < eps^{4/3}, checked in log
// form with directed rounding. f, a in (0,1), eps in (0,1).
bool certified_proportion_chain(const Rat& f, long n0, const Rat& a, const Rat& eps);

// floor((1 - hd)^{-1}) + 1, the number of branch pieces needed by the
// dimension argument.
int k_bound_for_dimension(double hd);

// D_k(x_1..x_k) = (x_2 - x_1, ..., x_k - x_1).
template <class S>
std::vector<S> difference_projection(const std::vector<S>& xs) {
    std::vector<S> out;
    for (std::size_t i = 1; i < xs.size(); ++i) out.push_back(xs[i] - xs[0]);
    return out;
}

}  // namespace cantorlab
