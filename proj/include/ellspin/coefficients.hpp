#pragma once

#include <vector>

#include "ellspin/theta.hpp"

namespace ellspin {

// A_I(x; eta) = prod_{i in I, j notin I} theta(x_i - x_j + eta) / theta(x_i - x_j).
// I holds 1-based indices, ascending; x[i-1] holds x_i.
cplx coeff_A(const std::vector<int>& I, const std::vector<cplx>& x, cplx eta,
             const Lattice& lat);

// d/dx_j log A_I, analytic (log-derivatives of the kernel).
cplx coeff_A_dlog(const std::vector<int>& I, int j, const std::vector<cplx>& x, cplx eta,
                  const Lattice& lat);

}  // namespace ellspin
