#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>

#include "ellspin/permutations.hpp"

namespace ellspin {

// Finite sum of shift terms  f(x) -> sum_k C_k(x) f(x - i hbar eps k), with
// k in Z^N and matrix coefficients acting on the spin space (1x1 when scalar).
struct DiffOperator {
  ModelParams pr;
  Kind kind = Kind::ScalarTrivial;
  std::map<std::vector<int>, std::function<Mat(const std::vector<cplx>&)>> terms;
};

// Scalar Ruijsenaars operator, n in {-N..-1, 1..N}.
DiffOperator build_scalar_D(int n, const ModelParams& pr);

// Spin generalisation: coefficient of the shift on subset I is the
// transported A_I, i.e. A_I(x; +-eta) P_{+-I}(x)^{-1} P_{+-I}(x -+ i hbar eps 1_I).
DiffOperator build_spin_D(int n, Kind k, const ModelParams& pr);

// Operator product: coefficients of the left factor are evaluated at x, those
// of the right factor at the left-shifted point.
DiffOperator compose(const DiffOperator& A, const DiffOperator& B);

// Probe functions are entire vector-valued f: C^N -> spin space.
using Probe = std::function<CVec(const std::vector<cplx>&)>;

// Returns (value of D f at x0, largest single-term norm) for residual scaling.
std::pair<CVec, double> apply_op(const DiffOperator& D, const Probe& f,
                                 const std::vector<cplx>& x0);

// ||[A,B] f(x0)|| / (largest contributing term norm).
double commutator_residual_on_probe(const DiffOperator& A, const DiffOperator& B,
                                    const Probe& f, const std::vector<cplx>& x0);

// Random finite Fourier sum with |k|_inf <= 2 per component, seeded.
Probe random_probe(std::uint64_t seed, int dim, int N);

// Inverse of an unfolded word product via unitarity: reversed factors with
// negated arguments.
Mat p_factors_inverse(const std::vector<PwFactor>& factors, Kind k, const ModelParams& pr,
                      FactorCache& cache);

}  // namespace ellspin
