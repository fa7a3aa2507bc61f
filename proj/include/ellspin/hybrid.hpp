#pragma once

#include <vector>

#include "ellspin/freezing.hpp"

namespace ellspin {

struct HybridState {
  PhasePoint pt;
  Mat A;  // Heisenberg-picture spin observable
  double t = 0.0;
};

// Point-dependent generator of the spin part of the hybrid flow,
//   Q(x, p) = -i eps sum_i A_i(x) [P_{(1..i)}(x)^{-1} d_i P_{(1..i)}(x)] e^{eps p_i};
// at an equilibrium it coincides with the first chain hamiltonian.
Mat spin_generator(const PhasePoint& pt, Kind k, const ModelParams& pr);

struct Trajectory {
  std::vector<HybridState> samples;  // initial state, every sample_every-th, final
  double max_step_error = 0.0;       // largest embedded half-step estimate
  int steps = 0;
};

// Fixed-step RK4 co-integration of
//   xdot = dD_1/dp,  pdot = -dD_1/dx,  Adot = i [Q(x, p), A].
// Every step is checked against two half steps (estimate = gap/15); an
// estimate above err_tol aborts.  The final step is clipped to land on t_end.
Trajectory evolve(const HybridState& s0, double t_end, double dt, Kind k,
                  const ModelParams& pr, int sample_every = 1, double err_tol = 1e-6);

// e^{sH} A e^{-sH} through the eigendecomposition of H; closed-form benchmark
// for evolution under a constant generator.
Mat conjugate_by_exp(const Mat& H, const Mat& A, cplx s);

}  // namespace ellspin
