#pragma once

#include <functional>
#include <vector>

#include "ellspin/rmatrix.hpp"

namespace ellspin {

struct PhasePoint {
  std::vector<cplx> x;
  std::vector<cplx> p;
};

// gamma_I = exp(eps sum_{i in I} p_i)
cplx gamma_subset(const std::vector<int>& I, const std::vector<cplx>& p, cplx eps);

// Classical Ruijsenaars integrals, n in {-N..-1, 1..N}:
//   n > 0: sum_{|I|=n}  A_I(x; +eta) gamma_I
//   n < 0: sum_{|I|=|n|} A_I(x; -eta) gamma_I^{-1}
cplx d_classical(int n, const PhasePoint& pt, const ModelParams& pr);

struct FlowField {
  std::vector<cplx> xdot;
  std::vector<cplx> pdot;
};

// Hamiltonian flow generated by D_n^cl under {x_i, p_j} = delta_ij.
FlowField flow(int n, const PhasePoint& pt, const ModelParams& pr);

// Residuals are scaled by max(|v_1|, tiny); pass() compares them to tol.
struct EquilibriumReport {
  std::vector<cplx> v;  // v[n-1] = mean velocity of flow n, n = 1..N
  cplx v_m1;            // mean velocity of flow -1
  double spread;        // max deviation of any xdot from its flow mean, n in {1..N, -1}
  double jerk;          // max |pdot| over the same flows
  double symmetry;      // max_n |v_{N-n}/(N-n) - v_n/n|
  double parity;        // max_n |v_n(-eta)@(x,-p) - v_n(eta)|
  bool pass(double tol) const;
};
EquilibriumReport equilibrium_report(const PhasePoint& pt, const ModelParams& pr);

// Forward-mode dual scalar: carries a directional derivative through the
// kernel analytically, seeded with the literal imaginary step i*1e-20 which
// is divided out at the end (complex-step differentiation without
// subtractive cancellation).
struct Dual {
  cplx v{0.0, 0.0};
  cplx d{0.0, 0.0};
};
Dual operator+(const Dual& a, const Dual& b);
Dual operator-(const Dual& a, const Dual& b);
Dual operator*(const Dual& a, const Dual& b);
Dual operator/(const Dual& a, const Dual& b);
Dual operator*(cplx c, const Dual& a);
Dual dual_const(cplx c);
Dual exp_dual(const Dual& a);
Dual theta_dual(const Dual& x, const Lattice& lat);

using PhaseFieldDual = std::function<Dual(const std::vector<Dual>&, const std::vector<Dual>&)>;
using PhaseField = std::function<cplx(const PhasePoint&)>;

// {f, g} = sum_j (df/dx_j dg/dp_j - df/dp_j dg/dx_j), derivatives by the
// analytic complex step.
cplx poisson_bracket(const PhaseFieldDual& f, const PhaseFieldDual& g, const PhasePoint& pt);

// Black-box bracket via central differences (step h); for fields where no
// analytic path exists.
cplx poisson_bracket_fd(const PhaseField& f, const PhaseField& g, const PhasePoint& pt,
                        double h = 1e-6);

// D_n^cl packaged for the dual bracket.
PhaseFieldDual d_classical_field(int n, const ModelParams& pr);
PhaseField d_classical_plain(int n, const ModelParams& pr);

}  // namespace ellspin
