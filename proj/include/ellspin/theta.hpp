#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ellspin {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;
inline constexpr cplx I_UNIT{0.0, 1.0};

// Evaluation landed on (or indistinguishably close to) a kernel zero that
// sits in a denominator.  Carries the offending argument in what().
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Modulus of the period lattice Z + tau Z with nome p = exp(i pi tau).
// Im tau >= 0.1 is enforced at construction: below that the series tail
// bound degrades past the point where the truncation rule is honest.
class Lattice {
public:
  explicit Lattice(cplx tau);
  cplx tau() const { return tau_; }
  cplx nome() const { return p_; }

private:
  cplx tau_;
  cplx p_;
};

struct ThetaValue {
  cplx value;
  cplx deriv;   // d/dx
  cplx deriv2;  // d^2/dx^2
};

// Odd Jacobi theta, normalised so that theta'(0) = 1.  Entire in x with
// simple zeros exactly on the lattice, and
//   theta(-x)     = -theta(x)
//   theta(x + 1)  = -theta(x)
//   theta(x + tau)= -p^{-1} e^{-2 i pi x} theta(x),  p = exp(i pi tau)
// Series truncation: terms are added until the a-priori bound on the next
// term drops below 1e-18 times the running magnitude of the partial sums.
ThetaValue theta(cplx x, const Lattice& lat);

// theta'(x)/theta(x); throws PoleError when x is numerically on the lattice.
cplx theta_logd(cplx x, const Lattice& lat);

struct PhiValue {
  cplx value;
  cplx d_u;   // partial derivative in the first argument
  cplx d2_u;  // second partial derivative in the first argument
};

// Ratio kernel phi(u, v) = theta(u + v) / (theta(u) theta(v)).
// Throws PoleError when u or v is numerically on the lattice.
PhiValue kronecker_phi(cplx u, cplx v, const Lattice& lat);

// Distance of x from the nearest lattice point, measured in the (a, b)
// coordinates of x = a + b tau.  Used by samplers to stay clear of zeros.
double lattice_distance(cplx x, const Lattice& lat);

}  // namespace ellspin
