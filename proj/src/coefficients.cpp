#include "ellspin/coefficients.hpp"

#include <algorithm>

namespace ellspin {

namespace {

cplx theta_checked(cplx z, const Lattice& lat) {
  const ThetaValue t = theta(z, lat);
  if (std::abs(t.value) < 1e-12 * std::max(1.0, std::abs(t.deriv))) {
    throw PoleError("coefficient hit a kernel zero in a denominator");
  }
  return t.value;
}

}  // namespace

cplx coeff_A(const std::vector<int>& I, const std::vector<cplx>& x, cplx eta,
             const Lattice& lat) {
  const int N = static_cast<int>(x.size());
  std::vector<bool> in(static_cast<std::size_t>(N) + 1, false);
  for (int i : I) in[static_cast<std::size_t>(i)] = true;
  cplx A = 1.0;
  for (int i : I) {
    for (int j = 1; j <= N; ++j) {
      if (in[static_cast<std::size_t>(j)]) continue;
      const cplx d = x[static_cast<std::size_t>(i - 1)] - x[static_cast<std::size_t>(j - 1)];
      A *= theta(d + eta, lat).value / theta_checked(d, lat);
    }
  }
  return A;
}

cplx coeff_A_dlog(const std::vector<int>& I, int j, const std::vector<cplx>& x, cplx eta,
                  const Lattice& lat) {
  const int N = static_cast<int>(x.size());
  std::vector<bool> in(static_cast<std::size_t>(N) + 1, false);
  for (int i : I) in[static_cast<std::size_t>(i)] = true;
  cplx s = 0.0;
  if (in[static_cast<std::size_t>(j)]) {
    for (int k = 1; k <= N; ++k) {
      if (in[static_cast<std::size_t>(k)]) continue;
      const cplx d = x[static_cast<std::size_t>(j - 1)] - x[static_cast<std::size_t>(k - 1)];
      s += theta_logd(d + eta, lat) - theta_logd(d, lat);
    }
  } else {
    for (int i : I) {
      const cplx d = x[static_cast<std::size_t>(i - 1)] - x[static_cast<std::size_t>(j - 1)];
      s += theta_logd(d, lat) - theta_logd(d + eta, lat);
    }
  }
  return s;
}

}  // namespace ellspin
