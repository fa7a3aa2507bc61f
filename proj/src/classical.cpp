#include "ellspin/classical.hpp"

#include <algorithm>
#include <cmath>

#include "ellspin/coefficients.hpp"
#include "ellspin/permutations.hpp"

namespace ellspin {

cplx gamma_subset(const std::vector<int>& I, const std::vector<cplx>& p, cplx eps) {
  cplx s = 0.0;
  for (int i : I) s += p[static_cast<std::size_t>(i - 1)];
  return std::exp(eps * s);
}

cplx d_classical(int n, const PhasePoint& pt, const ModelParams& pr) {
  if (n == 0 || std::abs(n) > pr.N) throw std::domain_error("flow index out of range");
  const double s = n > 0 ? 1.0 : -1.0;
  const cplx eta = s * pr.eta;
  cplx acc = 0.0;
  for (const auto& I : subsets_of_size(pr.N, std::abs(n))) {
    const cplx g = gamma_subset(I, pt.p, pr.eps);
    acc += coeff_A(I, pt.x, eta, pr.lat) * (n > 0 ? g : 1.0 / g);
  }
  return acc;
}

FlowField flow(int n, const PhasePoint& pt, const ModelParams& pr) {
  if (n == 0 || std::abs(n) > pr.N) throw std::domain_error("flow index out of range");
  const double s = n > 0 ? 1.0 : -1.0;
  const cplx eta = s * pr.eta;
  const int N = pr.N;
  FlowField out;
  out.xdot.assign(static_cast<std::size_t>(N), cplx(0.0, 0.0));
  out.pdot.assign(static_cast<std::size_t>(N), cplx(0.0, 0.0));
  for (const auto& I : subsets_of_size(N, std::abs(n))) {
    const cplx g = gamma_subset(I, pt.p, pr.eps);
    const cplx term = coeff_A(I, pt.x, eta, pr.lat) * (n > 0 ? g : 1.0 / g);
    for (int i : I) out.xdot[static_cast<std::size_t>(i - 1)] += s * pr.eps * term;
    for (int j = 1; j <= N; ++j) {
      out.pdot[static_cast<std::size_t>(j - 1)] -= coeff_A_dlog(I, j, pt.x, eta, pr.lat) * term;
    }
  }
  return out;
}

bool EquilibriumReport::pass(double tol) const {
  return spread < tol && jerk < tol && symmetry < tol && parity < tol;
}

EquilibriumReport equilibrium_report(const PhasePoint& pt, const ModelParams& pr) {
  const int N = pr.N;
  EquilibriumReport rep;
  rep.v.assign(static_cast<std::size_t>(N), cplx(0.0, 0.0));
  rep.spread = rep.jerk = rep.symmetry = rep.parity = 0.0;

  auto digest = [&](const FlowField& f, cplx& mean_out) {
    cplx mean = 0.0;
    for (const cplx& xd : f.xdot) mean += xd;
    mean /= static_cast<double>(N);
    for (const cplx& xd : f.xdot) rep.spread = std::max(rep.spread, std::abs(xd - mean));
    for (const cplx& pd : f.pdot) rep.jerk = std::max(rep.jerk, std::abs(pd));
    mean_out = mean;
  };

  for (int n = 1; n <= N; ++n) digest(flow(n, pt, pr), rep.v[static_cast<std::size_t>(n - 1)]);
  digest(flow(-1, pt, pr), rep.v_m1);

  // the per-flow velocity scales with the flow index; v_n / n is the symmetric invariant
  for (int n = 1; n < N; ++n) {
    const cplx lhs = rep.v[static_cast<std::size_t>(N - n - 1)] / static_cast<double>(N - n);
    const cplx rhs = rep.v[static_cast<std::size_t>(n - 1)] / static_cast<double>(n);
    rep.symmetry = std::max(rep.symmetry, std::abs(lhs - rhs));
  }

  ModelParams flipped(pr);
  flipped.eta = -pr.eta;
  PhasePoint mirrored{pt.x, pt.p};
  for (cplx& pj : mirrored.p) pj = -pj;
  for (int n = 1; n <= N; ++n) {
    const FlowField f2 = flow(n, mirrored, flipped);
    cplx mean = 0.0;
    for (const cplx& xd : f2.xdot) mean += xd;
    mean /= static_cast<double>(N);
    rep.parity = std::max(rep.parity, std::abs(mean - rep.v[static_cast<std::size_t>(n - 1)]));
  }

  const double scale = std::max(std::abs(rep.v[0]), 1e-300);
  rep.spread /= scale;
  rep.jerk /= scale;
  rep.symmetry /= scale;
  rep.parity /= scale;
  return rep;
}

Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
Dual operator/(const Dual& a, const Dual& b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
Dual operator*(cplx c, const Dual& a) { return {c * a.v, c * a.d}; }
Dual dual_const(cplx c) { return {c, cplx(0.0, 0.0)}; }
Dual exp_dual(const Dual& a) {
  const cplx e = std::exp(a.v);
  return {e, a.d * e};
}
Dual theta_dual(const Dual& x, const Lattice& lat) {
  const ThetaValue t = theta(x.v, lat);
  return {t.value, x.d * t.deriv};
}

cplx poisson_bracket(const PhaseFieldDual& f, const PhaseFieldDual& g, const PhasePoint& pt) {
  const std::size_t N = pt.x.size();
  const cplx step = I_UNIT * 1e-20;
  std::vector<Dual> xs(N), ps(N);
  for (std::size_t k = 0; k < N; ++k) {
    xs[k] = dual_const(pt.x[k]);
    ps[k] = dual_const(pt.p[k]);
  }
  cplx acc = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    xs[j].d = step;
    const cplx f_x = f(xs, ps).d / step;
    const cplx g_x = g(xs, ps).d / step;
    xs[j].d = 0.0;
    ps[j].d = step;
    const cplx f_p = f(xs, ps).d / step;
    const cplx g_p = g(xs, ps).d / step;
    ps[j].d = 0.0;
    acc += f_x * g_p - f_p * g_x;
  }
  return acc;
}

cplx poisson_bracket_fd(const PhaseField& f, const PhaseField& g, const PhasePoint& pt,
                        double h) {
  const std::size_t N = pt.x.size();
  auto dx = [&](const PhaseField& fn, std::size_t j) {
    PhasePoint a(pt), b(pt);
    a.x[j] += h;
    b.x[j] -= h;
    return (fn(a) - fn(b)) / (2.0 * h);
  };
  auto dp = [&](const PhaseField& fn, std::size_t j) {
    PhasePoint a(pt), b(pt);
    a.p[j] += h;
    b.p[j] -= h;
    return (fn(a) - fn(b)) / (2.0 * h);
  };
  cplx acc = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    acc += dx(f, j) * dp(g, j) - dp(f, j) * dx(g, j);
  }
  return acc;
}

PhaseFieldDual d_classical_field(int n, const ModelParams& pr) {
  const auto subsets = subsets_of_size(pr.N, std::abs(n));
  const double s = n > 0 ? 1.0 : -1.0;
  const cplx eta = s * pr.eta;
  const cplx eps = pr.eps;
  const Lattice lat = pr.lat;
  const int N = pr.N;
  return [subsets, s, eta, eps, lat, N](const std::vector<Dual>& x,
                                        const std::vector<Dual>& p) -> Dual {
    Dual acc = dual_const(0.0);
    for (const auto& I : subsets) {
      Dual A = dual_const(1.0);
      std::vector<bool> in(static_cast<std::size_t>(N) + 1, false);
      for (int i : I) in[static_cast<std::size_t>(i)] = true;
      for (int i : I) {
        for (int j = 1; j <= N; ++j) {
          if (in[static_cast<std::size_t>(j)]) continue;
          const Dual d = x[static_cast<std::size_t>(i - 1)] - x[static_cast<std::size_t>(j - 1)];
          A = A * (theta_dual(d + dual_const(eta), lat) / theta_dual(d, lat));
        }
      }
      Dual ex = dual_const(0.0);
      for (int i : I) ex = ex + p[static_cast<std::size_t>(i - 1)];
      acc = acc + A * exp_dual((s * eps) * ex);
    }
    return acc;
  };
}

PhaseField d_classical_plain(int n, const ModelParams& pr) {
  return [n, pr](const PhasePoint& pt) { return d_classical(n, pt, pr); };
}

}  // namespace ellspin
