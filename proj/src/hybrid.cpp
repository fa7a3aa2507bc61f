#include "ellspin/hybrid.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace ellspin {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Deriv {
  std::vector<cplx> dx, dp;
  Mat dA;
};

Deriv rhs(const PhasePoint& pt, const Mat& A, Kind k, const ModelParams& pr) {
  const FlowField f = flow(1, pt, pr);
  const Mat Q = spin_generator(pt, k, pr);
  return {f.xdot, f.pdot, kI * (Q * A - A * Q)};
}

HybridState advanced(const HybridState& s, const Deriv& d, double h) {
  HybridState out = s;
  for (std::size_t i = 0; i < s.pt.x.size(); ++i) {
    out.pt.x[i] += h * d.dx[i];
    out.pt.p[i] += h * d.dp[i];
  }
  out.A += h * d.dA;
  out.t += h;
  return out;
}

HybridState rk4_step(const HybridState& s, double h, Kind k, const ModelParams& pr) {
  const Deriv k1 = rhs(s.pt, s.A, k, pr);
  const HybridState s2 = advanced(s, k1, 0.5 * h);
  const Deriv k2 = rhs(s2.pt, s2.A, k, pr);
  const HybridState s3 = advanced(s, k2, 0.5 * h);
  const Deriv k3 = rhs(s3.pt, s3.A, k, pr);
  const HybridState s4 = advanced(s, k3, h);
  const Deriv k4 = rhs(s4.pt, s4.A, k, pr);

  HybridState out = s;
  const std::size_t N = s.pt.x.size();
  for (std::size_t i = 0; i < N; ++i) {
    out.pt.x[i] += (h / 6.0) * (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i]);
    out.pt.p[i] += (h / 6.0) * (k1.dp[i] + 2.0 * k2.dp[i] + 2.0 * k3.dp[i] + k4.dp[i]);
  }
  out.A += (h / 6.0) * (k1.dA + 2.0 * k2.dA + 2.0 * k3.dA + k4.dA);
  out.t += h;
  return out;
}

double state_gap(const HybridState& a, const HybridState& b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.pt.x.size(); ++i) {
    g = std::max(g, std::abs(a.pt.x[i] - b.pt.x[i]));
    g = std::max(g, std::abs(a.pt.p[i] - b.pt.p[i]));
  }
  g = std::max(g, (a.A - b.A).norm() / std::max(1.0, b.A.norm()));
  return g;
}

}  // namespace

Mat spin_generator(const PhasePoint& pt, Kind k, const ModelParams& pr) {
  return order1_matrix(1, pt.x, pt.p, k, pr);
}

Trajectory evolve(const HybridState& s0, double t_end, double dt, Kind k,
                  const ModelParams& pr, int sample_every, double err_tol) {
  if (dt <= 0.0 || t_end <= s0.t) throw std::invalid_argument("evolve: need dt > 0, t_end > t0");
  if (sample_every < 1) sample_every = 1;
  Trajectory traj;
  traj.samples.push_back(s0);
  HybridState s = s0;
  while (s.t < t_end - 1e-12 * std::max(1.0, t_end)) {
    const double h = std::min(dt, t_end - s.t);
    const HybridState full = rk4_step(s, h, k, pr);
    const HybridState half = rk4_step(rk4_step(s, 0.5 * h, k, pr), 0.5 * h, k, pr);
    const double est = state_gap(full, half) / 15.0;
    traj.max_step_error = std::max(traj.max_step_error, est);
    if (est > err_tol) throw std::runtime_error("evolve: step error estimate above tolerance");
    s = full;
    ++traj.steps;
    if (traj.steps % sample_every == 0) traj.samples.push_back(s);
  }
  if (traj.samples.back().t != s.t) traj.samples.push_back(s);
  return traj;
}

Mat conjugate_by_exp(const Mat& H, const Mat& A, cplx s) {
  Eigen::ComplexEigenSolver<Mat> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("conjugate_by_exp: eigensolver failed");
  const Mat V = es.eigenvectors();
  const auto lam = es.eigenvalues();
  Mat D = Mat::Zero(H.rows(), H.cols());
  Mat Di = Mat::Zero(H.rows(), H.cols());
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    D(i, i) = std::exp(s * lam(i));
    Di(i, i) = std::exp(-s * lam(i));
  }
  const Mat Vinv = V.inverse();
  return (V * D * Vinv) * A * (V * Di * Vinv);
}

}  // namespace ellspin
