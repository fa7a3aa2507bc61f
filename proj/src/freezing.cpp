#include "ellspin/freezing.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "ellspin/coefficients.hpp"

namespace ellspin {

namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::Index op_dim(Kind k, const ModelParams& pr) {
  if (k == Kind::ScalarTrivial) return 1;
  return static_cast<Eigen::Index>(spin_dim(pr.r, pr.N));
}

// One transport word unfolded at x: per factor the deformed permutation, its
// inverse, the kernel h = P(-u) P'(u), and (when gradients are needed) the
// u-derivatives of all three.
struct Transport {
  std::vector<PwFactor> fac;
  std::vector<Mat> F, Finv;
  std::vector<Mat> h;
  std::vector<Mat> dF, dFm, dh;  // filled only with gradients
};

Transport make_transport(const std::vector<int>& word, const std::vector<cplx>& x,
                         Kind k, const ModelParams& pr, bool with_grad) {
  Transport t;
  FactorCache cache;
  p_word(word, x, k, pr, cache, &t.fac);
  for (const auto& f : t.fac) {
    const PexPair plus = cache.get(k, f.j, f.u, pr);
    const PexPair minus = cache.get(k, f.j, -f.u, pr);
    t.F.push_back(plus.P);
    t.Finv.push_back(minus.P);
    t.h.push_back(h_interaction(k, f.j, f.u, pr).h);
    if (with_grad) {
      t.dF.push_back(plus.dP);
      t.dFm.push_back(minus.dP);
      t.dh.push_back(h_interaction(k, f.j, f.u, pr).dh);
    }
  }
  return t;
}

// sum_k U_k^{-1} h_k U_k with U_k the suffix product of factors after k.
// Conjugating factors supported two or more sites away from everything the
// core has touched commute through and are dropped; exact by unitarity.
Mat transported_sum_simplified(const Transport& t, Eigen::Index dim) {
  Mat total = Mat::Zero(dim, dim);
  const int L = static_cast<int>(t.fac.size());
  for (int m = 0; m < L; ++m) {
    Mat core = t.h[static_cast<std::size_t>(m)];
    std::vector<int> touched{t.fac[static_cast<std::size_t>(m)].j};
    for (int q = m + 1; q < L; ++q) {
      const int site = t.fac[static_cast<std::size_t>(q)].j;
      bool commutes = true;
      for (int b : touched) {
        if (std::abs(site - b) < 2) {
          commutes = false;
          break;
        }
      }
      if (commutes) continue;
      core = t.Finv[static_cast<std::size_t>(q)] * core * t.F[static_cast<std::size_t>(q)];
      touched.push_back(site);
    }
    total += core;
  }
  return total;
}

Mat transported_sum_plain(const Transport& t, Eigen::Index dim) {
  Mat total = Mat::Zero(dim, dim);
  Mat U = Mat::Identity(dim, dim);
  Mat Uinv = Mat::Identity(dim, dim);
  for (int m = static_cast<int>(t.fac.size()) - 1; m >= 0; --m) {
    const auto mi = static_cast<std::size_t>(m);
    total += Uinv * t.h[mi] * U;
    U = t.F[mi] * U;
    Uinv = Uinv * t.Finv[mi];
  }
  return total;
}

int factor_sign(const PwFactor& f, int j) {
  return (f.alpha == j ? 1 : 0) - (f.beta == j ? 1 : 0);
}

struct SumWithGrad {
  Mat sum;
  std::vector<Mat> grad;  // grad[j-1] = d/dx_j of sum
};

// Plain suffix-product sweep carrying U, U^{-1} and their d/dx_j along;
// every factor depends on x only through u = x_alpha - x_beta, so each
// coordinate enters with weight +-1.
SumWithGrad transported_sum_with_grad(const Transport& t, int N, Eigen::Index dim) {
  SumWithGrad out;
  out.sum = Mat::Zero(dim, dim);
  out.grad.assign(static_cast<std::size_t>(N), Mat::Zero(dim, dim));
  Mat U = Mat::Identity(dim, dim);
  Mat Uinv = Mat::Identity(dim, dim);
  std::vector<Mat> dU(static_cast<std::size_t>(N), Mat::Zero(dim, dim));
  std::vector<Mat> dUinv(static_cast<std::size_t>(N), Mat::Zero(dim, dim));
  for (int m = static_cast<int>(t.fac.size()) - 1; m >= 0; --m) {
    const auto mi = static_cast<std::size_t>(m);
    const Mat hU = t.h[mi] * U;
    out.sum += Uinv * hU;
    for (int j = 1; j <= N; ++j) {
      const auto ji = static_cast<std::size_t>(j - 1);
      Mat g = dUinv[ji] * hU + Uinv * (t.h[mi] * dU[ji]);
      const int s = factor_sign(t.fac[mi], j);
      if (s != 0) g += static_cast<double>(s) * (Uinv * (t.dh[mi] * U));
      out.grad[ji] += g;
    }
    for (int j = 1; j <= N; ++j) {
      const auto ji = static_cast<std::size_t>(j - 1);
      const int s = factor_sign(t.fac[mi], j);
      dU[ji] = t.F[mi] * dU[ji];
      dUinv[ji] = dUinv[ji] * t.Finv[mi];
      if (s != 0) {
        dU[ji] += static_cast<double>(s) * (t.dF[mi] * U);
        dUinv[ji] -= static_cast<double>(s) * (Uinv * t.dFm[mi]);
      }
    }
    U = t.F[mi] * U;
    Uinv = Uinv * t.Finv[mi];
  }
  return out;
}

void check_flow(int n, int N) {
  if (n == 0 || std::abs(n) > N)
    throw std::invalid_argument("flow index must satisfy 0 < |n| <= N");
}

}  // namespace

Mat order1_coefficient(const std::vector<int>& I, int sign, const std::vector<cplx>& x,
                       Kind k, const ModelParams& pr, bool simplify) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  const Eigen::Index dim = op_dim(k, pr);
  const GrassPair g = grassmannian(I, pr.N);
  const std::vector<int>& word = (sign > 0) ? g.word_wI_inv : g.word_wmI_inv;
  const Transport t = make_transport(word, x, k, pr, false);
  const Mat sum =
      simplify ? transported_sum_simplified(t, dim) : transported_sum_plain(t, dim);
  const cplx eta = (sign > 0) ? pr.eta : -pr.eta;
  return (kI * pr.eps * coeff_A(I, x, eta, pr.lat)) * sum;
}

Mat order1_matrix(int n, const std::vector<cplx>& x, const std::vector<cplx>& p, Kind k,
                  const ModelParams& pr, bool simplify) {
  check_flow(n, pr.N);
  const int sign = n > 0 ? 1 : -1;
  const Eigen::Index dim = op_dim(k, pr);
  Mat M = Mat::Zero(dim, dim);
  for (const auto& I : subsets_of_size(pr.N, std::abs(n))) {
    const cplx g = gamma_subset(I, p, pr.eps);
    M += (sign > 0 ? g : 1.0 / g) * order1_coefficient(I, sign, x, k, pr, simplify);
  }
  return M;
}

Mat hamiltonian_direct(int n, const EvalContext& ctx, Kind kind, bool simplify) {
  return order1_matrix(n, ctx.data.x, ctx.data.p, kind, ctx.pr, simplify);
}

cplx v1_constant(const EvalContext& ctx) {
  const ModelParams& pr = ctx.pr;
  cplx acc = 0.0;
  for (int i = 1; i <= pr.N; ++i) {
    const std::vector<int> I{i};
    acc += pr.eps * coeff_A(I, ctx.data.x, pr.eta, pr.lat) *
           gamma_subset(I, ctx.data.p, pr.eps);
  }
  return acc / static_cast<double>(pr.N);
}

cplx vm1_constant(const EvalContext& ctx) {
  const ModelParams& pr = ctx.pr;
  cplx acc = 0.0;
  for (int i = 1; i <= pr.N; ++i) {
    const std::vector<int> I{i};
    acc += pr.eps * coeff_A(I, ctx.data.x, -pr.eta, pr.lat) /
           gamma_subset(I, ctx.data.p, pr.eps);
  }
  return acc / static_cast<double>(pr.N);
}

FrozenChain freeze(const std::string& word, const BaseParams& bp,
                   const std::vector<int>& flows, bool simplify) {
  FrozenChain ch;
  ch.kind = bp.kind;
  ch.ctx = build_eval_context(word, bp);
  const int N = bp.N;
  ch.v1 = v1_constant(ch.ctx);
  ch.vm1 = vm1_constant(ch.ctx);
  std::vector<int> full(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) full[static_cast<std::size_t>(i - 1)] = i;
  ch.gamma_full = gamma_subset(full, ch.ctx.data.p, ch.ctx.pr.eps);

  for (int n : flows) {
    if (n == 0 || std::abs(n) >= N)
      throw std::invalid_argument("freeze: flow index must satisfy 0 < |n| < N");
    if (ch.H.count(n)) continue;
    const int an = std::abs(n);
    if (2 * an <= N) {
      ch.H[n] = hamiltonian_direct(n, ch.ctx, ch.kind, simplify);
      ch.routed[n] = false;
    } else {
      // cheaper complementary flow; exact because the total x-derivative of
      // the transport vanishes, A_{I^c}(-eta) = A_I(eta) and
      // gamma_{I^c}^{-1} = gamma_I / gamma_full
      const int partner = (n > 0) ? -(N - an) : (N - an);
      const Mat Hp = hamiltonian_direct(partner, ch.ctx, ch.kind, simplify);
      ch.H[n] = (n > 0) ? Mat(ch.gamma_full * Hp) : Mat(Hp / ch.gamma_full);
      ch.routed[n] = true;
    }
  }
  return ch;
}

double two_path_coefficient_residual(const EvalContext& ctx, int n) {
  const ModelParams& pr = ctx.pr;
  check_flow(n, pr.N);
  const int an = std::abs(n);
  const cplx v = (n > 0) ? v1_constant(ctx) : vm1_constant(ctx);
  const cplx eta = (n > 0) ? pr.eta : -pr.eta;
  double worst = 0.0;
  for (const auto& I : subsets_of_size(pr.N, an)) {
    const cplx g = gamma_subset(I, ctx.data.p, pr.eps);
    const cplx assembled =
        coeff_A(I, ctx.data.x, eta, pr.lat) * ((n > 0) ? g : 1.0 / g);
    cplx closed = std::pow(v / pr.eps, an);
    for (std::size_t a = 0; a + 1 < I.size(); ++a) {
      for (std::size_t b = a + 1; b < I.size(); ++b) {
        const cplx d = ctx.data.x[static_cast<std::size_t>(I[a] - 1)] -
                       ctx.data.x[static_cast<std::size_t>(I[b] - 1)];
        const cplx th = theta(d, pr.lat).value;
        closed *= th * th /
                  (theta(d + pr.eta, pr.lat).value * theta(d - pr.eta, pr.lat).value);
      }
    }
    const double gap =
        std::abs(assembled - closed) / std::max(std::abs(assembled), std::abs(closed));
    worst = std::max(worst, gap);
  }
  return worst;
}

double translation_invariance_residual(int n, const std::vector<cplx>& x,
                                       const std::vector<cplx>& p, Kind k,
                                       const ModelParams& pr) {
  check_flow(n, pr.N);
  const int N = pr.N;
  const int sign = n > 0 ? 1 : -1;
  const Eigen::Index dim = op_dim(k, pr);
  std::vector<Mat> dM(static_cast<std::size_t>(N), Mat::Zero(dim, dim));
  for (const auto& I : subsets_of_size(N, std::abs(n))) {
    const GrassPair g = grassmannian(I, N);
    const std::vector<int>& word = (sign > 0) ? g.word_wI_inv : g.word_wmI_inv;
    const Transport t = make_transport(word, x, k, pr, true);
    const SumWithGrad sg = transported_sum_with_grad(t, N, dim);
    const cplx eta = (sign > 0) ? pr.eta : -pr.eta;
    const cplx A = coeff_A(I, x, eta, pr.lat);
    const cplx gam = gamma_subset(I, p, pr.eps);
    const cplx w = kI * pr.eps * A * ((sign > 0) ? gam : 1.0 / gam);
    for (int j = 1; j <= N; ++j) {
      const cplx dlog = coeff_A_dlog(I, j, x, eta, pr.lat);
      dM[static_cast<std::size_t>(j - 1)] +=
          w * (dlog * sg.sum + sg.grad[static_cast<std::size_t>(j - 1)]);
    }
  }
  Mat total = Mat::Zero(dim, dim);
  double scale = 0.0;
  for (int j = 0; j < N; ++j) {
    total += dM[static_cast<std::size_t>(j)];
    scale = std::max(scale, dM[static_cast<std::size_t>(j)].norm());
  }
  if (scale < 1e-300) return 0.0;
  return total.norm() / scale;
}

double freezing_bracket_residual(int n, int m, const PhasePoint& pt, Kind k,
                                 const ModelParams& pr) {
  check_flow(n, pr.N);
  check_flow(m, pr.N);
  const int N = pr.N;
  const int sign = m > 0 ? 1 : -1;
  const Eigen::Index dim = op_dim(k, pr);
  const FlowField f = flow(n, pt, pr);
  Mat bracket = Mat::Zero(dim, dim);
  double scale = 0.0;
  for (const auto& I : subsets_of_size(N, std::abs(m))) {
    const GrassPair g = grassmannian(I, N);
    const std::vector<int>& word = (sign > 0) ? g.word_wI_inv : g.word_wmI_inv;
    const Transport t = make_transport(word, pt.x, k, pr, true);
    const SumWithGrad sg = transported_sum_with_grad(t, N, dim);
    const cplx eta = (sign > 0) ? pr.eta : -pr.eta;
    const cplx A = coeff_A(I, pt.x, eta, pr.lat);
    const cplx gam = gamma_subset(I, pt.p, pr.eps);
    const cplx w = kI * pr.eps * A * ((sign > 0) ? gam : 1.0 / gam);
    for (int j = 1; j <= N; ++j) {
      const cplx dlog = coeff_A_dlog(I, j, pt.x, eta, pr.lat);
      const Mat term =
          (f.xdot[static_cast<std::size_t>(j - 1)] * w) *
          (dlog * sg.sum + sg.grad[static_cast<std::size_t>(j - 1)]);
      bracket += term;
      scale = std::max(scale, term.norm());
    }
    // d/dp_j gamma_I^{+-1} = +-eps gamma_I^{+-1} for j in I, 0 otherwise
    const cplx dpw = static_cast<double>(sign) * pr.eps * w;
    for (int j : I) {
      const Mat term = (f.pdot[static_cast<std::size_t>(j - 1)] * dpw) * sg.sum;
      bracket += term;
      scale = std::max(scale, term.norm());
    }
  }
  if (scale < 1e-300) return 0.0;
  return bracket.norm() / scale;
}

}  // namespace ellspin
