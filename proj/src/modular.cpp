#include "ellspin/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace ellspin {

namespace {

PhaseData apply_S(const PhaseData& d) {
  const int N = static_cast<int>(d.x.size());
  PhaseData o;
  o.tau = -1.0 / d.tau;
  o.eta = -d.eta / d.tau;
  o.eps = -d.eps / d.tau;
  o.a = d.a;
  for (cplx& ak : o.a) ak = -ak / d.tau;
  cplx xsum = 0.0;
  for (const cplx& xi : d.x) xsum += xi;
  o.x.resize(d.x.size());
  o.p.resize(d.p.size());
  const cplx shift_pref = 2.0 * PI * I_UNIT * d.eta / d.eps;
  for (std::size_t j = 0; j < d.x.size(); ++j) {
    o.x[j] = -d.x[j] / d.tau;
    o.p[j] = -d.tau * d.p[j] - shift_pref * (xsum - static_cast<double>(N) * d.x[j]);
  }
  return o;
}

PhaseData apply_T(const PhaseData& d, double dir) {
  PhaseData o(d);
  o.tau += dir;
  return o;
}

}  // namespace

PhaseData act(const std::string& word, const PhaseData& d) {
  PhaseData cur(d);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    switch (*it) {
      case 'S': cur = apply_S(cur); break;
      case 's': cur = apply_S(apply_S(apply_S(cur))); break;
      case 'T': cur = apply_T(cur, +1.0); break;
      case 't': cur = apply_T(cur, -1.0); break;
      default:
        throw std::domain_error(std::string("bad modular word character '") + *it + "'");
    }
  }
  return cur;
}

std::array<std::array<long long, 2>, 2> sl2_of_word(const std::string& word) {
  auto mul = [](const std::array<std::array<long long, 2>, 2>& A,
                const std::array<std::array<long long, 2>, 2>& B) {
    std::array<std::array<long long, 2>, 2> C{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        C[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
    return C;
  };
  std::array<std::array<long long, 2>, 2> M{{{1, 0}, {0, 1}}};
  for (char c : word) {
    std::array<std::array<long long, 2>, 2> G{};
    switch (c) {
      case 'S': G = {{{0, -1}, {1, 0}}}; break;
      case 's': G = {{{0, 1}, {-1, 0}}}; break;
      case 'T': G = {{{1, 1}, {0, 1}}}; break;
      case 't': G = {{{1, -1}, {0, 1}}}; break;
      default:
        throw std::domain_error(std::string("bad modular word character '") + c + "'");
    }
    M = mul(M, G);
  }
  return M;
}

double data_distance(const PhaseData& A, const PhaseData& B) {
  double m = std::abs(A.eta - B.eta);
  m = std::max(m, std::abs(A.eps - B.eps));
  m = std::max(m, std::abs(A.tau - B.tau));
  for (std::size_t j = 0; j < A.x.size(); ++j) m = std::max(m, std::abs(A.x[j] - B.x[j]));
  for (std::size_t j = 0; j < A.p.size(); ++j) m = std::max(m, std::abs(A.p[j] - B.p[j]));
  for (std::size_t j = 0; j < std::min(A.a.size(), B.a.size()); ++j) {
    m = std::max(m, std::abs(A.a[j] - B.a[j]));
  }
  return m;
}

PhaseData seed_chart(const BaseParams& bp) {
  const double Nd = static_cast<double>(bp.N);
  PhaseData d;
  d.x.resize(static_cast<std::size_t>(bp.N));
  d.p.assign(static_cast<std::size_t>(bp.N), cplx(0.0, 0.0));
  for (int i = 1; i <= bp.N; ++i) {
    d.x[static_cast<std::size_t>(i - 1)] = cplx(static_cast<double>(i) / Nd, 0.0);
  }
  d.eta = bp.eta / Nd;
  d.eps = bp.eps / Nd;
  d.tau = bp.omega / Nd;
  if (bp.kind == Kind::Face) {
    d.a = bp.a;
    for (cplx& ak : d.a) ak /= Nd;
  }
  return d;
}

EvalContext build_eval_context(const std::string& word, const BaseParams& bp) {
  EvalContext ctx;
  ctx.word = word;
  ctx.data = act(word, seed_chart(bp));
  ctx.pr.r = bp.r;
  ctx.pr.N = bp.N;
  ctx.pr.eta = ctx.data.eta;
  ctx.pr.eps = ctx.data.eps;
  ctx.pr.hbar = bp.hbar;
  ctx.pr.lat = Lattice(ctx.data.tau);
  ctx.pr.dyn_a = ctx.data.a;
  ctx.pr.validate();
  return ctx;
}

ModelParams scalar_params_of(const PhaseData& d) {
  ModelParams pr;
  pr.r = 1;
  pr.N = static_cast<int>(d.x.size());
  pr.eta = d.eta;
  pr.eps = d.eps;
  pr.lat = Lattice(d.tau);
  pr.dyn_a.clear();
  return pr;
}

double modular_covariance_residual(char gen, int n, const PhaseData& d) {
  const int N = static_cast<int>(d.x.size());
  const ModelParams pr = scalar_params_of(d);
  const PhasePoint pt{d.x, d.p};
  const cplx base = d_classical(n, pt, pr);

  PhaseData moved;
  cplx factor;
  if (gen == 'S') {
    moved = act("S", d);
    factor = std::exp(I_UNIT * PI * static_cast<double>(n) * static_cast<double>(N - n) *
                      d.eta * d.eta / d.tau);
  } else if (gen == 'T') {
    moved = act("T", d);
    factor = 1.0;
  } else {
    throw std::domain_error("modular covariance generator must be 'S' or 'T'");
  }
  const ModelParams pr2 = scalar_params_of(moved);
  const PhasePoint pt2{moved.x, moved.p};
  const cplx lhs = d_classical(n, pt2, pr2);
  const cplx rhs = factor * base;
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

}  // namespace ellspin
