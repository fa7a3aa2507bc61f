// Acceptance gate for the library: one line per criterion, pinned tolerances,
// exit 1 if any blocking criterion fails.  The last criterion is informative
// and never gates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "ellspin/hybrid.hpp"
#include "oracles.hpp"

namespace {

using namespace ellspin;
using testing::base_params;
using testing::phase_point;
using testing::rel_gap;

struct Criterion {
  double worst = 0.0;  // max residual / tolerance over all sub-checks
  bool ok = true;

  void check(double residual, double tol) {
    if (!(residual <= tol)) ok = false;
    worst = std::max(worst, residual / tol);
  }
  void require(bool cond) {
    if (!cond) {
      ok = false;
      worst = std::max(worst, 1.0);
    }
  }
};

bool run(int idx, const char* label, const std::function<Criterion()>& fn) {
  try {
    const Criterion c = fn();
    std::printf("%s criterion %2d: %s (worst %.2e of tolerance)\n",
                c.ok ? "PASS" : "FAIL", idx, label, c.worst);
    return c.ok;
  } catch (const std::exception& e) {
    std::printf("FAIL criterion %2d: %s (exception: %s)\n", idx, label, e.what());
    return false;
  }
}

double rel_abs(cplx got, cplx want) {
  return std::abs(got - want) / std::max({std::abs(got), std::abs(want), 1e-300});
}

// 1. Kernel identities: oddness, normalisation, both quasi-periods, the
// four-point addition formula, both modular transformations, quasi-periods of
// the weighted kernel, and the wide-lattice trigonometric limit.
Criterion kernel_identities() {
  Criterion c;
  const double tol = 1e-10;
  Sampler smp(11);
  for (const cplx tau : {cplx(0.13, 0.71), cplx(-0.32, 1.10)}) {
    const Lattice lat(tau);
    const Lattice lat_s(-1.0 / tau);
    const Lattice lat_t(tau + 1.0);
    const cplx p = lat.nome();
    c.check(std::abs(theta(cplx(0.0, 0.0), lat).value), tol);
    c.check(std::abs(theta(cplx(0.0, 0.0), lat).deriv - 1.0), tol);
    ModelParams prm;
    prm.lat = lat;
    for (int k = 0; k < 50; ++k) {
      const cplx x = smp.cell_point(prm);
      const cplx tv = theta(x, lat).value;
      c.check(rel_abs(theta(-x, lat).value, -tv), tol);
      c.check(rel_abs(theta(x + 1.0, lat).value, -tv), tol);
      c.check(rel_abs(theta(x + tau, lat).value,
                      -std::exp(-2.0 * PI * I_UNIT * x) / p * tv),
              tol);

      const cplx y = smp.cell_point(prm);
      const cplx z = smp.cell_point(prm);
      const cplx w = smp.cell_point(prm);
      auto th = [&](cplx arg) { return theta(arg, lat).value; };
      const cplx lhs = th(x + y) * th(x - y) * th(z + w) * th(z - w);
      const cplx rhs = th(x + z) * th(x - z) * th(y + w) * th(y - w) +
                       th(x + w) * th(x - w) * th(z + y) * th(z - y);
      c.check(std::abs(lhs - rhs) / std::max(std::abs(lhs), 1.0), tol);

      c.check(rel_abs(theta(-x / tau, lat_s).value,
                      -std::exp(I_UNIT * PI * x * x / tau) / tau * tv),
              tol);
      c.check(rel_abs(theta(x, lat_t).value, tv), tol);

      const cplx u = smp.cell_point(prm);
      const cplx v = smp.cell_point(prm);
      const cplx ph = kronecker_phi(u, v, lat).value;
      c.check(rel_abs(kronecker_phi(u + 1.0, v, lat).value, ph), tol);
      c.check(rel_abs(kronecker_phi(u + tau, v, lat).value,
                      std::exp(-2.0 * PI * I_UNIT * v) * ph),
              tol);
    }
  }
  const Lattice wide(cplx(0.0, 5.0));
  c.check(std::abs(theta(cplx(0.3, 0.0), wide).value - std::sin(0.3 * PI) / PI), 1e-6);
  return c;
}

// 2. Local building blocks, both kinds at r = 2: unitarity, the braid
// relation, commutation of well-separated factors, the small-coupling initial
// condition, and the exact weight-conservation pattern of the vertex kind.
Criterion local_blocks() {
  Criterion c;
  const double tol = 1e-10;
  ModelParams pr;
  pr.r = 2;
  pr.N = 4;
  pr.eta = cplx(0.23, 0.05);
  pr.lat = Lattice(cplx(0.13, 0.71));
  pr.dyn_a = {cplx(0.11, 0.21), cplx(0.52, -0.09)};
  pr.validate();
  ModelParams pr_small(pr);
  pr_small.eta = cplx(1e-5, 0.0);
  Sampler smp(23);
  for (const Kind k : {Kind::Vertex, Kind::Face}) {
    for (int pt = 0; pt < 20; ++pt) {
      const cplx u = smp.cell_point(pr);
      const cplx v = smp.cell_point(pr);
      const int i = smp.integer(1, 3);
      const int ib = smp.integer(1, 2);
      c.check(unitarity_residual(k, i, u, pr), tol);
      c.check(ybe_residual(k, ib, u, v, pr), tol);
      c.check(distance_commutativity_residual(k, 1, 3, u, v, pr), tol);
      // the gap to the plain flip is linear in eta with a 1/dist(u) slope,
      // so the small-coupling probe keeps a wider pole margin
      c.check(initial_condition_residual(k, i, smp.cell_point(pr, 0.15), pr_small), 1e-4);
      if (k == Kind::Vertex) c.require(vertex_ice_rule_exact(u, pr));
    }
  }
  return c;
}

// 3. Cocycle property of the spin words: independence of the chosen reduced
// word over the whole group at N = 4, exact inversion from the recorded
// factors, and degeneration to plain flips as the coupling is switched off.
Criterion spin_words() {
  Criterion c;
  const double tol = 1e-10;
  const int N = 4;
  const std::size_t dim = spin_dim(2, N);
  Mat flip = Mat::Zero(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) flip(b * 2 + a, a * 2 + b) = 1.0;
  }
  const Mat id = Mat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const Kind k : {Kind::Vertex, Kind::Face}) {
    ModelParams pr;
    pr.r = 2;
    pr.N = N;
    pr.eta = cplx(0.23 / N, 0.0);
    pr.lat = Lattice(cplx(0.10, 0.83));
    pr.dyn_a = {cplx(0.0, 0.0), cplx(0.13, 0.10)};
    pr.validate();
    Sampler smp(31 + (k == Kind::Face ? 1 : 0));
    const std::vector<cplx> x = smp.positions(N, pr, {});
    ModelParams tiny(pr);
    tiny.eta = cplx(2e-12, 0.0);
    FactorCache cache;
    FactorCache tiny_cache;
    std::vector<int> line{1, 2, 3, 4};
    do {
      const Permutation w(line);
      const std::vector<int> cw = canonical_word(w);
      const Mat m_canon = p_word(cw, x, k, pr, cache, nullptr);
      const Mat m_alt = p_word(alternative_word(w), x, k, pr, cache, nullptr);
      c.check(rel_gap(m_canon, m_alt), tol);

      std::vector<PwFactor> fac;
      const Mat m = p_word(cw, x, k, pr, cache, &fac);
      const Mat m_inv = p_factors_inverse(fac, k, pr, cache);
      c.check((m * m_inv - id).norm() / id.norm(), tol);

      Mat plain = id;
      for (const int j : cw) plain = plain * embed_pair(flip, j, 2, N);
      c.check(rel_gap(p_word(cw, x, k, tiny, tiny_cache, nullptr), plain), tol);
    } while (std::next_permutation(line.begin(), line.end()));
  }
  return c;
}

// 4. Commutativity of the scalar difference operators on probe functions,
// every signed pair of flows at N = 3 and N = 4.
Criterion scalar_commutativity() {
  Criterion c;
  for (const int N : {3, 4}) {
    const EvalContext ctx = build_eval_context("", base_params(N, 2, Kind::Vertex));
    const ModelParams& pr = ctx.pr;
    const cplx step = I_UNIT * pr.hbar * pr.eps;
    Sampler smp(static_cast<std::uint64_t>(41 + N));
    const std::vector<cplx> x =
        smp.positions(N, pr, {step, -step, 2.0 * step, -2.0 * step});
    std::vector<int> flows;
    for (int n = 1; n <= N; ++n) {
      flows.push_back(n);
      flows.push_back(-n);
    }
    std::vector<DiffOperator> ops;
    ops.reserve(flows.size());
    for (const int n : flows) ops.push_back(build_scalar_D(n, pr));
    const Probe f = random_probe(static_cast<std::uint64_t>(4100 + N), 1, N);
    for (std::size_t a = 0; a < ops.size(); ++a) {
      for (std::size_t b = a + 1; b < ops.size(); ++b) {
        c.check(commutator_residual_on_probe(ops[a], ops[b], f, x), 1e-9);
      }
    }
  }
  return c;
}

// 5. Commutativity of the spin difference operators for both kinds at
// N = 3, r = 2, on matrix-valued probes.
Criterion spin_commutativity() {
  Criterion c;
  const int N = 3;
  const std::vector<std::pair<int, int>> pairs{{1, -1}, {1, 2}, {-1, 2}};
  for (const Kind k : {Kind::Vertex, Kind::Face}) {
    const EvalContext ctx = build_eval_context("", base_params(N, 2, k));
    const ModelParams& pr = ctx.pr;
    const cplx step = I_UNIT * pr.hbar * pr.eps;
    Sampler smp(53 + (k == Kind::Face ? 1 : 0));
    const std::vector<cplx> x =
        smp.positions(N, pr, {step, -step, 2.0 * step, -2.0 * step});
    const Probe f = random_probe(5300, static_cast<int>(spin_dim(2, N)), N);
    for (const auto& [n, m] : pairs) {
      const DiffOperator a = build_spin_D(n, k, pr);
      const DiffOperator b = build_spin_D(m, k, pr);
      c.check(commutator_residual_on_probe(a, b, f, x), 1e-9);
    }
  }
  return c;
}

// 6. Classical equilibria: the seed chart and its reflected image are
// stationary with flow-proportional velocities for N = 3, 4, 5; a perturbed
// point is not; and on a wide lattice the first velocity matches the
// trigonometric closed form.
Criterion classical_equilibria() {
  Criterion c;
  const double tol = 1e-10;
  for (const int N : {3, 4, 5}) {
    for (const std::string word : {"", "S"}) {
      const EvalContext ctx = build_eval_context(word, base_params(N, 2, Kind::Vertex));
      const EquilibriumReport rep = equilibrium_report(phase_point(ctx.data), ctx.pr);
      c.check(rep.spread, tol);
      c.check(rep.jerk, tol);
      c.check(rep.symmetry, tol);
      c.check(rep.parity, tol);
      c.require(rep.pass(tol));
    }
  }
  {
    EvalContext ctx = build_eval_context("", base_params(4, 2, Kind::Vertex));
    PhasePoint pt = phase_point(ctx.data);
    pt.x[0] += cplx(0.05, 0.02);
    const EquilibriumReport rep = equilibrium_report(pt, ctx.pr);
    c.require(std::max(rep.spread, rep.jerk) > 1e-3);
  }
  for (const int N : {3, 4, 5}) {
    BaseParams bp = base_params(N, 2, Kind::Vertex);
    bp.omega = cplx(0.0, 8.0 * N);
    const EvalContext ctx = build_eval_context("", bp);
    const double eta_c = 0.23 / N;
    const double eps_c = 0.31 / N;
    const cplx want = eps_c * std::sin(N * PI * eta_c) / std::sin(PI * eta_c) /
                      static_cast<double>(N);
    c.check(rel_abs(v1_constant(ctx), want), 1e-6);
  }
  return c;
}

// 7. Modular structure: invariance under the shift generator, covariance with
// the quadratic factor under the reflection generator at generic phase data,
// and the two defining group relations on the data action.
Criterion modular_structure() {
  Criterion c;
  const int N = 3;
  PhaseData d;
  d.tau = cplx(0.13, 0.71);
  d.eta = cplx(0.077, 0.012);
  d.eps = cplx(0.103, 0.0);
  d.a = {cplx(0.0, 0.0), cplx(0.14, 0.09)};
  ModelParams prm;
  prm.eta = d.eta;
  prm.lat = Lattice(d.tau);
  Sampler smp(71);
  d.x = smp.positions(N, prm, {});
  for (int j = 0; j < N; ++j) d.p.push_back(smp.box(-0.5, 0.5, -0.3, 0.3));
  for (int n = 1; n <= N; ++n) {
    c.check(modular_covariance_residual('T', n, d), 1e-10);
    c.check(modular_covariance_residual('S', n, d), 1e-10);
  }
  c.check(data_distance(act("SSSS", d), d), 1e-12);
  c.check(data_distance(act("STSTSTSTSTST", d), d), 1e-12);
  return c;
}

// 8. Frozen chains for N = 4, 5, r = 2, both kinds, charts 1, S, TS: the
// hamiltonians commute pairwise; the assembled matrices match an independent
// finite-difference extraction of the first quantum correction; coefficients
// agree with their two-path closed form; the second hamiltonian matches a
// regrouped assembly; and generic-point matrices are translation invariant.
Criterion frozen_chains() {
  Criterion c;
  for (const int N : {4, 5}) {
    const std::vector<int> flows =
        (N == 4) ? std::vector<int>{1, -1, 2, -2, 3} : std::vector<int>{1, -1, 2, 3};
    for (const Kind k : {Kind::Vertex, Kind::Face}) {
      for (const std::string word : {"", "S", "TS"}) {
        const FrozenChain ch = freeze(word, base_params(N, 2, k), flows);
        for (std::size_t a = 0; a < flows.size(); ++a) {
          for (std::size_t b = a + 1; b < flows.size(); ++b) {
            const Mat& A = ch.H.at(flows[a]);
            const Mat& B = ch.H.at(flows[b]);
            c.check(comm_norm(A, B) / std::max(A.norm() * B.norm(), 1e-300), 1e-9);
          }
        }
      }
    }
  }
  for (const Kind k : {Kind::Vertex, Kind::Face}) {
    for (const std::string word : {"", "S"}) {
      const EvalContext ctx = build_eval_context(word, base_params(4, 2, k));
      Sampler smp(83 + (k == Kind::Face ? 1 : 0));
      const std::vector<cplx> x = smp.positions(4, ctx.pr, {});
      std::vector<cplx> p;
      for (int j = 0; j < 4; ++j) p.push_back(smp.box(-0.4, 0.4, -0.3, 0.3));
      for (const int n : {1, -1, 2}) {
        c.check(rel_gap(order1_matrix(n, x, p, k, ctx.pr),
                        testing::order1_matrix_fd(n, x, p, k, ctx.pr)),
                1e-8);
      }
    }
  }
  {
    const EvalContext ctx = build_eval_context("", base_params(5, 2, Kind::Vertex));
    Sampler smp(89);
    const std::vector<cplx> x = smp.positions(5, ctx.pr, {});
    std::vector<cplx> p;
    for (int j = 0; j < 5; ++j) p.push_back(smp.box(-0.4, 0.4, -0.3, 0.3));
    c.check(rel_gap(order1_matrix(2, x, p, Kind::Vertex, ctx.pr),
                    testing::order1_matrix_fd(2, x, p, Kind::Vertex, ctx.pr)),
            1e-8);
  }
  for (const int N : {4, 5}) {
    for (const std::string word : {"", "S", "TS"}) {
      const EvalContext ctx = build_eval_context(word, base_params(N, 2, Kind::Vertex));
      for (const int n : {1, 2, 3, -1, -2}) {
        c.check(two_path_coefficient_residual(ctx, n), 1e-10);
      }
    }
  }
  for (const int N : {4, 5}) {
    for (const Kind k : {Kind::Vertex, Kind::Face}) {
      for (const std::string word : {"", "S"}) {
        if (N == 5 && !word.empty()) continue;
        const EvalContext ctx = build_eval_context(word, base_params(N, 2, k));
        c.check(rel_gap(hamiltonian_direct(2, ctx, k), testing::h2_regrouped(ctx, k)),
                1e-10);
      }
    }
  }
  for (const Kind k : {Kind::Vertex, Kind::Face}) {
    const EvalContext ctx = build_eval_context("", base_params(4, 2, k));
    Sampler smp(97 + (k == Kind::Face ? 1 : 0));
    const std::vector<cplx> x = smp.positions(4, ctx.pr, {});
    std::vector<cplx> p;
    for (int j = 0; j < 4; ++j) p.push_back(smp.box(-0.4, 0.4, -0.3, 0.3));
    for (const int n : {1, -1, 2}) {
      c.check(translation_invariance_residual(n, x, p, k, ctx.pr), 1e-9);
    }
  }
  return c;
}

// 9. Decoupling at equilibrium: the bracket of any scalar flow with any
// assembled matrix vanishes at the stationary point (both charts, both
// kinds) and is order one away from it.
Criterion bracket_decoupling() {
  Criterion c;
  const double tol = 1e-9;
  const std::vector<std::pair<int, int>> pairs{{1, 2}, {2, 1}, {1, -1}};
  for (const std::string word : {"", "S"}) {
    const EvalContext ctx = build_eval_context(word, base_params(3, 2, Kind::Vertex));
    const PhasePoint star = phase_point(ctx.data);
    for (const auto& [n, m] : pairs) {
      c.check(freezing_bracket_residual(n, m, star, Kind::Vertex, ctx.pr), tol);
    }
  }
  {
    const EvalContext ctx = build_eval_context("", base_params(3, 2, Kind::Face));
    c.check(freezing_bracket_residual(1, 2, phase_point(ctx.data), Kind::Face, ctx.pr),
            tol);
  }
  {
    const EvalContext ctx = build_eval_context("", base_params(3, 2, Kind::Vertex));
    PhasePoint off = phase_point(ctx.data);
    off.x[1] += cplx(0.07, 0.03);
    c.require(freezing_bracket_residual(1, 2, off, Kind::Vertex, ctx.pr) > 1e-3);
  }
  return c;
}

// 10. Hybrid co-integration started at an equilibrium: relative coordinates
// and momenta stay fixed, the spin observable follows the closed-form
// conjugation by the first hamiltonian, every scalar flow value is conserved
// along the run, and halving the step improves the endpoint error by a
// fourth-order factor.
Criterion hybrid_evolution() {
  Criterion c;
  const EvalContext ctx = build_eval_context("", base_params(3, 2, Kind::Vertex));
  const ModelParams& pr = ctx.pr;
  const PhasePoint pt0 = phase_point(ctx.data);
  const auto dim = static_cast<Eigen::Index>(spin_dim(2, 3));
  Sampler smp(101);
  Mat a0(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a0(i, j) = smp.box(-1.0, 1.0, -1.0, 1.0);
  }
  const Mat h1 = spin_generator(pt0, Kind::Vertex, pr);

  const Trajectory traj = evolve({pt0, a0, 0.0}, 1.0, 0.01, Kind::Vertex, pr, 10);
  const HybridState& fin = traj.samples.back();
  c.require(std::abs(fin.t - 1.0) < 1e-12);

  std::vector<cplx> d0;
  for (const int m : {1, 2, 3, -1}) d0.push_back(d_classical(m, pt0, pr));
  double rel_drift = 0.0;
  double p_drift = 0.0;
  double d_drift = 0.0;
  for (const HybridState& s : traj.samples) {
    for (int i = 1; i < 3; ++i) {
      const cplx now = s.pt.x[static_cast<std::size_t>(i)] - s.pt.x[0];
      const cplx was = pt0.x[static_cast<std::size_t>(i)] - pt0.x[0];
      rel_drift = std::max(rel_drift, std::abs(now - was));
    }
    for (int i = 0; i < 3; ++i) {
      p_drift = std::max(p_drift, std::abs(s.pt.p[static_cast<std::size_t>(i)] -
                                           pt0.p[static_cast<std::size_t>(i)]));
    }
    int mi = 0;
    for (const int m : {1, 2, 3, -1}) {
      d_drift = std::max(d_drift, rel_abs(d_classical(m, s.pt, pr), d0[static_cast<std::size_t>(mi++)]));
    }
  }
  c.check(rel_drift, 1e-8);
  c.check(p_drift, 1e-8);
  c.check(d_drift, 1e-8);
  c.check(rel_gap(fin.A, conjugate_by_exp(h1, a0, I_UNIT * 1.0)), 1e-6);

  auto endpoint = [&](double dt) {
    return evolve({pt0, a0, 0.0}, 0.4, dt, Kind::Vertex, pr, 1 << 20, 1e-3).samples.back().A;
  };
  const Mat ref = endpoint(0.4 / 64.0);
  const double e1 = (endpoint(0.10) - ref).norm();
  const double e2 = (endpoint(0.05) - ref).norm();
  c.require(e2 > 1e-12);
  const double ratio = e1 / e2;
  c.require(ratio >= 12.0 && ratio <= 20.0);
  return c;
}

// 11. Informative only: how far the difference between the plain-chart and
// reflected-chart vertex hamiltonians is from a multiple of the identity, and
// how real the spectrum of the symmetrised pair is in the face regime with
// real couplings on a rectangular lattice.
void informative_checks() {
  double off_id = 0.0;
  double fit_gap = 0.0;
  try {
    const BaseParams bp = base_params(3, 2, Kind::Vertex);
    const FrozenChain plain = freeze("", bp, {1, -1});
    const FrozenChain refl = freeze("S", bp, {1, -1});
    const auto dim = static_cast<Eigen::Index>(spin_dim(2, 3));
    const Mat id = Mat::Identity(dim, dim);
    for (const int n : {1, -1}) {
      const Mat delta = plain.H.at(n) - refl.H.at(n);
      const Mat off = delta - (delta.trace() / static_cast<double>(dim)) * id;
      off_id = std::max(off_id,
                        off.norm() / std::max(plain.H.at(n).norm(), refl.H.at(n).norm()));
      const Mat ta = plain.H.at(n) - (plain.H.at(n).trace() / static_cast<double>(dim)) * id;
      const Mat tb = refl.H.at(n) - (refl.H.at(n).trace() / static_cast<double>(dim)) * id;
      const cplx scale = (tb.adjoint() * ta).trace() / std::max(tb.squaredNorm(), 1e-300);
      fit_gap = std::max(fit_gap, (ta - scale * tb).norm() / std::max(ta.norm(), 1e-300));
    }
  } catch (const std::exception& e) {
    std::printf("INFO criterion 11: identity-shift probe failed (%s)\n", e.what());
    return;
  }
  // the assembled coefficients carry an explicit factor i, so a real spectrum
  // of -iH shows up as eigenvalues of H1 + H_-1 on the imaginary axis
  const auto reality = [](const FrozenChain& ch) {
    const Mat w = ch.H.at(1) + ch.H.at(-1);
    const CVec ev = eigendecompose(w).values;
    double max_re = 0.0;
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      max_re = std::max(max_re, std::abs(ev(i).real()));
      max_abs = std::max(max_abs, std::abs(ev(i)));
    }
    return max_re / std::max(max_abs, 1e-300);
  };
  double vertex_frac = 1.0;
  double face_frac = 1.0;
  try {
    vertex_frac = reality(freeze("S", base_params(3, 2, Kind::Vertex), {1, -1}));
    BaseParams bp = base_params(3, 2, Kind::Face);
    bp.a = {cplx(0.0, 0.0), cplx(0.37, 0.0)};
    face_frac = reality(freeze("S", bp, {1, -1}));
  } catch (const std::exception& e) {
    std::printf("INFO criterion 11: spectrum probe failed (%s)\n", e.what());
    return;
  }
  std::printf(
      "INFO criterion 11: chart-shift off-identity %.2e, traceless fit gap %.2e; "
      "spectral real part of H1+H_-1, max|Re|/max|lambda|: vertex reflected chart %.1e, "
      "face surrogate %.1e (informative, non-blocking)\n",
      off_id, fit_gap, vertex_frac, face_frac);
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "kernel identities and limits", kernel_identities);
  ok &= run(2, "local exchange blocks, both kinds", local_blocks);
  ok &= run(3, "reduced-word cocycle and degeneration", spin_words);
  ok &= run(4, "scalar flow commutativity, all pairs", scalar_commutativity);
  ok &= run(5, "spin flow commutativity, both kinds", spin_commutativity);
  ok &= run(6, "classical equilibria and trigonometric velocity", classical_equilibria);
  ok &= run(7, "modular invariance and covariance", modular_structure);
  ok &= run(8, "frozen chain family, all charts", frozen_chains);
  ok &= run(9, "equilibrium bracket decoupling", bracket_decoupling);
  ok &= run(10, "hybrid co-integration at equilibrium", hybrid_evolution);
  informative_checks();
  std::printf("acceptance: %s\n", ok ? "all blocking criteria passed" : "BLOCKING FAILURES");
  return ok ? 0 : 1;
}
