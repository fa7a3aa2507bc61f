#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ellspin/diffops.hpp"
#include "ellspin/freezing.hpp"
#include "ellspin/hybrid.hpp"
#include "ellspin/report.hpp"
#include "ellspin/sampling.hpp"

using namespace ellspin;

namespace {

// exit codes: 0 every residual passed, 1 residual breach, 2 usage, 3 pole or
// numerical degeneracy
constexpr int kPass = 0;
constexpr int kBreach = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

cplx parse_cplx(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {std::stod(s), 0.0};
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

// "1" (or empty) is the identity; otherwise letters from {S, T, s, t}.
std::string parse_word(const std::string& w) {
  if (w.empty() || w == "1") return "";
  for (char c : w) {
    if (c != 'S' && c != 'T' && c != 's' && c != 't')
      throw CLI::ValidationError("--word", "letters must be from {S, T, s, t} (or 1)");
  }
  return w;
}

// Weight vector from a flat list: r entries taken as real, 2r as (re, im)
// pairs; empty means the documented face default for this r.
std::vector<cplx> parse_weights(const std::string& s, int r) {
  if (s.empty()) {
    std::vector<cplx> a(static_cast<std::size_t>(r), cplx(0.0, 0.0));
    if (r >= 2) a[1] = cplx(0.40, 0.30);
    for (int c = 2; c < r; ++c) a[static_cast<std::size_t>(c)] = 0.1 * c;
    return a;
  }
  const std::vector<double> flat = parse_doubles(s);
  std::vector<cplx> a;
  if (static_cast<int>(flat.size()) == r) {
    for (double v : flat) a.emplace_back(v, 0.0);
  } else if (static_cast<int>(flat.size()) == 2 * r) {
    for (std::size_t i = 0; i + 1 < flat.size(); i += 2) a.emplace_back(flat[i], flat[i + 1]);
  } else {
    throw CLI::ValidationError("--a", "need r real entries or 2r (re, im) entries");
  }
  return a;
}

void emit_report(const Report& rep, const std::string& out, const std::string& format) {
  if (out.empty()) {
    std::cout << rep.to_json().dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    write_report_csv(rep, out);
  } else {
    write_report_json(rep, out);
  }
}

int finish(const Report& rep, const std::string& out, const std::string& format) {
  emit_report(rep, out, format);
  int failed = 0;
  for (const auto& e : rep.residuals)
    if (!e.pass) ++failed;
  if (failed > 0)
    std::cerr << failed << " residual(s) above tolerance; see report" << '\n';
  return rep.all_pass() ? kPass : kBreach;
}

json base_params_json(const BaseParams& bp, const std::string& word) {
  json j;
  j["kind"] = kind_to_string(bp.kind);
  j["N"] = bp.N;
  j["r"] = bp.r;
  j["eta"] = complex_json(bp.eta);
  j["eps"] = complex_json(bp.eps);
  j["omega"] = complex_json(bp.omega);
  j["hbar"] = complex_json(bp.hbar);
  j["a"] = complex_list_json(bp.a);
  j["word"] = word.empty() ? "1" : word;
  return j;
}

BaseParams base_params_from_json(const json& j) {
  BaseParams bp;
  bp.kind = kind_from_string(j.at("kind").get<std::string>());
  bp.N = j.at("N").get<int>();
  bp.r = j.at("r").get<int>();
  bp.eta = complex_from_json(j.at("eta"));
  bp.eps = complex_from_json(j.at("eps"));
  bp.omega = complex_from_json(j.at("omega"));
  bp.hbar = complex_from_json(j.at("hbar"));
  bp.a.clear();
  for (const auto& e : j.at("a")) bp.a.push_back(complex_from_json(e));
  return bp;
}

// ---------------------------------------------------------------- theta-check

int run_theta_check(std::uint64_t seed, double tol, const std::string& out,
                    const std::string& format) {
  Sampler smp(seed);
  const cplx tau = smp.box(-0.4, 0.4, 0.7, 1.5);
  const Lattice lat(tau);
  const cplx p = lat.nome();

  double odd = 0.0, per_x = 0.0, per_tau = 0.0, addition = 0.0, jacobi = 0.0, kron = 0.0;
  const Lattice lat_s(-1.0 / tau);
  for (int trial = 0; trial < 50; ++trial) {
    ModelParams pr;
    pr.lat = lat;
    const cplx x = smp.cell_point(pr);
    const cplx y = smp.cell_point(pr);
    const cplx tx = theta(x, lat).value;
    const double sc = std::max(1.0, std::abs(tx));
    odd = std::max(odd, std::abs(theta(-x, lat).value + tx) / sc);
    per_x = std::max(per_x, std::abs(theta(x + 1.0, lat).value + tx) / sc);
    per_tau = std::max(per_tau,
                       std::abs(theta(x + tau, lat).value +
                                std::exp(-2.0 * PI * I_UNIT * x) / p * tx) / sc);
    // four-term addition formula
    const cplx z = smp.cell_point(pr);
    const cplx w = smp.cell_point(pr);
    auto th = [&](cplx arg) { return theta(arg, lat).value; };
    const cplx lhs = th(x + y) * th(x - y) * th(z + w) * th(z - w);
    const cplx rhs = th(x + z) * th(x - z) * th(y + w) * th(y - w) +
                     th(x + w) * th(x - w) * th(z + y) * th(z - y);
    addition = std::max(addition, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    // Jacobi imaginary transformation
    const cplx lhs_s = theta(-x / tau, lat_s).value;
    const cplx rhs_s = -(1.0 / tau) * std::exp(I_UNIT * PI * x * x / tau) * theta(x, lat).value;
    jacobi = std::max(jacobi, std::abs(lhs_s - rhs_s) / std::max(1.0, std::abs(rhs_s)));
    // Kronecker kernel quasi-periodicity in u
    const PhiValue f = kronecker_phi(x, y, lat);
    kron = std::max(kron, std::abs(kronecker_phi(x + 1.0, y, lat).value - f.value) /
                              std::max(1.0, std::abs(f.value)));
    kron = std::max(kron, std::abs(kronecker_phi(x + tau, y, lat).value -
                                   std::exp(-2.0 * PI * I_UNIT * y) * f.value) /
                              std::max(1.0, std::abs(f.value)));
  }

  const Lattice trig(cplx(0.0, 5.0));
  const double trig_gap =
      std::abs(theta(0.3, trig).value - std::sin(0.3 * PI) / PI);

  Report rep;
  rep.command = "theta-check";
  rep.params["seed"] = seed;
  rep.params["tau"] = complex_json(tau);
  rep.residuals.push_back(make_entry("oddness", odd, tol, "kernel parity"));
  rep.residuals.push_back(make_entry("period_1", per_x, tol, "x+1 quasi-period"));
  rep.residuals.push_back(make_entry("period_tau", per_tau, tol, "x+tau quasi-period"));
  rep.residuals.push_back(make_entry("addition_formula", addition, tol, "four-term identity"));
  rep.residuals.push_back(make_entry("jacobi_imaginary", jacobi, tol, "S-transformation"));
  rep.residuals.push_back(make_entry("kernel_periods", kron, tol, "ratio-kernel periods"));
  rep.residuals.push_back(make_entry("trig_limit", trig_gap, 1e-6, "large Im tau limit"));
  return finish(rep, out, format);
}

// ------------------------------------------------------------- rmatrix-verify

int run_rmatrix_verify(const std::string& kind_s, int r, std::uint64_t seed, double tol,
                       const std::string& out, const std::string& format,
                       const std::string& a_s) {
  const Kind kind = kind_from_string(kind_s);
  ModelParams pr;
  pr.r = r;
  pr.N = 4;
  pr.dyn_a = parse_weights(a_s, r);
  pr.validate();
  Sampler smp(seed);

  double uni = 0.0, ybe = 0.0, dist = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const cplx u = smp.cell_point(pr);
    const cplx v = smp.cell_point(pr);
    uni = std::max(uni, unitarity_residual(kind, 1, u, pr));
    ybe = std::max(ybe, ybe_residual(kind, 1, u, v, pr));
    dist = std::max(dist, distance_commutativity_residual(kind, 1, 3, u, v, pr));
  }
  ModelParams small = pr;
  small.eta = cplx(1e-5, 0.0);
  Sampler smp2(seed + 1);
  double init = 0.0;
  for (int trial = 0; trial < 5; ++trial)
    init = std::max(init, initial_condition_residual(kind, 1, smp2.cell_point(small), small));

  Report rep;
  rep.command = "rmatrix-verify";
  rep.params["kind"] = kind_s;
  rep.params["r"] = r;
  rep.params["seed"] = seed;
  rep.residuals.push_back(make_entry("unitarity", uni, tol, "R(u) R(-u) = id"));
  rep.residuals.push_back(make_entry("yang_baxter", ybe, tol, "braid relation"));
  rep.residuals.push_back(make_entry("distance_commutativity", dist, tol, "far factors commute"));
  rep.residuals.push_back(make_entry("initial_condition", init, 1e-4, "eta -> 0 degeneration"));
  if (kind == Kind::Vertex) {
    rep.residuals.push_back(make_entry(
        "ice_rule", vertex_ice_rule_exact(smp.cell_point(pr), pr) ? 0.0 : 1.0, 0.5,
        "exact sparsity"));
  }
  return finish(rep, out, format);
}

// ----------------------------------------------------------------- ops-verify

int run_ops_verify(const std::string& kind_s, int N, int r, cplx eta, cplx eps, cplx omega,
                   cplx hbar, std::uint64_t seed, double tol, const std::string& out,
                   const std::string& format, const std::string& a_s) {
  const Kind kind = kind_from_string(kind_s);
  ModelParams pr;
  pr.N = N;
  pr.r = r;
  pr.eta = eta;
  pr.eps = eps;
  pr.hbar = hbar;
  pr.lat = Lattice(omega);  // no chart here: omega is the operator lattice itself
  pr.dyn_a = parse_weights(a_s, r);
  pr.validate();
  Sampler smp(seed);
  std::vector<cplx> offsets;
  for (int c : {-2, -1, 1, 2}) offsets.push_back(cplx(0.0, 1.0) * pr.hbar * pr.eps * double(c));
  const std::vector<cplx> x0 = smp.positions(N, pr, offsets);

  Report rep;
  rep.command = "ops-verify";
  rep.params["kind"] = kind_s;
  rep.params["N"] = N;
  rep.params["r"] = r;
  rep.params["eta"] = complex_json(pr.eta);
  rep.params["eps"] = complex_json(pr.eps);
  rep.params["omega"] = complex_json(omega);
  rep.params["hbar"] = complex_json(pr.hbar);
  rep.params["a"] = complex_list_json(pr.dyn_a);
  rep.params["seed"] = seed;

  const Probe f1 = random_probe(seed + 11, 1, N);
  const std::vector<std::pair<int, int>> scalar_pairs = {{1, 2}, {1, -1}, {2, -1}, {1, N}};
  for (auto [n, m] : scalar_pairs) {
    const double res = commutator_residual_on_probe(build_scalar_D(n, pr),
                                                    build_scalar_D(m, pr), f1, x0);
    rep.residuals.push_back(make_entry(
        "scalar_commutator_" + std::to_string(n) + "_" + std::to_string(m), res, tol,
        "shift operators commute"));
  }

  const int dim = static_cast<int>(spin_dim(r, N));
  const Probe fs = random_probe(seed + 12, dim, N);
  const std::vector<std::pair<int, int>> spin_pairs = {{1, 2}, {1, -1}, {2, -1}};
  for (auto [n, m] : spin_pairs) {
    const double res = commutator_residual_on_probe(build_spin_D(n, kind, pr),
                                                    build_spin_D(m, kind, pr), fs, x0);
    rep.residuals.push_back(make_entry(
        "spin_commutator_" + std::to_string(n) + "_" + std::to_string(m), res, tol,
        "spin operators commute"));
  }
  return finish(rep, out, format);
}

// ---------------------------------------------------------------- equilibrium

int run_equilibrium(int N, const std::string& word, double tol, const std::string& out,
                    const std::string& format) {
  BaseParams bp;
  bp.N = N;
  const EvalContext ctx = build_eval_context(word, bp);
  const PhasePoint pt{ctx.data.x, ctx.data.p};
  const EquilibriumReport er = equilibrium_report(pt, ctx.pr);

  Report rep;
  rep.command = "equilibrium";
  rep.params = base_params_json(bp, word);
  rep.params["x"] = complex_list_json(ctx.data.x);
  rep.params["p"] = complex_list_json(ctx.data.p);
  json vs = json::array();
  for (cplx v : er.v) vs.push_back(complex_json(v));
  rep.params["flow_velocities"] = vs;
  rep.params["v_minus_1"] = complex_json(er.v_m1);
  rep.residuals.push_back(make_entry("velocity_spread", er.spread, tol, "i-independent xdot"));
  rep.residuals.push_back(make_entry("jerk", er.jerk, tol, "pdot = 0"));
  rep.residuals.push_back(make_entry("symmetry", er.symmetry, tol, "v_{N-n} = v_n"));
  rep.residuals.push_back(make_entry("parity", er.parity, tol, "v_n even in eta"));
  return finish(rep, out, format);
}

// ---------------------------------------------------------------- chain build

std::string matrix_path(const std::string& prefix, int n) {
  return prefix + "_H" + std::to_string(n) + ".bin";
}

int run_chain_build(const BaseParams& bp, const std::string& word,
                    const std::vector<int>& flows, std::uint64_t seed, double tol,
                    const std::string& out, const std::string& format) {
  const FrozenChain ch = freeze(word, bp, flows);
  const double comm_tol = std::min(tol, 1e-9);

  Report rep;
  rep.command = "chain build";
  rep.params = base_params_json(bp, word);
  rep.params["flows"] = flows;
  rep.params["seed"] = seed;
  rep.params["v1"] = complex_json(ch.v1);
  rep.params["v_minus_1"] = complex_json(ch.vm1);
  rep.params["gamma_full"] = complex_json(ch.gamma_full);

  for (auto it = ch.H.begin(); it != ch.H.end(); ++it) {
    for (auto jt = std::next(it); jt != ch.H.end(); ++jt) {
      rep.residuals.push_back(make_entry(
          "commutator_H" + std::to_string(it->first) + "_H" + std::to_string(jt->first),
          comm_norm(it->second, jt->second), comm_tol, "chain charges commute"));
    }
  }
  for (int n : flows) {
    rep.residuals.push_back(make_entry("coefficient_two_path_" + std::to_string(n),
                                       two_path_coefficient_residual(ch.ctx, n), 1e-10,
                                       "closed-form coefficients"));
  }
  {
    Sampler smp(seed);
    const std::vector<cplx> xr = smp.positions(bp.N, ch.ctx.pr, {});
    std::vector<cplx> pr_rand;
    for (int i = 0; i < bp.N; ++i) pr_rand.push_back(smp.box(-0.5, 0.5, -0.5, 0.5));
    rep.residuals.push_back(make_entry(
        "translation_invariance_1",
        translation_invariance_residual(1, xr, pr_rand, ch.kind, ch.ctx.pr), 1e-9,
        "total x-derivative vanishes"));
  }

  if (!out.empty()) {
    json manifest = rep.to_json();
    json mats = json::object();
    for (const auto& [n, H] : ch.H) {
      const std::string path = matrix_path(out, n);
      write_matrix_bin(H, path);
      mats[std::to_string(n)] = path.substr(path.find_last_of('/') + 1);
    }
    manifest["matrices"] = mats;
    write_json(manifest, out + ".json");
    if (format == "csv") write_report_csv(rep, out + ".csv");
  } else {
    std::cout << rep.to_json().dump(2) << '\n';
  }
  int failed = 0;
  for (const auto& e : rep.residuals)
    if (!e.pass) ++failed;
  if (failed > 0) std::cerr << failed << " residual(s) above tolerance; see report" << '\n';
  return rep.all_pass() ? kPass : kBreach;
}

// --------------------------------------------------------------- chain verify

int run_chain_verify(const std::string& in_prefix, double tol, const std::string& out,
                     const std::string& format) {
  std::ifstream mf(in_prefix + ".json");
  if (!mf) {
    std::cerr << "no manifest at " << in_prefix << ".json" << '\n';
    return kUsage;
  }
  json manifest = json::parse(mf);
  const BaseParams bp = base_params_from_json(manifest.at("params"));
  std::string word = manifest.at("params").at("word").get<std::string>();
  if (word == "1") word.clear();
  std::vector<int> flows;
  for (const auto& f : manifest.at("params").at("flows")) flows.push_back(f.get<int>());

  std::map<int, Mat> saved;
  for (int n : flows) saved[n] = read_matrix_bin(matrix_path(in_prefix, n));

  Report rep;
  rep.command = "chain verify";
  rep.params = manifest.at("params");
  const double comm_tol = std::min(tol, 1e-9);
  for (auto it = saved.begin(); it != saved.end(); ++it) {
    for (auto jt = std::next(it); jt != saved.end(); ++jt) {
      rep.residuals.push_back(make_entry(
          "commutator_H" + std::to_string(it->first) + "_H" + std::to_string(jt->first),
          comm_norm(it->second, jt->second), comm_tol, "saved charges commute"));
    }
  }
  const FrozenChain ch = freeze(word, bp, flows);
  for (int n : flows) {
    const double gap =
        (ch.H.at(n) - saved.at(n)).norm() / std::max(saved.at(n).norm(), 1e-300);
    rep.residuals.push_back(make_entry("rebuild_match_H" + std::to_string(n), gap, 1e-10,
                                       "deterministic rebuild"));
    rep.residuals.push_back(make_entry("coefficient_two_path_" + std::to_string(n),
                                       two_path_coefficient_residual(ch.ctx, n), 1e-10,
                                       "closed-form coefficients"));
  }
  return finish(rep, out, format);
}

// ------------------------------------------------------------- chain spectrum

int run_chain_spectrum(const std::string& in_prefix, int flow, const std::string& out,
                       const std::string& format) {
  const Mat H = read_matrix_bin(matrix_path(in_prefix, flow));
  const EigResult eig = eigendecompose(H);
  std::vector<cplx> vals(eig.values.data(), eig.values.data() + eig.values.size());
  std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  Report rep;
  rep.command = "chain spectrum";
  rep.params["in"] = in_prefix;
  rep.params["flow"] = flow;
  rep.params["eigenvalues"] = complex_list_json(vals);
  rep.residuals.push_back(
      make_entry("eig_reconstruction", eig.reconstruction_residual, 1e-9, "diagonalisation"));
  return finish(rep, out, format);
}

// -------------------------------------------------------------- hybrid evolve

int run_hybrid_evolve(const BaseParams& bp, const std::string& word, const std::string& x0_s,
                      const std::string& p0_s, double t_end, double dt,
                      const std::string& out, const std::string& format) {
  const EvalContext ctx = build_eval_context(word, bp);
  PhasePoint pt{ctx.data.x, ctx.data.p};
  if (!x0_s.empty()) {
    const std::vector<double> xs = parse_doubles(x0_s);
    if (static_cast<int>(xs.size()) != bp.N)
      throw CLI::ValidationError("--x0", "need N real entries");
    for (int i = 0; i < bp.N; ++i) pt.x[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i)];
  }
  if (!p0_s.empty()) {
    const std::vector<double> ps = parse_doubles(p0_s);
    if (static_cast<int>(ps.size()) != bp.N)
      throw CLI::ValidationError("--p0", "need N real entries");
    for (int i = 0; i < bp.N; ++i) pt.p[static_cast<std::size_t>(i)] = ps[static_cast<std::size_t>(i)];
  }

  const Eigen::Index dim =
      (bp.kind == Kind::ScalarTrivial) ? 1 : static_cast<Eigen::Index>(spin_dim(bp.r, bp.N));
  Mat A0 = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) A0(i, i) = double(i) / double(dim);

  HybridState s0{pt, A0, 0.0};
  const int total_steps = std::max(1, static_cast<int>(t_end / dt + 0.5));
  const int every = std::max(1, total_steps / 200);
  const Trajectory traj = evolve(s0, t_end, dt, bp.kind, ctx.pr, every);

  // conserved quantities along the flow
  std::vector<cplx> d0(static_cast<std::size_t>(bp.N));
  for (int m = 1; m <= bp.N; ++m)
    d0[static_cast<std::size_t>(m - 1)] = d_classical(m, s0.pt, ctx.pr);
  double drift = 0.0;
  for (const auto& s : traj.samples) {
    for (int m = 1; m <= bp.N; ++m) {
      const cplx dm = d_classical(m, s.pt, ctx.pr);
      drift = std::max(drift, std::abs(dm - d0[static_cast<std::size_t>(m - 1)]) /
                                  std::max(1.0, std::abs(d0[static_cast<std::size_t>(m - 1)])));
    }
  }
  // the generator acts by conjugation, so the spectrum of A is invariant;
  // A0 is diagonal with spacing 1/dim, far above any integrator drift
  const CVec ev = eigendecompose(traj.samples.back().A).values;
  double spec_drift = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    double best = std::abs(ev(i) - A0(0, 0));
    for (Eigen::Index j = 1; j < dim; ++j) best = std::min(best, std::abs(ev(i) - A0(j, j)));
    spec_drift = std::max(spec_drift, best);
  }

  CVec psi = CVec::Constant(dim, 1.0 / std::sqrt(double(dim)));
  if (!out.empty()) {
    std::ofstream csv(out + ".csv");
    csv.precision(17);
    csv << "t";
    for (int i = 1; i <= bp.N; ++i) csv << ",re_x" << i << ",im_x" << i;
    for (int i = 1; i <= bp.N; ++i) csv << ",re_p" << i << ",im_p" << i;
    csv << ",re_obs,im_obs\n";
    for (const auto& s : traj.samples) {
      csv << s.t;
      for (cplx v : s.pt.x) csv << ',' << v.real() << ',' << v.imag();
      for (cplx v : s.pt.p) csv << ',' << v.real() << ',' << v.imag();
      const cplx obs = (psi.adjoint() * s.A * psi)(0, 0);
      csv << ',' << obs.real() << ',' << obs.imag() << '\n';
    }
  }

  Report rep;
  rep.command = "hybrid evolve";
  rep.params = base_params_json(bp, word);
  rep.params["t_end"] = t_end;
  rep.params["dt"] = dt;
  rep.params["steps"] = traj.steps;
  rep.residuals.push_back(
      make_entry("classical_charge_drift", drift, 1e-8, "D_m conserved along flow"));
  rep.residuals.push_back(make_entry("observable_spectrum_drift", spec_drift, 1e-8,
                                     "conjugation preserves the spectrum"));
  rep.residuals.push_back(
      make_entry("max_step_error", traj.max_step_error, 1e-6, "embedded half-step monitor"));
  return finish(rep, out.empty() ? out : out + ".json", format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic long-range spin chains: builders and verification suites"};
  app.require_subcommand(1);
  app.set_config("--config");

  std::uint64_t seed = 1;
  double tol = 1e-10;
  std::string out;
  std::string format = "json";
  app.add_option("--seed", seed, "seed for all random sampling")->capture_default_str();
  app.add_option("--tol", tol, "default tolerance")->capture_default_str();
  app.add_option("--out", out, "output path (or prefix for chain build / hybrid evolve)");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv", "bin"}))
      ->capture_default_str();

  std::string kind_s = "vertex";
  int N = 3, r = 2;
  std::string eta_s = "0.23", eps_s = "0.31", omega_s = "0,2.5", hbar_s = "0.37";
  std::string a_s, word_s = "1", flows_s = "1,-1";
  std::string in_prefix, x0_s, p0_s;
  int flow = 1;
  double t_end = 1.0, dt = 1e-3;

  auto add_model_opts = [&](CLI::App* c, bool with_hbar) {
    c->add_option("--kind", kind_s, "vertex | face | scalar")->capture_default_str();
    c->add_option("--N", N, "number of sites")->capture_default_str();
    c->add_option("--r", r, "colours per site")->capture_default_str();
    c->add_option("--eta", eta_s, "crossing parameter, re[,im]");
    c->add_option("--eps", eps_s, "momentum scale, re[,im]");
    c->add_option("--omega", omega_s, "base modular parameter, re[,im]");
    c->add_option("--a", a_s, "face weights, flat list");
    if (with_hbar) c->add_option("--hbar", hbar_s, "expansion parameter, re[,im]");
  };
  auto make_base = [&]() {
    BaseParams bp;
    bp.kind = kind_from_string(kind_s);
    bp.N = N;
    bp.r = r;
    bp.eta = parse_cplx(eta_s);
    bp.eps = parse_cplx(eps_s);
    bp.omega = parse_cplx(omega_s);
    bp.hbar = parse_cplx(hbar_s);
    bp.a = (bp.kind == Kind::Face) ? parse_weights(a_s, r) : std::vector<cplx>{};
    return bp;
  };

  CLI::App* c_theta = app.add_subcommand("theta-check", "elliptic kernel identity suite");
  CLI::App* c_rm = app.add_subcommand("rmatrix-verify", "R-matrix identity suite");
  c_rm->add_option("--kind", kind_s, "vertex | face")->capture_default_str();
  c_rm->add_option("--r", r, "colours per site")->capture_default_str();
  c_rm->add_option("--a", a_s, "face weights, flat list");
  CLI::App* c_ops = app.add_subcommand("ops-verify", "commuting difference operators suite");
  add_model_opts(c_ops, true);
  CLI::App* c_eq = app.add_subcommand("equilibrium", "classical equilibrium report");
  c_eq->add_option("--N", N, "number of sites")->capture_default_str();
  c_eq->add_option("--word", word_s, "modular word (1 = identity)")->capture_default_str();

  CLI::App* c_chain = app.add_subcommand("chain", "frozen spin chains");
  c_chain->require_subcommand(1);
  CLI::App* c_build = c_chain->add_subcommand("build", "freeze and save hamiltonians");
  add_model_opts(c_build, true);
  c_build->add_option("--word", word_s, "modular word (1 = identity)")->capture_default_str();
  c_build->add_option("--flows", flows_s, "comma list of flow indices")->capture_default_str();
  CLI::App* c_verify = c_chain->add_subcommand("verify", "re-check a saved chain");
  c_verify->add_option("--in", in_prefix, "prefix used by chain build")->required();
  CLI::App* c_spec = c_chain->add_subcommand("spectrum", "eigenvalues of a saved hamiltonian");
  c_spec->add_option("--in", in_prefix, "prefix used by chain build")->required();
  c_spec->add_option("--flow", flow, "flow index")->capture_default_str();

  CLI::App* c_hyb = app.add_subcommand("hybrid", "hybrid classical/spin dynamics");
  c_hyb->require_subcommand(1);
  CLI::App* c_ev = c_hyb->add_subcommand("evolve", "integrate the coupled flow");
  add_model_opts(c_ev, true);
  c_ev->add_option("--word", word_s, "equilibrium start from this modular word")
      ->capture_default_str();
  c_ev->add_option("--x0", x0_s, "explicit initial positions (real list)");
  c_ev->add_option("--p0", p0_s, "explicit initial momenta (real list)");
  c_ev->add_option("--t-end", t_end, "final time")->capture_default_str();
  c_ev->add_option("--dt", dt, "step size")->capture_default_str();

  // global options (--seed, --out, ...) may follow the subcommand
  for (CLI::App* sc : {c_theta, c_rm, c_ops, c_eq, c_chain, c_build, c_verify, c_spec,
                       c_hyb, c_ev}) {
    sc->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (c_theta->parsed()) return run_theta_check(seed, tol, out, format);
    if (c_rm->parsed()) return run_rmatrix_verify(kind_s, r, seed, tol, out, format, a_s);
    if (c_ops->parsed())
      return run_ops_verify(kind_s, N, r, parse_cplx(eta_s), parse_cplx(eps_s),
                            parse_cplx(omega_s), parse_cplx(hbar_s), seed, std::min(tol, 1e-9),
                            out, format, a_s);
    if (c_eq->parsed()) return run_equilibrium(N, parse_word(word_s), tol, out, format);
    if (c_build->parsed())
      return run_chain_build(make_base(), parse_word(word_s), parse_ints(flows_s), seed, tol,
                             out, format);
    if (c_verify->parsed()) return run_chain_verify(in_prefix, tol, out, format);
    if (c_spec->parsed()) return run_chain_spectrum(in_prefix, flow, out, format);
    if (c_ev->parsed())
      return run_hybrid_evolve(make_base(), parse_word(word_s), x0_s, p0_s, t_end, dt, out,
                               format);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
