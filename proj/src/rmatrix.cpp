#include "ellspin/rmatrix.hpp"

#include <cstring>
#include <map>
#include <stdexcept>

namespace ellspin {

Kind kind_from_string(const std::string& s) {
  if (s == "vertex") return Kind::Vertex;
  if (s == "face") return Kind::Face;
  if (s == "scalar") return Kind::ScalarTrivial;
  throw std::domain_error("unknown kind '" + s + "' (expected vertex|face|scalar)");
}

std::string kind_to_string(Kind k) {
  switch (k) {
    case Kind::Vertex: return "vertex";
    case Kind::Face: return "face";
    default: return "scalar";
  }
}

void ModelParams::validate() const {
  spin_dim(r, N);
  if (lattice_distance(eta, lat) < 1e-9) {
    throw std::domain_error("eta sits on the period lattice; coefficients are singular");
  }
  if (!dyn_a.empty() && dyn_a.size() != static_cast<std::size_t>(r)) {
    throw std::domain_error("dyn_a must have one weight per colour (size r)");
  }
}

namespace {

Mat flip_matrix(int r) {
  const int rr = r * r;
  Mat P = Mat::Zero(rr, rr);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) P(a * r + b, b * r + a) = 1.0;
  return P;
}

}  // namespace

RPair r_vertex(cplx u, const ModelParams& pr) {
  const int r = pr.r;
  const cplx tau = pr.lat.tau();
  const Lattice lat_r(static_cast<double>(r) * tau);
  const PhiValue f1 = kronecker_phi(u, pr.eta, pr.lat);
  const cplx pref = 1.0 / f1.value;
  const cplx dpref = -f1.d_u / (f1.value * f1.value);
  const cplx d2pref =
      -f1.d2_u / (f1.value * f1.value) + 2.0 * f1.d_u * f1.d_u / (f1.value * f1.value * f1.value);
  const cplx w = 2.0 * PI * I_UNIT / static_cast<double>(r);

  const int rr = r * r;
  Mat R = Mat::Zero(rr, rr), dR = Mat::Zero(rr, rr), d2R = Mat::Zero(rr, rr);
  for (int al = 0; al < r; ++al) {
    for (int ga = 0; ga < r; ++ga) {
      for (int be = 0; be < r; ++be) {
        for (int de = 0; de < r; ++de) {
          if (((al + ga - be - de) % r + r) % r != 0) continue;
          const double m = static_cast<double>(be - al);
          const double k = static_cast<double>(ga - be);
          const cplx E = std::exp(w * (m * u + k * pr.eta + k * m * tau));
          const cplx dE = w * m * E;
          const cplx d2E = w * m * dE;
          const PhiValue f2 = kronecker_phi(u + k * tau, pr.eta + m * tau, lat_r);
          R(al * r + ga, be * r + de) = pref * E * f2.value;
          dR(al * r + ga, be * r + de) =
              dpref * E * f2.value + pref * dE * f2.value + pref * E * f2.d_u;
          d2R(al * r + ga, be * r + de) =
              d2pref * E * f2.value + pref * d2E * f2.value + pref * E * f2.d2_u +
              2.0 * (dpref * dE * f2.value + dpref * E * f2.d_u + pref * dE * f2.d_u);
        }
      }
    }
  }
  return {R, dR, d2R};
}

RPair r_face(cplx u, const std::vector<cplx>& a, const ModelParams& pr) {
  const int r = pr.r;
  if (a.size() != static_cast<std::size_t>(r)) {
    throw std::domain_error("r_face: weight vector must have size r");
  }
  const PhiValue f1 = kronecker_phi(u, pr.eta, pr.lat);
  const cplx pref = 1.0 / f1.value;
  const cplx dpref = -f1.d_u / (f1.value * f1.value);
  const cplx d2pref =
      -f1.d2_u / (f1.value * f1.value) + 2.0 * f1.d_u * f1.d_u / (f1.value * f1.value * f1.value);

  const int rr = r * r;
  Mat R = Mat::Zero(rr, rr), dR = Mat::Zero(rr, rr), d2R = Mat::Zero(rr, rr);
  for (int al = 0; al < r; ++al) R(al * r + al, al * r + al) = 1.0;
  for (int al = 0; al < r; ++al) {
    for (int be = 0; be < r; ++be) {
      if (al == be) continue;
      const cplx dab = a[be] - a[al];
      const PhiValue fa = kronecker_phi(dab, pr.eta, pr.lat);   // no u-dependence
      const PhiValue fu = kronecker_phi(u, dab, pr.lat);
      const int dg = al * r + be;
      R(dg, dg) = pref * fa.value;
      dR(dg, dg) = dpref * fa.value;
      d2R(dg, dg) = d2pref * fa.value;
      R(dg, be * r + al) = pref * fu.value;
      dR(dg, be * r + al) = dpref * fu.value + pref * fu.d_u;
      d2R(dg, be * r + al) = d2pref * fu.value + 2.0 * dpref * fu.d_u + pref * fu.d2_u;
    }
  }
  return {R, dR, d2R};
}

PexPair deformed_permutation(Kind k, int i, cplx u, const ModelParams& pr) {
  const std::size_t dim = spin_dim(pr.r, pr.N);
  if (k == Kind::ScalarTrivial) {
    return {Mat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
            Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
            Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
  }
  const Mat P2 = flip_matrix(pr.r);
  if (k == Kind::Vertex) {
    const RPair rp = r_vertex(u, pr);
    return {embed_pair(P2 * rp.R, i, pr.r, pr.N), embed_pair(P2 * rp.dR, i, pr.r, pr.N),
            embed_pair(P2 * rp.d2R, i, pr.r, pr.N)};
  }

  // Face: block-diagonal over the prefix weight of sites 1..i-1.
  if (pr.dyn_a.size() != static_cast<std::size_t>(pr.r)) {
    throw std::domain_error("face kind requires dyn_a of size r");
  }
  if (i < 1 || i > pr.N - 1) throw std::domain_error("deformed_permutation: bad site index");
  const int r = pr.r;
  const std::size_t rr = static_cast<std::size_t>(r) * static_cast<std::size_t>(r);
  std::size_t suf = 1;
  for (int t = 0; t < pr.N - i - 1; ++t) suf *= static_cast<std::size_t>(r);
  const std::size_t npre = dim / (rr * suf);

  Mat P = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  Mat dP = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  Mat d2P = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::map<std::vector<int>, RPair> by_weight;
  for (std::size_t pf = 0; pf < npre; ++pf) {
    std::vector<int> mu(static_cast<std::size_t>(r), 0);
    std::size_t t = pf;
    for (int s = 0; s < i - 1; ++s) {
      ++mu[t % static_cast<std::size_t>(r)];
      t /= static_cast<std::size_t>(r);
    }
    auto it = by_weight.find(mu);
    if (it == by_weight.end()) {
      std::vector<cplx> ash(pr.dyn_a);
      for (int c = 0; c < r; ++c) ash[static_cast<std::size_t>(c)] -= pr.eta * static_cast<double>(mu[static_cast<std::size_t>(c)]);
      RPair rp = r_face(u, ash, pr);
      rp.R = P2 * rp.R;
      rp.dR = P2 * rp.dR;
      rp.d2R = P2 * rp.d2R;
      it = by_weight.emplace(std::move(mu), std::move(rp)).first;
    }
    const RPair& blk = it->second;
    for (std::size_t rrow = 0; rrow < rr; ++rrow) {
      for (std::size_t rcol = 0; rcol < rr; ++rcol) {
        const cplx v = blk.R(static_cast<Eigen::Index>(rrow), static_cast<Eigen::Index>(rcol));
        const cplx dv = blk.dR(static_cast<Eigen::Index>(rrow), static_cast<Eigen::Index>(rcol));
        const cplx ddv = blk.d2R(static_cast<Eigen::Index>(rrow), static_cast<Eigen::Index>(rcol));
        if (v == cplx(0.0, 0.0) && dv == cplx(0.0, 0.0) && ddv == cplx(0.0, 0.0)) continue;
        const std::size_t row0 = (pf * rr + rrow) * suf;
        const std::size_t col0 = (pf * rr + rcol) * suf;
        for (std::size_t s = 0; s < suf; ++s) {
          P(static_cast<Eigen::Index>(row0 + s), static_cast<Eigen::Index>(col0 + s)) = v;
          dP(static_cast<Eigen::Index>(row0 + s), static_cast<Eigen::Index>(col0 + s)) = dv;
          d2P(static_cast<Eigen::Index>(row0 + s), static_cast<Eigen::Index>(col0 + s)) = ddv;
        }
      }
    }
  }
  return {P, dP, d2P};
}

HPair h_interaction(Kind k, int i, cplx u, const ModelParams& pr) {
  const PexPair minus = deformed_permutation(k, i, -u, pr);
  const PexPair plus = deformed_permutation(k, i, u, pr);
  return {minus.P * plus.dP, -minus.dP * plus.dP + minus.P * plus.d2P};
}

double unitarity_residual(Kind k, int i, cplx u, const ModelParams& pr) {
  const Mat a = deformed_permutation(k, i, u, pr).P;
  const Mat b = deformed_permutation(k, i, -u, pr).P;
  const Mat id = Mat::Identity(a.rows(), a.cols());
  return (a * b - id).norm() / id.norm();
}

double ybe_residual(Kind k, int i, cplx u, cplx v, const ModelParams& pr) {
  const Mat Pu = deformed_permutation(k, i, u, pr).P;
  const Mat Pv = deformed_permutation(k, i, v, pr).P;
  const Mat Puv = deformed_permutation(k, i, u + v, pr).P;
  const Mat Qu = deformed_permutation(k, i + 1, u, pr).P;
  const Mat Qv = deformed_permutation(k, i + 1, v, pr).P;
  const Mat Quv = deformed_permutation(k, i + 1, u + v, pr).P;
  const Mat lhs = Pu * Quv * Pv;
  const Mat rhs = Qv * Puv * Qu;
  return (lhs - rhs).norm() / std::max(0.5 * (lhs.norm() + rhs.norm()), 1e-300);
}

double distance_commutativity_residual(Kind k, int i, int j, cplx u, cplx v,
                                       const ModelParams& pr) {
  const Mat A = deformed_permutation(k, i, u, pr).P;
  const Mat B = deformed_permutation(k, j, v, pr).P;
  return comm_norm(A, B);
}

double initial_condition_residual(Kind k, int i, cplx u, const ModelParams& pr) {
  const Mat P = deformed_permutation(k, i, u, pr).P;
  const Mat F = embed_pair(flip_matrix(pr.r), i, pr.r, pr.N);
  return (P - F).norm() / F.norm();
}

bool vertex_ice_rule_exact(cplx u, const ModelParams& pr) {
  const RPair rp = r_vertex(u, pr);
  const int r = pr.r;
  for (int al = 0; al < r; ++al)
    for (int ga = 0; ga < r; ++ga)
      for (int be = 0; be < r; ++be)
        for (int de = 0; de < r; ++de) {
          if (((al + ga - be - de) % r + r) % r == 0) continue;
          if (rp.R(al * r + ga, be * r + de) != cplx(0.0, 0.0)) return false;
        }
  return true;
}

const PexPair& FactorCache::get(Kind k, int i, cplx u, const ModelParams& pr) {
  char buf[sizeof(double) * 2];
  const double re = u.real(), im = u.imag();
  std::memcpy(buf, &re, sizeof(double));
  std::memcpy(buf + sizeof(double), &im, sizeof(double));
  std::string key = kind_to_string(k) + ':' + std::to_string(i) + ':' +
                    std::string(buf, sizeof(buf));
  auto it = map_.find(key);
  if (it == map_.end()) it = map_.emplace(std::move(key), deformed_permutation(k, i, u, pr)).first;
  return it->second;
}

}  // namespace ellspin
