#include "ellspin/diffops.hpp"

#include <random>

#include "ellspin/coefficients.hpp"

namespace ellspin {

namespace {

std::vector<int> indicator(const std::vector<int>& I, int N, int sign) {
  std::vector<int> k(static_cast<std::size_t>(N), 0);
  for (int i : I) k[static_cast<std::size_t>(i - 1)] = sign;
  return k;
}

std::vector<cplx> shifted(const std::vector<cplx>& x, const std::vector<int>& k, cplx step) {
  std::vector<cplx> y(x);
  for (std::size_t j = 0; j < y.size(); ++j) y[j] -= step * static_cast<double>(k[j]);
  return y;
}

}  // namespace

Mat p_factors_inverse(const std::vector<PwFactor>& factors, Kind k, const ModelParams& pr,
                      FactorCache& cache) {
  const std::size_t dim = spin_dim(pr.r, pr.N);
  Mat M = Mat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    M = M * cache.get(k, it->j, -it->u, pr).P;
  }
  return M;
}

DiffOperator build_scalar_D(int n, const ModelParams& pr) {
  if (n == 0 || std::abs(n) > pr.N) throw std::domain_error("flow index out of range");
  DiffOperator op;
  op.pr = pr;
  op.kind = Kind::ScalarTrivial;
  const int sign = n > 0 ? 1 : -1;
  const cplx eta = static_cast<double>(sign) * pr.eta;
  for (const auto& I : subsets_of_size(pr.N, std::abs(n))) {
    auto coeff = [I, eta, pr](const std::vector<cplx>& x) -> Mat {
      Mat c(1, 1);
      c(0, 0) = coeff_A(I, x, eta, pr.lat);
      return c;
    };
    op.terms.emplace(indicator(I, pr.N, sign), std::move(coeff));
  }
  return op;
}

DiffOperator build_spin_D(int n, Kind k, const ModelParams& pr) {
  if (n == 0 || std::abs(n) > pr.N) throw std::domain_error("flow index out of range");
  if (k == Kind::ScalarTrivial) {
    DiffOperator op = build_scalar_D(n, pr);
    op.kind = k;
    return op;
  }
  DiffOperator op;
  op.pr = pr;
  op.kind = k;
  const int sign = n > 0 ? 1 : -1;
  const cplx eta = static_cast<double>(sign) * pr.eta;
  const cplx shift_step = I_UNIT * pr.hbar * pr.eps;  // coordinate shift of Gamma_I
  for (const auto& I : subsets_of_size(pr.N, std::abs(n))) {
    const GrassPair g = grassmannian(I, pr.N);
    const std::vector<int> word = sign > 0 ? g.word_wI_inv : g.word_wmI_inv;
    const std::vector<int> key = indicator(I, pr.N, sign);
    auto coeff = [I, word, eta, k, pr, key, shift_step](const std::vector<cplx>& x) -> Mat {
      FactorCache cache;
      std::vector<PwFactor> factors;
      p_word(word, x, k, pr, cache, &factors);
      const Mat inv = p_factors_inverse(factors, k, pr, cache);
      const Mat moved = p_word(word, shifted(x, key, shift_step), k, pr, cache, nullptr);
      return coeff_A(I, x, eta, pr.lat) * (inv * moved);
    };
    op.terms.emplace(key, std::move(coeff));
  }
  return op;
}

DiffOperator compose(const DiffOperator& A, const DiffOperator& B) {
  DiffOperator op;
  op.pr = A.pr;
  op.kind = A.kind;
  const cplx step = I_UNIT * A.pr.hbar * A.pr.eps;
  using Fn = std::function<Mat(const std::vector<cplx>&)>;
  std::map<std::vector<int>, std::vector<std::pair<Fn, std::vector<int>>>> parts;
  for (const auto& [ka, ca] : A.terms) {
    for (const auto& [kb, cb] : B.terms) {
      std::vector<int> key(ka);
      for (std::size_t j = 0; j < key.size(); ++j) key[j] += kb[j];
      Fn ca_copy = ca;
      Fn cb_copy = cb;
      std::vector<int> ka_copy = ka;
      Fn piece = [ca_copy, cb_copy, ka_copy, step](const std::vector<cplx>& x) -> Mat {
        return ca_copy(x) * cb_copy(shifted(x, ka_copy, step));
      };
      parts[key].push_back({std::move(piece), ka});
    }
  }
  for (auto& [key, fns] : parts) {
    auto total = [fns](const std::vector<cplx>& x) -> Mat {
      Mat acc = fns.front().first(x);
      for (std::size_t t = 1; t < fns.size(); ++t) acc += fns[t].first(x);
      return acc;
    };
    op.terms.emplace(key, std::move(total));
  }
  return op;
}

std::pair<CVec, double> apply_op(const DiffOperator& D, const Probe& f,
                                 const std::vector<cplx>& x0) {
  const cplx step = I_UNIT * D.pr.hbar * D.pr.eps;
  CVec acc;
  double biggest = 0.0;
  bool first = true;
  for (const auto& [k, coeff] : D.terms) {
    const CVec term = coeff(x0) * f(shifted(x0, k, step));
    biggest = std::max(biggest, term.norm());
    if (first) {
      acc = term;
      first = false;
    } else {
      acc += term;
    }
  }
  if (first) throw std::domain_error("apply_op: empty operator");
  return {acc, biggest};
}

double commutator_residual_on_probe(const DiffOperator& A, const DiffOperator& B,
                                    const Probe& f, const std::vector<cplx>& x0) {
  const auto [ab, sab] = apply_op(compose(A, B), f, x0);
  const auto [ba, sba] = apply_op(compose(B, A), f, x0);
  return (ab - ba).norm() / std::max({sab, sba, 1e-300});
}

Probe random_probe(std::uint64_t seed, int dim, int N) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kdist(-2, 2);
  std::uniform_real_distribution<double> adist(-1.0, 1.0);
  struct Wave {
    std::vector<double> k;
    cplx amp;
  };
  std::vector<std::vector<Wave>> waves(static_cast<std::size_t>(dim));
  for (auto& comp : waves) {
    for (int t = 0; t < 3; ++t) {
      Wave w;
      w.k.resize(static_cast<std::size_t>(N));
      for (double& kk : w.k) kk = static_cast<double>(kdist(rng));
      w.amp = cplx(adist(rng), adist(rng));
      comp.push_back(std::move(w));
    }
  }
  return [waves, dim](const std::vector<cplx>& x) -> CVec {
    CVec v(dim);
    for (int c = 0; c < dim; ++c) {
      cplx s = 0.0;
      for (const auto& w : waves[static_cast<std::size_t>(c)]) {
        cplx phase = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) phase += w.k[j] * x[j];
        s += w.amp * std::exp(2.0 * PI * I_UNIT * phase);
      }
      v(c) = s;
    }
    return v;
  };
}

}  // namespace ellspin
