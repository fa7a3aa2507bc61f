#include "ellspin/tensor.hpp"

#include <stdexcept>
#include <string>

namespace ellspin {

std::size_t spin_dim(int r, int N) {
  if (r < 1 || N < 1) throw std::domain_error("spin_dim: need r >= 1 and N >= 1");
  std::size_t d = 1;
  for (int i = 0; i < N; ++i) {
    d *= static_cast<std::size_t>(r);
    if (d > 4096) {
      throw std::domain_error("spin space dimension r^N exceeds the 4096 cap (r = " +
                              std::to_string(r) + ", N = " + std::to_string(N) + ")");
    }
  }
  return d;
}

int site_digit(std::size_t idx, int site, int r, int N) {
  std::size_t div = 1;
  for (int k = 0; k < N - site; ++k) div *= static_cast<std::size_t>(r);
  return static_cast<int>((idx / div) % static_cast<std::size_t>(r));
}

std::vector<int> prefix_weight(std::size_t idx, int i, int r, int N) {
  std::vector<int> mu(static_cast<std::size_t>(r), 0);
  for (int s = 1; s < i; ++s) ++mu[static_cast<std::size_t>(site_digit(idx, s, r, N))];
  return mu;
}

Mat embed_pair(const Mat& op, int i, int r, int N) {
  const std::size_t dim = spin_dim(r, N);
  const std::size_t rr = static_cast<std::size_t>(r) * static_cast<std::size_t>(r);
  if (op.rows() != static_cast<Eigen::Index>(rr) || op.cols() != static_cast<Eigen::Index>(rr)) {
    throw std::domain_error("embed_pair: operator must be r^2 x r^2");
  }
  if (i < 1 || i > N - 1) throw std::domain_error("embed_pair: need 1 <= i <= N-1");

  std::size_t suf = 1;  // r^(N-i-1)
  for (int k = 0; k < N - i - 1; ++k) suf *= static_cast<std::size_t>(r);
  const std::size_t npre = dim / (rr * suf);

  Mat out = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t pre = 0; pre < npre; ++pre) {
    for (std::size_t a = 0; a < rr; ++a) {
      for (std::size_t b = 0; b < rr; ++b) {
        const cplx val = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (val == cplx(0.0, 0.0)) continue;
        const std::size_t row0 = (pre * rr + a) * suf;
        const std::size_t col0 = (pre * rr + b) * suf;
        for (std::size_t s = 0; s < suf; ++s) {
          out(static_cast<Eigen::Index>(row0 + s), static_cast<Eigen::Index>(col0 + s)) = val;
        }
      }
    }
  }
  return out;
}

double comm_norm(const Mat& A, const Mat& B) {
  const double na = A.norm(), nb = B.norm();
  const double denom = std::max(na * nb, 1e-300);
  return (A * B - B * A).norm() / denom;
}

EigResult eigendecompose(const Mat& A) {
  Eigen::ComplexEigenSolver<Mat> es(A, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Mat V = es.eigenvectors();
  const Mat recon = V * es.eigenvalues().asDiagonal() * V.inverse();
  const double scale = std::max(A.norm(), 1e-300);
  return {es.eigenvalues(), (recon - A).norm() / scale};
}

}  // namespace ellspin
