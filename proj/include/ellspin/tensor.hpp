#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "ellspin/theta.hpp"

namespace ellspin {

using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// r^N with the desk-scale cap of 4096; throws std::domain_error beyond it.
std::size_t spin_dim(int r, int N);

// Basis convention (frozen): product basis of N sites with colours 0..r-1,
// site 1 is the most significant digit:  index = sum_i s_i r^{N-i}.
int site_digit(std::size_t idx, int site, int r, int N);

// Occupation counts of each colour among sites 1..i-1 (the prefix of site i).
std::vector<int> prefix_weight(std::size_t idx, int i, int r, int N);

// Lift an r^2 x r^2 operator acting on sites (i, i+1) to the full chain,
// identity on all other sites.  1 <= i <= N-1.
Mat embed_pair(const Mat& op, int i, int r, int N);

// ||AB - BA||_F / max(||A||_F ||B||_F, tiny): scale-free commutator residual.
double comm_norm(const Mat& A, const Mat& B);

struct EigResult {
  CVec values;                     // unsorted eigenvalues
  double reconstruction_residual;  // ||V L V^{-1} - A||_F / ||A||_F
};
EigResult eigendecompose(const Mat& A);

}  // namespace ellspin
