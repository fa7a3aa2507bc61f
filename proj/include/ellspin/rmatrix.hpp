#pragma once

#include <unordered_map>
#include <string>
#include <vector>

#include "ellspin/tensor.hpp"
#include "ellspin/theta.hpp"

namespace ellspin {

enum class Kind { Vertex, Face, ScalarTrivial };

Kind kind_from_string(const std::string& s);
std::string kind_to_string(Kind k);

struct ModelParams {
  int r = 2;
  int N = 3;
  cplx eta{0.23, 0.0};
  cplx eps{0.31, 0.0};
  cplx hbar{0.37, 0.0};
  Lattice lat{cplx(0.0, 1.0)};
  std::vector<cplx> dyn_a;  // size r (Face); ignored otherwise

  void validate() const;  // dimension cap, dyn_a size, eta off the lattice
};

// r^2 x r^2 R-matrix with first and second u-derivatives.
struct RPair {
  Mat R;
  Mat dR;
  Mat d2R;
};

// Baxter-Belavin solution (gl_r), entries indexed by pairs with the weak ice
// rule alpha+gamma = beta+delta mod r; normalised so R|_{eta=0} = id.
RPair r_vertex(cplx u, const ModelParams& pr);

// Felder dynamical solution with weight vector `a` (length r).
RPair r_face(cplx u, const std::vector<cplx>& a, const ModelParams& pr);

// Full-chain deformed permutation P_{i,i+1}(u) with its u-derivatives:
// vertex: embedded flip*R; face: block-diagonal over prefix weights, each
// block flip*R(u, a - eta*mu); scalar (r = 1): the 1x1 identity.
struct PexPair {
  Mat P;
  Mat dP;
  Mat d2P;
};
PexPair deformed_permutation(Kind k, int i, cplx u, const ModelParams& pr);

// h_{i,i+1}(u) = P_{i,i+1}(-u) P'_{i,i+1}(u), the nearest-neighbour density
// every frozen hamiltonian is built from, together with its u-derivative
// dh = -P'(-u) P'(u) + P(-u) P''(u).
struct HPair {
  Mat h;
  Mat dh;
};
HPair h_interaction(Kind k, int i, cplx u, const ModelParams& pr);

// Residuals, all scale-free (Frobenius, normalised by operand size).
double unitarity_residual(Kind k, int i, cplx u, const ModelParams& pr);
double ybe_residual(Kind k, int i, cplx u, cplx v, const ModelParams& pr);
double distance_commutativity_residual(Kind k, int i, int j, cplx u, cplx v,
                                       const ModelParams& pr);
double initial_condition_residual(Kind k, int i, cplx u, const ModelParams& pr);

// Exact sparsity check: vertex entries outside the ice rule must be 0.
bool vertex_ice_rule_exact(cplx u, const ModelParams& pr);

// Memoises deformed_permutation results within one assembly; keyed by
// (kind, i, u).  Valid for a single ModelParams context.
class FactorCache {
 public:
  const PexPair& get(Kind k, int i, cplx u, const ModelParams& pr);
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<std::string, PexPair> map_;
};

}  // namespace ellspin
