#pragma once

#include <map>
#include <string>
#include <vector>

#include "ellspin/modular.hpp"
#include "ellspin/permutations.hpp"

namespace ellspin {

// Subset contribution to the order-hbar part of the spin operator for the
// flow with this sign, with the shift factor pushed to the right and its
// hbar-derivative taken at 0:
//   i eps A_I(x; sign*eta) sum_k U_k^{-1} h_{j_k}(u_k) U_k
// summed over the factors of the subset's transport word (suffix products
// U_k).  With `simplify`, conjugating factors that commute with the growing
// core are dropped; this is exact by unitarity and cuts most of the work.
Mat order1_coefficient(const std::vector<int>& I, int sign, const std::vector<cplx>& x,
                       Kind k, const ModelParams& pr, bool simplify = true);

// Matrix part of the partial-classical order-hbar operator at a phase point:
//   M_n(x, p) = sum_{|I|=|n|} order1_coefficient(I, sgn n, x) gamma_I^{sgn n}
Mat order1_matrix(int n, const std::vector<cplx>& x, const std::vector<cplx>& p, Kind k,
                  const ModelParams& pr, bool simplify = true);

struct FrozenChain {
  Kind kind = Kind::Vertex;
  EvalContext ctx;
  cplx v1;          // velocity constant of the first flow at the equilibrium
  cplx vm1;         // its counterpart for the reversed flow
  cplx gamma_full;  // prod_j e^{eps p*_j}
  std::map<int, Mat> H;        // flow -> hamiltonian, |flow| in [1, N-1]
  std::map<int, bool> routed;  // flow built through the complementary one
};

// Builds the chain hamiltonians at the equilibrium reached by `word` from the
// seed chart.  Flows with |n| > N/2 are routed through the complementary flow
// of the opposite sign (fewer transport factors): H_n = gamma_full H_{-(N-n)}
// and H_{-n} = H_{N-n} / gamma_full.
FrozenChain freeze(const std::string& word, const BaseParams& bp,
                   const std::vector<int>& flows, bool simplify = true);

// One hamiltonian assembled directly from its own subset sum, no routing.
Mat hamiltonian_direct(int n, const EvalContext& ctx, Kind kind, bool simplify = true);

// Velocity constants eps A_{i}(x*, +-eta) gamma_i*^{+-1}; i-independent at an
// equilibrium, the mean over i is returned.
cplx v1_constant(const EvalContext& ctx);
cplx vm1_constant(const EvalContext& ctx);

// Max over subsets |I| = |n| of the relative gap between the assembled
// coefficient A_{+-I}(x*) gamma_I*^{+-1} and its closed form
// (v_{+-1}/eps)^|n| prod_{m<m'} theta(d)^2 / (theta(d+eta) theta(d-eta)).
double two_path_coefficient_residual(const EvalContext& ctx, int n);

// || sum_j d/dx_j M_n ||_F / max_j || d/dx_j M_n ||_F at a generic phase
// point, every d/dx_j assembled analytically through the transport factors.
double translation_invariance_residual(int n, const std::vector<cplx>& x,
                                       const std::vector<cplx>& p, Kind k,
                                       const ModelParams& pr);

// Poisson bracket {D_n^cl, M_m} at pt (entrywise, scale-free); vanishes at an
// equilibrium, order one away from it.
double freezing_bracket_residual(int n, int m, const PhasePoint& pt, Kind k,
                                 const ModelParams& pr);

}  // namespace ellspin
