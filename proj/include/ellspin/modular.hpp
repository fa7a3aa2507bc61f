#pragma once

#include <array>
#include <string>

#include "ellspin/classical.hpp"

namespace ellspin {

// Phase-space point together with every parameter the modular group moves.
struct PhaseData {
  std::vector<cplx> x;
  std::vector<cplx> p;
  cplx eta;
  cplx eps;
  std::vector<cplx> a;  // dynamical weights; empty unless face kind
  cplx tau;
};

// Word in {S, T, s, t} with s = S^{-1}, t = T^{-1}; the rightmost character
// acts first.  S: (x, p) -> (-x/tau, -tau p - (2 pi i eta/eps)(|x| - N x_j) e_j)
// with eta, eps, a -> -(.)/tau and tau -> -1/tau; T: tau -> tau + 1.
PhaseData act(const std::string& word, const PhaseData& d);

// Matrix of the word in SL(2,Z) (same composition order as act).
std::array<std::array<long long, 2>, 2> sl2_of_word(const std::string& word);

double data_distance(const PhaseData& A, const PhaseData& B);

// Base (un-scaled) inputs; the seed chart divides eta, eps, a, omega by N and
// places x_i = i/N with p = 0.
struct BaseParams {
  int N = 4;
  int r = 2;
  Kind kind = Kind::Vertex;
  cplx eta{0.23, 0.0};
  cplx eps{0.31, 0.0};
  cplx omega{0.0, 2.5};
  cplx hbar{0.37, 0.0};
  std::vector<cplx> a;  // size r when kind == Face
};

PhaseData seed_chart(const BaseParams& bp);

// Seed chart transported by a modular word, with matching model parameters.
struct EvalContext {
  PhaseData data;
  ModelParams pr;
  std::string word;
};
EvalContext build_eval_context(const std::string& word, const BaseParams& bp);

// Scalar model parameters matching a phase-data chart.
ModelParams scalar_params_of(const PhaseData& d);

// gen = 'S': residual of D_n(S.d) = c_n(eta) D_n(d), c_n = e^{i pi n(N-n) eta^2/tau};
// gen = 'T': residual of D_n(T.d) = D_n(d).  Normalised by the larger side.
double modular_covariance_residual(char gen, int n, const PhaseData& d);

}  // namespace ellspin
