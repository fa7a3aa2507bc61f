#pragma once

#include <vector>

#include "ellspin/rmatrix.hpp"

namespace ellspin {

// Permutation of {1..N} in one-line notation.  Composition is right-to-left:
// (w*v)(k) = w(v(k)).  Multiplying on the right by the adjacent transposition
// s_j swaps the one-line entries at positions j, j+1.
class Permutation {
 public:
  explicit Permutation(std::vector<int> oneline);
  static Permutation identity(int N);

  int size() const { return static_cast<int>(line_.size()); }
  int operator()(int k) const { return line_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<int>& oneline() const { return line_; }

  Permutation inverse() const;
  Permutation operator*(const Permutation& v) const;
  bool operator==(const Permutation& o) const { return line_ == o.line_; }
  int inversions() const;

 private:
  std::vector<int> line_;
};

// Reduced words as lists of adjacent-transposition indices j (1 <= j <= N-1),
// leftmost factor first: w = s_{j_1} s_{j_2} ... s_{j_l}.
std::vector<int> canonical_word(const Permutation& w);    // left-to-right sort scan
std::vector<int> alternative_word(const Permutation& w);  // right-to-left sort scan
Permutation from_word(const std::vector<int>& word, int N);

// Minimal-length coset representatives attached to a subset I of {1..N}:
// w_I places I at the front (w_I(k) = i_k), complement ascending after; the
// mirror permutation is the one attached to the complement.  The stored words
// are the block-structured reduced words of the inverses used by the chain
// assembly; block m of word_wI_inv is (s_m, ..., s_{i_m - 1}) with blocks in
// decreasing m, block m of word_wmI_inv is (s_{N-n+m-1}, ..., s_{i_m})
// descending with blocks in increasing m.
struct GrassPair {
  Permutation w_I;
  Permutation w_mI;
  std::vector<int> word_wI_inv;
  std::vector<int> word_wmI_inv;
};
GrassPair grassmannian(const std::vector<int>& I, int N);

// One factor of the unfolded product representation of P_w(x): acts on sites
// (j, j+1) with spectral argument u = x_alpha - x_beta, alpha/beta being the
// ORIGINAL coordinate labels (1-based).  Needed for analytic differentiation
// of the product in a chosen coordinate.
struct PwFactor {
  int j;
  cplx u;
  int alpha;
  int beta;
};

// Transport cocycle evaluation: unfolds the word right to left, feeding each
// factor the current (partially permuted) coordinates.  Returns the full
// product, leftmost factor = first word letter.  x[i-1] holds x_i.
Mat p_word(const std::vector<int>& word, const std::vector<cplx>& x, Kind k,
           const ModelParams& pr, FactorCache& cache,
           std::vector<PwFactor>* factors = nullptr);

Mat p_w(const Permutation& w, const std::vector<cplx>& x, Kind k,
        const ModelParams& pr, FactorCache& cache);

// All n-element subsets of {1..N}, each ascending, lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int N, int n);

}  // namespace ellspin
