#include "ellspin/permutations.hpp"

#include <algorithm>
#include <stdexcept>

namespace ellspin {

Permutation::Permutation(std::vector<int> oneline) : line_(std::move(oneline)) {
  std::vector<bool> seen(line_.size() + 1, false);
  for (int v : line_) {
    if (v < 1 || v > static_cast<int>(line_.size()) || seen[static_cast<std::size_t>(v)]) {
      throw std::domain_error("invalid one-line permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int N) {
  std::vector<int> l(static_cast<std::size_t>(N));
  for (int k = 1; k <= N; ++k) l[static_cast<std::size_t>(k - 1)] = k;
  return Permutation(std::move(l));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(line_.size());
  for (int k = 1; k <= size(); ++k) inv[static_cast<std::size_t>((*this)(k)-1)] = k;
  return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& v) const {
  if (size() != v.size()) throw std::domain_error("size mismatch in composition");
  std::vector<int> l(line_.size());
  for (int k = 1; k <= size(); ++k) l[static_cast<std::size_t>(k - 1)] = (*this)(v(k));
  return Permutation(std::move(l));
}

int Permutation::inversions() const {
  int c = 0;
  for (int a = 1; a <= size(); ++a)
    for (int b = a + 1; b <= size(); ++b)
      if ((*this)(a) > (*this)(b)) ++c;
  return c;
}

namespace {

// Sort one-line by adjacent swaps; the recorded swap positions, reversed,
// form a reduced word (every swap removes exactly one inversion).
std::vector<int> sort_word(const Permutation& w, bool left_to_right) {
  std::vector<int> arr = w.oneline();
  const int N = w.size();
  std::vector<int> swaps;
  bool moved = true;
  while (moved) {
    moved = false;
    if (left_to_right) {
      for (int j = 1; j < N; ++j) {
        if (arr[static_cast<std::size_t>(j - 1)] > arr[static_cast<std::size_t>(j)]) {
          std::swap(arr[static_cast<std::size_t>(j - 1)], arr[static_cast<std::size_t>(j)]);
          swaps.push_back(j);
          moved = true;
        }
      }
    } else {
      for (int j = N - 1; j >= 1; --j) {
        if (arr[static_cast<std::size_t>(j - 1)] > arr[static_cast<std::size_t>(j)]) {
          std::swap(arr[static_cast<std::size_t>(j - 1)], arr[static_cast<std::size_t>(j)]);
          swaps.push_back(j);
          moved = true;
        }
      }
    }
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

}  // namespace

std::vector<int> canonical_word(const Permutation& w) { return sort_word(w, true); }
std::vector<int> alternative_word(const Permutation& w) { return sort_word(w, false); }

Permutation from_word(const std::vector<int>& word, int N) {
  std::vector<int> arr(static_cast<std::size_t>(N));
  for (int k = 1; k <= N; ++k) arr[static_cast<std::size_t>(k - 1)] = k;
  for (int j : word) {
    if (j < 1 || j >= N) throw std::domain_error("word letter out of range");
    std::swap(arr[static_cast<std::size_t>(j - 1)], arr[static_cast<std::size_t>(j)]);
  }
  return Permutation(std::move(arr));
}

GrassPair grassmannian(const std::vector<int>& I, int N) {
  const int n = static_cast<int>(I.size());
  if (!std::is_sorted(I.begin(), I.end())) throw std::domain_error("subset must be ascending");
  std::vector<bool> in(static_cast<std::size_t>(N) + 1, false);
  for (int i : I) {
    if (i < 1 || i > N || in[static_cast<std::size_t>(i)]) throw std::domain_error("bad subset");
    in[static_cast<std::size_t>(i)] = true;
  }
  std::vector<int> comp;
  for (int k = 1; k <= N; ++k)
    if (!in[static_cast<std::size_t>(k)]) comp.push_back(k);

  std::vector<int> wI(I);
  wI.insert(wI.end(), comp.begin(), comp.end());
  std::vector<int> wmI(comp);
  wmI.insert(wmI.end(), I.begin(), I.end());

  std::vector<int> word_wI_inv;
  for (int m = n; m >= 1; --m) {
    for (int j = m; j <= I[static_cast<std::size_t>(m - 1)] - 1; ++j) word_wI_inv.push_back(j);
  }
  std::vector<int> word_wmI_inv;
  for (int m = 1; m <= n; ++m) {
    for (int j = N - n + m - 1; j >= I[static_cast<std::size_t>(m - 1)]; --j) {
      word_wmI_inv.push_back(j);
    }
  }

  GrassPair g{Permutation(wI), Permutation(wmI), std::move(word_wI_inv),
              std::move(word_wmI_inv)};
  if (!(from_word(g.word_wI_inv, N) == g.w_I.inverse()) ||
      !(from_word(g.word_wmI_inv, N) == g.w_mI.inverse())) {
    throw std::logic_error("grassmannian block words failed self-check");
  }
  return g;
}

Mat p_word(const std::vector<int>& word, const std::vector<cplx>& x, Kind k,
           const ModelParams& pr, FactorCache& cache, std::vector<PwFactor>* factors) {
  const std::size_t dim = spin_dim(pr.r, pr.N);
  Mat M = Mat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<cplx> y(x);
  std::vector<int> idx(x.size());
  for (std::size_t t = 0; t < idx.size(); ++t) idx[t] = static_cast<int>(t) + 1;
  if (factors) factors->assign(word.size(), PwFactor{});

  for (std::size_t kk = word.size(); kk-- > 0;) {
    const int j = word[kk];
    const cplx u = y[static_cast<std::size_t>(j - 1)] - y[static_cast<std::size_t>(j)];
    if (factors) {
      (*factors)[kk] = PwFactor{j, u, idx[static_cast<std::size_t>(j - 1)],
                                idx[static_cast<std::size_t>(j)]};
    }
    M = cache.get(k, j, u, pr).P * M;
    std::swap(y[static_cast<std::size_t>(j - 1)], y[static_cast<std::size_t>(j)]);
    std::swap(idx[static_cast<std::size_t>(j - 1)], idx[static_cast<std::size_t>(j)]);
  }
  return M;
}

Mat p_w(const Permutation& w, const std::vector<cplx>& x, Kind k, const ModelParams& pr,
        FactorCache& cache) {
  return p_word(canonical_word(w), x, k, pr, cache, nullptr);
}

std::vector<std::vector<int>> subsets_of_size(int N, int n) {
  std::vector<std::vector<int>> out;
  if (n < 0 || n > N) return out;
  std::vector<int> cur(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) cur[static_cast<std::size_t>(t)] = t + 1;
  for (;;) {
    out.push_back(cur);
    int t = n - 1;
    while (t >= 0 && cur[static_cast<std::size_t>(t)] == N - (n - 1 - t)) --t;
    if (t < 0) break;
    ++cur[static_cast<std::size_t>(t)];
    for (int s = t + 1; s < n; ++s) cur[static_cast<std::size_t>(s)] = cur[static_cast<std::size_t>(s - 1)] + 1;
  }
  return out;
}

}  // namespace ellspin
