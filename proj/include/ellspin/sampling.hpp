#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "ellspin/rmatrix.hpp"

namespace ellspin {

// Seeded sampling helpers; every randomised test routes through this so runs
// are reproducible from the seed alone.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng_);
  }

  cplx box(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
  }

  int integer(int lo, int hi) {  // inclusive
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng_);
  }

  // A generic complex point within one cell, kept away from the lattice.
  cplx cell_point(const ModelParams& pr, double margin = 0.05) {
    for (int tries = 0; tries < 1000; ++tries) {
      const cplx z = box(-0.5, 0.5, -0.4 * pr.lat.tau().imag(), 0.4 * pr.lat.tau().imag());
      if (lattice_distance(z, pr.lat) >= margin &&
          lattice_distance(z + pr.eta, pr.lat) >= margin &&
          lattice_distance(z - pr.eta, pr.lat) >= margin) {
        return z;
      }
    }
    throw std::runtime_error("cell_point: rejection sampling failed");
  }

  // N coordinates whose pairwise differences, plus each difference shifted by
  // any of `offsets`, stay >= margin (reduced metric) from every lattice
  // translate of {0, +eta, -eta}.
  std::vector<cplx> positions(int N, const ModelParams& pr, const std::vector<cplx>& offsets,
                              double margin = 0.05) {
    const double halfh = 0.4 * pr.lat.tau().imag();
    for (int tries = 0; tries < 2000; ++tries) {
      std::vector<cplx> x;
      x.reserve(static_cast<std::size_t>(N));
      for (int i = 0; i < N; ++i) x.push_back(box(0.0, 1.0, -halfh, halfh));
      bool ok = true;
      for (int i = 0; i < N && ok; ++i) {
        for (int j = 0; j < N && ok; ++j) {
          if (i == j) continue;
          const cplx d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
          for (std::size_t s = 0; s <= offsets.size() && ok; ++s) {
            const cplx base = d + (s == 0 ? cplx(0.0, 0.0) : offsets[s - 1]);
            if (lattice_distance(base, pr.lat) < margin ||
                lattice_distance(base + pr.eta, pr.lat) < margin ||
                lattice_distance(base - pr.eta, pr.lat) < margin) {
              ok = false;
            }
          }
        }
      }
      if (ok) return x;
    }
    throw std::runtime_error("positions: rejection sampling failed; margins too tight?");
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ellspin
