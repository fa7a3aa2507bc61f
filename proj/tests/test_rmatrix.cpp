#include <doctest.h>

#include "ellspin/rmatrix.hpp"
#include "ellspin/sampling.hpp"
#include "oracles.hpp"

using namespace ellspin;
using testing::rel_gap;

namespace {

ModelParams params_r2(int N) {
  ModelParams pr;
  pr.r = 2;
  pr.N = N;
  pr.eta = cplx(0.23, 0.05);
  pr.lat = Lattice(cplx(0.13, 0.71));
  pr.dyn_a = {cplx(0.11, 0.21), cplx(0.52, -0.09)};
  return pr;
}

// reference entries computed with 30-digit arithmetic at
// u = 0.31 - 0.11i, eta = 0.23 + 0.05i, tau = 0.13 + 0.71i
const cplx kVxDiag(1.0123582745798895, -0.0020128579573043488);
const cplx kVxCorner(0.24623505981831715, 0.092497120196375056);
const cplx kVxMid(0.87494409418794053, -0.20112483010554982);
const cplx kVxSwap(0.68728371388264066, 0.11443335408643473);

}  // namespace

TEST_SUITE("rmatrix") {
  TEST_CASE("frozen vertex entries") {
    const ModelParams pr = params_r2(2);
    const cplx u(0.31, -0.11);
    const Mat R = r_vertex(u, pr).R;
    Mat want(4, 4);
    want << kVxDiag, 0, 0, kVxCorner,
            0, kVxMid, kVxSwap, 0,
            0, kVxSwap, kVxMid, 0,
            kVxCorner, 0, 0, kVxDiag;
    CHECK(rel_gap(R, want) < 1e-12);
  }

  TEST_CASE("frozen face entries") {
    const ModelParams pr = params_r2(2);
    const cplx u(0.31, -0.11);
    const Mat R = r_face(u, pr.dyn_a, pr).R;
    Mat want = Mat::Zero(4, 4);
    want(0, 0) = want(3, 3) = 1.0;
    want(1, 1) = cplx(0.68874223173985147, 0.19645378453921752);
    want(1, 2) = cplx(0.33842495836380822, 0.62902197819335839);
    want(2, 1) = cplx(0.21830004315265997, -0.19856769917914473);
    want(2, 2) = cplx(0.41223487538782235, -0.75419637213745303);
    CHECK(rel_gap(R, want) < 1e-12);
  }

  TEST_CASE("vertex ice rule is exact") {
    const ModelParams pr = params_r2(2);
    Sampler smp(21);
    for (int t = 0; t < 5; ++t) {
      CHECK(vertex_ice_rule_exact(smp.cell_point(pr), pr));
    }
  }

  TEST_CASE("unitarity, braid relation, distance, initial condition") {
    ModelParams pr = params_r2(4);
    pr.eta = cplx(0.23, 0.0) / 4.0;  // keep shifted differences off the lattice
    ModelParams pr_small(pr);
    pr_small.eta = cplx(1e-5, 0.0);
    Sampler smp(22);
    for (Kind k : {Kind::Vertex, Kind::Face}) {
      for (int t = 0; t < 6; ++t) {
        const cplx u = smp.cell_point(pr);
        const cplx v = smp.cell_point(pr);
        CHECK(unitarity_residual(k, 1, u, pr) < 1e-10);
        CHECK(ybe_residual(k, 1, u, v, pr) < 1e-10);
        CHECK(distance_commutativity_residual(k, 1, 3, u, v, pr) < 1e-10);
        CHECK(initial_condition_residual(k, 2, u, pr_small) < 1e-4);
      }
    }
  }

  TEST_CASE("derivatives against finite differences") {
    const ModelParams pr = params_r2(3);
    const double h = 1e-5;
    Sampler smp(23);
    for (Kind k : {Kind::Vertex, Kind::Face}) {
      const cplx u = smp.cell_point(pr);
      const PexPair pp = deformed_permutation(k, 1, u, pr);
      const Mat pp_p = deformed_permutation(k, 1, u + h, pr).P;
      const Mat pp_m = deformed_permutation(k, 1, u - h, pr).P;
      CHECK(rel_gap(pp.dP, Mat((pp_p - pp_m) / (2.0 * h))) < 1e-8);
      CHECK((pp.d2P - (pp_p - 2.0 * pp.P + pp_m) / (h * h)).norm() /
                std::max(1.0, pp.d2P.norm()) <
            1e-5);

      const HPair hp = h_interaction(k, 2, u, pr);
      const Mat h_p = h_interaction(k, 2, u + h, pr).h;
      const Mat h_m = h_interaction(k, 2, u - h, pr).h;
      CHECK(rel_gap(hp.dh, Mat((h_p - h_m) / (2.0 * h))) < 1e-8);
    }
  }

  TEST_CASE("deformed permutation inverts at negated argument") {
    const ModelParams pr = params_r2(3);
    Sampler smp(24);
    for (Kind k : {Kind::Vertex, Kind::Face}) {
      const cplx u = smp.cell_point(pr);
      const Mat P = deformed_permutation(k, 1, u, pr).P;
      const Mat Pm = deformed_permutation(k, 1, -u, pr).P;
      CHECK(rel_gap(P * Pm, Mat::Identity(8, 8)) < 1e-11);
    }
  }

  TEST_CASE("scalar kind is trivial") {
    ModelParams pr = params_r2(3);
    pr.r = 1;
    pr.dyn_a.clear();
    const PexPair pp = deformed_permutation(Kind::ScalarTrivial, 1, cplx(0.21, 0.04), pr);
    CHECK(pp.P.rows() == 1);
    CHECK(rel_gap(pp.P(0, 0), cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(pp.dP(0, 0)) < 1e-15);
    const HPair hp = h_interaction(Kind::ScalarTrivial, 1, cplx(0.21, 0.04), pr);
    CHECK(hp.h.norm() < 1e-15);
  }

  TEST_CASE("parameter validation") {
    ModelParams pr = params_r2(3);
    pr.eta = cplx(0.0, 0.0);
    CHECK_THROWS_AS(pr.validate(), std::domain_error);
    ModelParams pr2 = params_r2(3);
    pr2.dyn_a.pop_back();
    CHECK_THROWS_AS(deformed_permutation(Kind::Face, 1, cplx(0.2, 0.0), pr2),
                    std::domain_error);
    CHECK_THROWS_AS(kind_from_string("weird"), std::domain_error);
    CHECK(kind_from_string("vertex") == Kind::Vertex);
    CHECK(kind_to_string(Kind::Face) == "face");
  }

  TEST_CASE("factor cache memoises") {
    const ModelParams pr = params_r2(3);
    FactorCache cache;
    const cplx u(0.31, -0.11);
    const Mat a = cache.get(Kind::Vertex, 1, u, pr).P;
    CHECK(cache.size() == 1);
    const Mat b = cache.get(Kind::Vertex, 1, u, pr).P;
    CHECK(cache.size() == 1);
    CHECK(rel_gap(a, b) == 0.0);
    cache.get(Kind::Vertex, 2, u, pr);
    CHECK(cache.size() == 2);
  }
}
