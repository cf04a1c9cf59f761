#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moment_strata/perturbation.hpp"
#include "support.hpp"

using namespace moment_strata;
using testing_support::Q;
using testing_support::Rng;
using testing_support::V;

TEST_CASE("shifted model") {
  auto m4 = p1n_model(4);
  auto s = shifted_model(m4, V({Q(1, 8)}));
  CHECK(equal(s.factors[0][0], V({Q(7, 8)})));
  CHECK(equal(s.factors[0][1], V({Q(-9, 8)})));
  CHECK(equal(s.factors[1][0], V({1})));
  auto p3 = pn_model(sl2_weights(3));
  auto t = shifted_model(p3, V({Q(1, 7)}));
  for (std::size_t k = 0; k < 4; ++k) CHECK(equal(t.factors[0][k], LieVector(p3.factors[0][k] - V({Q(1, 7)}))));
  auto z = shifted_model(m4, V({0}));
  CHECK(canonical_key(z) == canonical_key(m4));
}

TEST_CASE("genericity") {
  auto m4 = p1n_model(4);
  CHECK(is_generic(m4, V({Q(1, 8)})));
  auto w = genericity_witness(m4, V({0}));
  REQUIRE(w);
  auto pts = minkowski_points(m4, *w);
  CHECK(origin_in_hull(pts));
  CHECK_FALSE(origin_in_interior(pts, 1));
  CHECK(is_generic(pn_model(sl2_weights(3)), V({Q(1, 7)})));
}

TEST_CASE("epsilon proposal") {
  auto e = propose_epsilon(p1n_model(4));
  CHECK(e.genericity_certified);
  CHECK(equal(e.vector, V({Q(1, 97)})));
  CHECK(equal(propose_epsilon(pn_model(sl2_weights(3))).vector, V({Q(1, 97)})));
  // Rank 2 uses successive powers.
  WeightedModel r2(BilinearForm::identity(2), {{V({1, 0}), V({-1, 0}), V({0, 1}), V({0, -1})}});
  auto e2 = propose_epsilon(r2);
  CHECK(equal(e2.vector, V({Q(1, 97), Q(1, 97 * 97)})));
  // All weights zero: nothing is semistable after the shift, so the first prime is generic.
  CHECK(propose_epsilon(pn_model({0, 0})).genericity_certified);
  // Tiny betas force the search past its budget.
  try {
    propose_epsilon(pn_model({Q(1, 97), 2}), 1);
    FAIL("expected EpsilonSearchFailed");
  } catch (const EpsilonSearchFailed& err) {
    CHECK(err.witnesses.size() == 1);
  }
}

TEST_CASE("refinement map") {
  auto m4 = p1n_model(4);
  auto eps = propose_epsilon(m4).vector;
  auto map = refinement_report(m4, eps);
  CHECK(fiber_size(map, V({0})) == 2);
  for (auto& e : map) {
    if (!is_zero(e.parent)) CHECK(fiber_size(map, e.parent) == 1);
  }

  auto m3 = p1n_model(3);
  auto map3 = refinement_report(m3, propose_epsilon(m3).vector);
  auto b3 = index_set(m3);
  CHECK(map3.size() == b3.size());
  for (auto& s : b3) CHECK(fiber_size(map3, s.beta) == 1);

  // A far-away one-point hull is its own parent after perturbation.
  auto far = pn_model({5});
  auto mf = refinement_report(far, V({Q(1, 97)}));
  REQUIRE(mf.size() == 1);
  CHECK(equal(mf[0].parent, V({5})));
  CHECK(equal(mf[0].eps_beta, V({5 - Q(1, 97)})));
}

TEST_CASE("perturbed perfection and refinement perfection") {
  for (int n = 1; n <= 5; ++n) {
    auto m = p1n_model(n);
    auto eps = propose_epsilon(m).vector;
    CHECK(perfection_check(shifted_model(m, eps), 40).ok);
    auto rep = refinement_perfection_check(m, eps, 30);
    CHECK_MESSAGE(rep.ok, rep.detail);
  }
  Rng rng(808);
  for (int trial = 0; trial < 12; ++trial) {
    const Eigen::Index r = rng.integer(1, 2);
    std::vector<std::vector<LieVector>> fs(static_cast<std::size_t>(rng.integer(1, 2)));
    for (auto& f : fs) {
      int d = static_cast<int>(rng.integer(1, 4));
      for (int k = 0; k < d; ++k) f.push_back(rng.vector(r, 2, 1));
    }
    WeightedModel m(BilinearForm::identity(r), fs);
    auto eps = propose_epsilon(m);
    REQUIRE(eps.genericity_certified);
    // Certified: semistable and stable coincide profile by profile.
    auto sm = shifted_model(m, eps.vector);
    for_each_profile(sm, [&](const SupportProfile& p) {
      CHECK(is_semistable(sm, p) == is_stable(sm, p));
      return true;
    });
    CHECK(perfection_check(sm, 30).ok);
    auto rep = refinement_perfection_check(m, eps.vector, 24);
    CHECK_MESSAGE(rep.ok, rep.detail);
  }
}
