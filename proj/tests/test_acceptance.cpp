// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include "moment_strata/config.hpp"
#include "moment_strata/kirwan.hpp"
#include "moment_strata/linalg.hpp"
#include "moment_strata/perturbation.hpp"
#include "moment_strata/residue.hpp"
#include "moment_strata/series.hpp"
#include "oracle_projection.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace moment_strata;
using testing_support::Q;
using testing_support::Rng;
using testing_support::V;

namespace {

// Collects the first few failure messages of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 3) detail_ << (failed_ > 1 ? "; " : "") << what;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream out;
    out << total_ - failed_ << "/" << total_ << " checks";
    if (failed_ > 0) out << ": " << detail_.str();
    return out.str();
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::ostringstream detail_;
};

std::string str(const TruncatedSeries& s) { return s.to_string(false); }

TruncatedSeries poly(std::vector<long> c) {
  std::vector<Rational> q(c.begin(), c.end());
  return TruncatedSeries(static_cast<int>(q.size()) - 1, q);
}

WeightedModel random_pn(Rng& rng, Eigen::Index rank, int n) {
  std::vector<LieVector> w;
  for (int k = 0; k <= n; ++k) w.push_back(rng.vector(rank, 3, 2));
  return WeightedModel(BilinearForm::identity(rank), {w});
}

// 1. The index set of P_n with weights {n, n-2, ..., -n} is {0} and every 2j - n.
void index_sets(Check& c) {
  for (int n = 1; n <= 8; ++n) {
    std::set<Rational> got;
    for (const auto& s : index_set(pn_model(sl2_weights(n)))) got.insert(s.beta(0));
    std::set<Rational> want{0};
    for (int j = 0; j <= n; ++j) want.insert(2 * j - n);
    c.expect(got == want, "P_" + std::to_string(n));
  }
}

// 2. Perfection to degree 40, before and after perturbation.
void perfection(Check& c) {
  std::vector<std::pair<std::string, WeightedModel>> models;
  for (int n = 1; n <= 6; ++n) models.emplace_back("P_" + std::to_string(n), pn_model(sl2_weights(n)));
  Rng rng(2024);
  for (int t = 0; t < 25; ++t) {
    const Eigen::Index rank = t % 2 == 0 ? 1 : 2;
    const int n = static_cast<int>(rng.integer(1, 6));
    models.emplace_back("random P_" + std::to_string(n) + " rank " + std::to_string(rank), random_pn(rng, rank, n));
  }
  for (int n = 1; n <= 6; ++n) models.emplace_back("(P_1)^" + std::to_string(n), p1n_model(n));
  for (const auto& [name, m] : models) {
    const auto base = perfection_check(m, 40);
    c.expect(base.ok, name + ": " + base.detail);
    const auto eps = propose_epsilon(m);
    c.expect(eps.genericity_certified, name + ": epsilon not certified");
    const auto shifted = perfection_check(shifted_model(m, eps.vector), 40);
    c.expect(shifted.ok, name + " perturbed: " + shifted.detail);
    const auto refined = refinement_perfection_check(m, eps.vector, 40);
    c.expect(refined.ok, name + " refinement: " + refined.detail);
  }
}

// 3. Series recursion, kernel ideal and pairing corank agree degree by degree.
void cross_route(Check& c) {
  struct Case {
    std::string name;
    Presentation pres;
    Group group;
    TruncatedSeries expected;
  };
  // Frozen values: a point, the weighted projective plane P(1,2,3), a point,
  // the blowup of P_2 in four points, and P_2.
  std::vector<Case> cases{
      {"P_3//SL(2)", torus_pn_presentation(sl2_weights(3), WeylKind::SL2), Group::SL2, poly({1})},
      {"P_5//SL(2)", torus_pn_presentation(sl2_weights(5), WeylKind::SL2), Group::SL2, poly({1, 0, 1, 0, 1})},
      {"(P_1)^3//SL(2)", p1n_presentation(3), Group::SL2, poly({1})},
      {"(P_1)^5//SL(2)", p1n_presentation(5), Group::SL2, poly({1, 0, 5, 0, 1})},
      {"P_3//T", torus_pn_presentation(sl2_weights(3)), Group::Torus, poly({1, 0, 2, 0, 1})},
  };
  for (auto& k : cases) {
    const int top = quotient_real_dimension(k.pres.model, k.group);
    const int span = top + 4;
    TruncatedSeries series = k.group == Group::Torus ? quotient_poincare_polynomial(k.pres.model, 40).padded(span)
                                                     : sl2_quotient_series(k.pres.model, span);
    auto ideal = k.group == Group::Torus ? torus_kernel_ideal(k.pres, span) : sl2_kernel_ideal(k.pres, span);
    const auto expected = k.expected.padded(span);
    for (int d = 0; d <= span; ++d) {
      const int presented = betti_from_presentation(k.pres, ideal, d);
      int paired = 0;
      if (d % 2 == 0) {
        const auto pk = kernel_by_pairing(k.pres, d, k.group);
        paired = pk.ambient_dimension - pk.dimension;
      }
      const std::string at = k.name + " degree " + std::to_string(d);
      c.expect(series[d] == expected[d], at + ": series " + to_string(series[d]));
      c.expect(Rational(presented) == expected[d], at + ": presentation " + std::to_string(presented));
      c.expect(Rational(paired) == expected[d], at + ": pairing " + std::to_string(paired));
    }
  }
}

// 4. Every quotient polynomial that is produced is palindromic with constant term 1.
void duality(Check& c) {
  std::vector<WeightedModel> models;
  for (int n = 1; n <= 8; ++n) models.push_back(pn_model(sl2_weights(n)));
  for (int n = 1; n <= 7; n += 2) models.push_back(p1n_model(n));
  Rng rng(4242);
  for (int t = 0; t < 80; ++t) {
    std::vector<std::vector<LieVector>> fs(static_cast<std::size_t>(rng.integer(1, 2)));
    const Eigen::Index rank = rng.integer(1, 2);
    for (auto& f : fs) {
      const int d = static_cast<int>(rng.integer(1, 4));
      for (int k = 0; k < d; ++k) f.push_back(rng.vector(rank, 3, 2));
    }
    models.emplace_back(BilinearForm::identity(rank), fs);
  }
  int produced = 0;
  for (const auto& m : models) {
    TruncatedSeries q(0);
    try {
      q = quotient_poincare_polynomial(m, 40);
    } catch (const NotCoprimeStable&) {
      continue;
    }
    if (q.top_nonzero() < 0) continue;  // empty quotient
    ++produced;
    const int top = 2 * quotient_complex_dimension(m);
    bool symmetric = q[0] == 1;
    for (int k = 0; k <= top; ++k) symmetric = symmetric && q[k] == q[top - k];
    c.expect(symmetric, str(q));
  }
  c.expect(produced >= 20, "only " + std::to_string(produced) + " quotients produced");
}

// 5. The perturbed stratification refines the original one.
void refinement(Check& c) {
  const auto m4 = p1n_model(4);
  const auto e4 = propose_epsilon(m4);
  c.expect(e4.genericity_certified && is_generic(m4, e4.vector), "(P_1)^4 epsilon not generic");
  const auto r4 = refinement_report(m4, e4.vector);
  c.expect(fiber_size(r4, V({0})) == 2, "(P_1)^4 fiber over 0 has " + std::to_string(fiber_size(r4, V({0}))));
  for (const auto& s : index_set(m4)) {
    if (!is_zero(s.beta)) c.expect(fiber_size(r4, s.beta) == 1, "(P_1)^4 fiber over " + to_string(s.beta));
  }
  const auto m3 = p1n_model(3);
  const auto e3 = propose_epsilon(m3);
  c.expect(e3.genericity_certified && is_generic(m3, e3.vector), "(P_1)^3 epsilon not generic");
  const auto r3 = refinement_report(m3, e3.vector);
  const auto b3 = index_set(m3);
  c.expect(r3.size() == b3.size(), "(P_1)^3 refinement is not a bijection");
  for (const auto& s : b3) c.expect(fiber_size(r3, s.beta) == 1, "(P_1)^3 fiber over " + to_string(s.beta));
  // Genericity: every perturbed semistable profile is stable.
  for (const auto& [m, e] : {std::pair{m4, e4.vector}, std::pair{m3, e3.vector}}) {
    const auto sm = shifted_model(m, e);
    bool ok = true;
    for_each_profile(sm, [&](const SupportProfile& p) {
      ok = ok && is_semistable(sm, p) == is_stable(sm, p);
      return true;
    });
    c.expect(ok, "perturbed model has a strictly semistable profile");
  }
}

// 6. Multiplication by D carries ker rho onto the anti-invariant part of ker rho_T.
void lemma_ff(Check& c) {
  std::vector<std::pair<std::string, Presentation>> cases{
      {"P_3", torus_pn_presentation(sl2_weights(3), WeylKind::SL2)},
      {"P_5", torus_pn_presentation(sl2_weights(5), WeylKind::SL2)},
      {"(P_1)^4", p1n_presentation(4)}};
  for (const auto& [name, pres] : cases) {
    const auto report = lemma_ff_check(pres, 12);
    std::set<int> degrees;
    for (const auto& r : report.rows) {
      degrees.insert(r.degree);
      const std::string at = name + " degree " + std::to_string(r.degree);
      c.expect(r.d_kernel_dim == r.torus_anti_dim, at + ": dimensions differ");
      c.expect(r.forward && r.backward && r.round_trip, at + ": membership");
    }
    for (int d = 0; d <= 12; d += 2) {
      c.expect(degrees.count(d) == 1 || d + 2 > 12, name + ": degree " + std::to_string(d) + " not checked");
    }
    c.expect(report.ok, name + ": report not ok");
  }
}

// 7. The fixed-point vanishing kernel equals the Thom-Gysin kernel.
void lemma_ee(Check& c) {
  for (int n : {3, 5}) {
    const auto report = lemma_ee_check(torus_pn_presentation(sl2_weights(n)), 12);
    for (const auto& r : report.rows) {
      c.expect(r.ee_dim == r.tg_dim && r.same_span, "P_" + std::to_string(n) + " degree " + std::to_string(r.degree));
    }
    c.expect(report.rows.size() == 7, "P_" + std::to_string(n) + ": expected degrees 0..12");
    c.expect(report.ok, "P_" + std::to_string(n) + ": report not ok");
  }
}

// 8. Exact nearest points against an independent oracle.
void projection(Check& c) {
  Rng rng(5151);
  for (int t = 0; t < 500; ++t) {
    const Eigen::Index r = rng.integer(1, 3);
    const int count = static_cast<int>(rng.integer(1, 7));
    std::vector<LieVector> pts;
    for (int i = 0; i < count; ++i) pts.push_back(rng.vector(r, 5, 4));
    RationalMatrix g = RationalMatrix::Identity(r, r);
    if (t % 3 == 0) {
      RationalMatrix a(r, r);
      for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) a(i, j) = rng.rational(3, 3);
      g = a.transpose() * a + RationalMatrix::Identity(r, r);
    }
    const BilinearForm form(g);
    const auto cert = closest_point_to_origin(pts, form);
    const std::string at = "instance " + std::to_string(t);
    Rational sum = 0;
    bool positive = true;
    for (const auto& x : cert.coefficients) {
      sum += x;
      positive = positive && sgn(x) > 0;
    }
    c.expect(positive && sum == 1, at + ": barycentric coordinates");
    const Rational n2 = form.norm2(cert.beta);
    bool optimal = true;
    for (const auto& p : pts) optimal = optimal && form(p, cert.beta) >= n2;
    c.expect(optimal, at + ": optimality inequality");
    c.expect(verify_certificate(pts, form, cert), at + ": certificate");
    const auto [oracle_n2, oracle_beta] = oracle::nearest(pts, g);
    c.expect(n2 == oracle_n2 && equal(cert.beta, oracle_beta), at + ": oracle disagrees");

    const Rational lambda = Q(rng.integer(1, 9), rng.integer(1, 9));
    std::vector<LieVector> scaled;
    for (const auto& p : pts) scaled.push_back(lambda * p);
    c.expect(equal(closest_point_to_origin(scaled, form).beta, LieVector(lambda * cert.beta)), at + ": scaling");

    std::vector<LieVector> sub;
    for (const auto& p : pts) {
      if (rng.coin()) sub.push_back(p);
    }
    if (!sub.empty()) c.expect(form.norm2(closest_point_to_origin(sub, form).beta) >= n2, at + ": subset monotonicity");
  }
}

ProjPoint pt(std::initializer_list<long> v) {
  std::vector<Rational> q;
  for (long x : v) q.emplace_back(x);
  return ProjPoint(q);
}

RationalMatrix random_invertible(Rng& rng, Eigen::Index size) {
  for (;;) {
    RationalMatrix g(size, size);
    for (Eigen::Index i = 0; i < size; ++i)
      for (Eigen::Index j = 0; j < size; ++j) g(i, j) = rng.rational(3, 2);
    if (linalg::determinant(g) != 0) return g;
  }
}

Config random_config(Rng& rng, std::size_t dim, int n) {
  std::vector<ProjPoint> pool;
  while (pool.size() < 3) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i <= dim; ++i) v.push_back(Q(rng.integer(-2, 2)));
    if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; })) pool.emplace_back(v);
  }
  // Points on lines through the seeds make collinearities frequent.
  for (int extra = 0; extra < 2; ++extra) {
    const auto& a = pool[static_cast<std::size_t>(rng.integer(0, 2))].coords();
    const auto& b = pool[static_cast<std::size_t>(rng.integer(0, 2))].coords();
    const Rational s = Q(rng.integer(-2, 2));
    std::vector<Rational> v;
    for (std::size_t i = 0; i <= dim; ++i) v.push_back(a[i] + s * b[i]);
    if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; })) pool.emplace_back(v);
  }
  Config out;
  for (int i = 0; i < n; ++i) out.push_back(pool[static_cast<std::size_t>(rng.integer(0, static_cast<long>(pool.size()) - 1))]);
  return out;
}

// 9. Worked configuration examples, invariance under 200 transformations, and partition.
void classifiers(Check& c) {
  const auto a = [](long t) { return pt({t, 1}); };
  const ProjPoint inf = pt({1, 0});
  // Ordered points on P_1.
  c.expect(classify_p1_tuple({a(0), a(1), a(2), inf, a(5)}) == StratumLabel{"Stable", "S_{0}"}, "odd n stable");
  c.expect(classify_p1_tuple({a(0), a(0), a(0), a(1), a(2)}) == StratumLabel{"S_{1}", "S_{1}"}, "j = 3 of 5");
  c.expect(classify_p1_tuple({a(3), a(3), a(3), a(3)}) == StratumLabel{"S_{4}", "S_{4}"}, "j = n");
  c.expect(classify_p1_tuple({a(0), a(0), inf, inf}) == StratumLabel{"(T)", "S_{0}"}, "(T)");
  c.expect(classify_p1_tuple({a(0), inf, a(0), a(1), a(0), a(2)}) == StratumLabel{"(T,2)", "S_{0}"}, "(T,2)");
  c.expect(classify_p1_tuple({a(0), a(0), a(1), a(1), a(2), a(2)}).refined == "Stable", "even n stable");
  c.expect(classify_p1_tuple({a(0), a(0), a(0), a(1), a(2), a(3)}).refined == "(T,2)", "half at p, rest distinct");
  // Points of P_2 for n = 6.
  const ProjPoint e1 = pt({1, 0, 0}), e2 = pt({0, 1, 0}), e3 = pt({0, 0, 1});
  c.expect(classify_p2_tuple({e1, e1, e2, e2, e3, e3}).refined == "(T)", "(T)");
  c.expect(classify_p2_tuple({e1, e1, e2, e3, pt({0, 1, 1}), pt({0, 1, 2})}).refined == "(T1)", "(T1)");
  c.expect(classify_p2_tuple({e1, e2, pt({1, 1, 0}), pt({1, 2, 0}), e3, pt({1, 3, 1})}).refined == "(T1,3)", "(T1,3)");
  c.expect(classify_p2_tuple({e1, e1, e2, e3, pt({1, 1, 1}), pt({1, 2, 3})}).refined == "(T1,-3)", "(T1,-3)");
  c.expect(classify_p2_tuple({e1, e1, e2, pt({1, 1, 0}), e3, pt({1, 2, 3})}).refined == "(T,(1/2,0,-1/2))", "(a)");
  c.expect(classify_p2_tuple({e1, e1, e2, e2, e3, pt({1, 2, 3})}).refined == "(T,(1/2,1/2,-1))", "(b)");
  c.expect(classify_p2_tuple({e1, e1, e2, pt({1, 1, 0}), e3, pt({1, 0, 1})}).refined == "(T,(1,-1/2,-1/2))", "(c)");
  c.expect(classify_p2_tuple({e1, e1, e2, pt({1, 1, 0}), e3, e3}).refined == "(T,(1,0,-1))", "(d)");

  Rng rng(9009);
  struct Family {
    ConfigFamily family;
    std::size_t dim;
  };
  const std::vector<Family> families{{ConfigFamily::P1, 1}, {ConfigFamily::Binary, 1}, {ConfigFamily::P2, 2}};
  const std::set<std::string> p1_ss{"Stable", "(T)", "(T,2)"};
  for (const auto& f : families) {
    std::set<std::string> seen;
    for (int trial = 0; trial < 25; ++trial) {
      const int n = static_cast<int>(rng.integer(f.dim == 1 ? 2 : 3, 8));
      const Config config = random_config(rng, f.dim, n);
      const auto label = classify(config, f.family);
      seen.insert(label.refined);
      c.expect(label.coarse == morse_label_of_config(config, f.family), "coarse label of " + to_string(f.family));
      if (f.dim == 1 && label.coarse != "S_{0}") c.expect(label.refined == label.coarse, "unstable label refined");
      if (f.dim == 1 && label.coarse == "S_{0}" && f.family == ConfigFamily::P1) {
        c.expect(p1_ss.count(label.refined) == 1, "semistable label " + label.refined);
      }
      for (int t = 0; t < 200; ++t) {
        const auto moved = transform(random_invertible(rng, static_cast<Eigen::Index>(f.dim + 1)), config);
        c.expect(classify(moved, f.family) == label, to_string(f.family) + " invariance");
      }
    }
    c.expect(seen.size() >= 3, to_string(f.family) + ": too few labels sampled");
  }

  // k of binary forms with a root of multiplicity n/2, under 200 coordinate changes each.
  for (int trial = 0; trial < 10; ++trial) {
    const int m = static_cast<int>(rng.integer(2, 4));
    Config roots(static_cast<std::size_t>(m), a(0));
    for (int i = 0; i < m; ++i) roots.push_back(pt({rng.integer(-3, 3) * 2 + 1, 2}));
    const auto k = binary_form_k(roots);
    if (!k) continue;
    for (int t = 0; t < 200; ++t) {
      c.expect(binary_form_k(transform(random_invertible(rng, 2), roots)) == k, "binary form k invariance");
    }
  }
  // Forms that do not split over Q, under substitutions fixing the multiple root.
  const std::vector<std::pair<std::vector<Rational>, int>> forms{
      {{0, 0, 0, -1, 0, 0, 1}, 3}, {{0, 0, 0, 0, 2, 0, 0, 0, 1}, 4}, {{0, 0, 1, 0, 5}, 2}};
  for (const auto& [f, k] : forms) {
    c.expect(binary_form_k_at_zero(f) == k, "binary form k from coefficients");
    const int n = static_cast<int>(f.size()) - 1;
    for (int t = 0; t < 200; ++t) {
      Rational l = rng.rational(3, 2), s = rng.rational(3, 2);
      if (sgn(l) == 0) l = 1;
      if (sgn(s) == 0) s = 1;
      const Rational sh = rng.rational(3, 2);
      // Coefficients of F(l u, s v + sh u).
      std::vector<Rational> g(f.size(), Rational(0));
      for (int i = 0; i <= n; ++i) {
        Rational binom = 1;
        for (int j = 0; j <= n - i; ++j) {
          if (j > 0) binom = binom * Rational(n - i - j + 1) / Rational(j);
          g[static_cast<std::size_t>(i + j)] += f[static_cast<std::size_t>(i)] * pow(l, static_cast<unsigned>(i)) * binom *
                                                pow(sh, static_cast<unsigned>(j)) * pow(s, static_cast<unsigned>(n - i - j));
        }
      }
      c.expect(binary_form_k_at_zero(g) == k, "binary form k under substitution");
    }
  }
}

// 10. The torus quotient of (P_1)^4 is refused with a half-and-half witness.
void negative_control(Check& c) {
  try {
    quotient_poincare_polynomial(p1n_model(4), 40);
    c.expect(false, "no exception");
  } catch (const NotCoprimeStable& e) {
    std::map<std::vector<std::size_t>, int> counts;
    for (const auto& f : e.witness) counts[f]++;
    const bool half = e.witness.size() == 4 && counts.size() == 2 && counts.begin()->second == 2 &&
                      counts.begin()->first.size() == 1 && std::next(counts.begin())->first.size() == 1;
    c.expect(half, "witness " + to_string(e.witness));
    c.expect(is_semistable(p1n_model(4), e.witness) && !is_stable(p1n_model(4), e.witness), "witness not strictly semistable");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"index sets of P_n, n = 1..8", index_sets},
      {"perfection to degree 40, unperturbed and perturbed", perfection},
      {"series, presentation and pairing Betti numbers agree", cross_route},
      {"Poincare duality of quotient polynomials", duality},
      {"perturbed stratification refines the original", refinement},
      {"multiplication by D between the kernels", lemma_ff},
      {"fixed-point vanishing kernel equals the Thom-Gysin kernel", lemma_ee},
      {"nearest-point certificates on 500 random instances", projection},
      {"configuration classifiers", classifiers},
      {"torus quotient of (P_1)^4 refused with witness", negative_control},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (!check.ok()) ++failures;
    std::cout << (check.ok() ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " (" << check.summary()
              << ", " << ms << " ms)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
