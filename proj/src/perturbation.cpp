#include "moment_strata/perturbation.hpp"

#include <algorithm>

namespace moment_strata {

WeightedModel shifted_model(const WeightedModel& model, const LieVector& eps) {
  if (eps.size() != model.rank()) throw RankMismatch("epsilon has the wrong length");
  auto factors = model.factors;
  for (auto& a : factors.front()) a -= eps;
  return WeightedModel(model.form, std::move(factors));
}

namespace {

std::vector<LieVector> shifted_points(const WeightedModel& model, const SupportProfile& p, const LieVector& eps) {
  auto pts = minkowski_points(model, p);
  for (auto& x : pts) x -= eps;
  return pts;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

std::optional<SupportProfile> genericity_witness(const WeightedModel& model, const LieVector& eps) {
  if (eps.size() != model.rank()) throw RankMismatch("epsilon has the wrong length");
  // The unshifted model is enumerated: its identical-factor reduction stays
  // valid because the shift moves every Minkowski sum by the same vector.
  std::optional<SupportProfile> witness;
  for_each_profile(model, [&](const SupportProfile& p) {
    auto pts = shifted_points(model, p, eps);
    if (origin_in_hull(pts) && !origin_in_interior(pts, model.rank())) {
      witness = p;
      return false;
    }
    return true;
  });
  return witness;
}

bool is_generic(const WeightedModel& model, const LieVector& eps) { return !genericity_witness(model, eps); }

Epsilon propose_epsilon(const WeightedModel& model, int prime_budget) {
  std::optional<Rational> min_norm;
  for (const auto& s : index_set(model)) {
    if (is_zero(s.beta)) continue;
    Rational n = model.form.norm2(s.beta);
    if (!min_norm || n < *min_norm) min_norm = n;
  }
  std::vector<std::pair<LieVector, SupportProfile>> rejected;
  int tried = 0;
  for (int m = 97; tried < prime_budget; ++m) {
    if (!is_prime(m)) continue;
    ++tried;
    LieVector eps(model.rank());
    Rational step(1, m);
    Rational power = step;
    for (Eigen::Index i = 0; i < model.rank(); ++i, power *= step) eps(i) = power;
    if (min_norm && !(4 * model.form.norm2(eps) < *min_norm)) {
      rejected.emplace_back(eps, SupportProfile{});
      continue;
    }
    if (auto w = genericity_witness(model, eps)) {
      rejected.emplace_back(eps, *w);
      continue;
    }
    return Epsilon{eps, true};
  }
  throw EpsilonSearchFailed("no generic epsilon within " + std::to_string(prime_budget) + " primes",
                            std::move(rejected));
}

std::vector<RefinementEntry> refinement_report(const WeightedModel& model, const LieVector& eps) {
  std::vector<RefinementEntry> out;
  for_each_profile(model, [&](const SupportProfile& p) {
    LieVector child = closest_point_to_origin(shifted_points(model, p, eps), model.form).beta;
    LieVector parent = classify(model, p).beta;
    for (const auto& e : out) {
      if (!equal(e.eps_beta, child)) continue;
      if (!equal(e.parent, parent)) {
        throw RefinementViolation("perturbed stratum " + to_string(child) + " lies over both " +
                                      to_string(e.parent) + " and " + to_string(parent),
                                  e.witness, p);
      }
      return true;
    }
    out.push_back(RefinementEntry{child, parent, p});
    return true;
  });
  std::sort(out.begin(), out.end(), [](const RefinementEntry& a, const RefinementEntry& b) {
    if (!equal(a.parent, b.parent)) return lex_less(a.parent, b.parent);
    return lex_less(a.eps_beta, b.eps_beta);
  });
  return out;
}

std::size_t fiber_size(const std::vector<RefinementEntry>& report, const LieVector& parent) {
  return static_cast<std::size_t>(std::count_if(report.begin(), report.end(), [&](const RefinementEntry& e) {
    return equal(e.parent, parent);
  }));
}

namespace {

// t^codim P(S_beta) summed over components; the semistable series for beta = 0.
TruncatedSeries stratum_series(SeriesEngine& engine, const WeightedModel& model,
                               const std::vector<StratumTerm>& terms, const LieVector& beta, int degree) {
  if (is_zero(beta)) return engine.semistable(model, degree);
  TruncatedSeries s(degree);
  for (const auto& t : terms) {
    if (equal(t.beta, beta)) s += t.series;
  }
  return s;
}

}  // namespace

RefinementPerfectionReport refinement_perfection_check(const WeightedModel& model, const LieVector& eps,
                                                       int degree) {
  RefinementPerfectionReport report;
  const auto map = refinement_report(model, eps);
  const WeightedModel shifted = shifted_model(model, eps);
  SeriesEngine engine;
  const auto terms = engine.unstable_terms(model, degree);
  const auto shifted_terms = engine.unstable_terms(shifted, degree);
  for (const auto& s : index_set(model)) {
    TruncatedSeries lhs = stratum_series(engine, model, terms, s.beta, degree);
    TruncatedSeries rhs(degree);
    for (const auto& e : map) {
      if (equal(e.parent, s.beta)) rhs += stratum_series(engine, shifted, shifted_terms, e.eps_beta, degree);
    }
    if (!(lhs == rhs)) {
      report.ok = false;
      report.detail = "stratum " + to_string(s.beta) + ": " + lhs.to_string() + " vs refined " + rhs.to_string();
      return report;
    }
  }
  return report;
}

}  // namespace moment_strata
