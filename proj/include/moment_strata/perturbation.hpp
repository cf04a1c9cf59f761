#pragma once

#include "moment_strata/series.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace moment_strata {

struct Epsilon {
  LieVector vector;
  bool genericity_certified = false;
};

/// Replaces the weights of the first factor by alpha - eps; every profile's sums shift by -eps.
WeightedModel shifted_model(const WeightedModel& model, const LieVector& eps);

/// A profile that is semistable but not stable for the eps-shifted model, if any.
std::optional<SupportProfile> genericity_witness(const WeightedModel& model, const LieVector& eps);

bool is_generic(const WeightedModel& model, const LieVector& eps);

class EpsilonSearchFailed : public std::runtime_error {
 public:
  EpsilonSearchFailed(const std::string& what, std::vector<std::pair<LieVector, SupportProfile>> witnesses)
      : std::runtime_error(what), witnesses(std::move(witnesses)) {}
  std::vector<std::pair<LieVector, SupportProfile>> witnesses;  // rejected eps and why
};

/// Tries eps = (1/M, 1/M^2, ..., 1/M^r) for primes M = 97, 101, 103, ... (at most
/// `prime_budget` of them) until eps is generic and |eps|^2 < |beta|^2 / 4 for every
/// nonzero beta in the index set.
Epsilon propose_epsilon(const WeightedModel& model, int prime_budget = 24);

class RefinementViolation : public std::runtime_error {
 public:
  RefinementViolation(const std::string& what, SupportProfile first, SupportProfile second)
      : std::runtime_error(what), first(std::move(first)), second(std::move(second)) {}
  SupportProfile first;
  SupportProfile second;
};

struct RefinementEntry {
  LieVector eps_beta;   // index of the perturbed stratum
  LieVector parent;     // unperturbed index containing it
  SupportProfile witness;
};

/// The map from perturbed strata to unperturbed parents, checked to be a
/// function over all profiles. Sorted by parent then perturbed index.
std::vector<RefinementEntry> refinement_report(const WeightedModel& model, const LieVector& eps);

/// Number of perturbed strata over `parent`.
std::size_t fiber_size(const std::vector<RefinementEntry>& report, const LieVector& parent);

struct RefinementPerfectionReport {
  bool ok = true;
  std::string detail;
};

/// For every parent beta: t^codim P(S_beta) summed over components equals the sum
/// of t^codim P(S^eps) over the perturbed strata mapping to beta (beta = 0 uses the
/// semistable series on both sides of its fiber).
RefinementPerfectionReport refinement_perfection_check(const WeightedModel& model, const LieVector& eps,
                                                       int degree);

}  // namespace moment_strata
