#pragma once

#include "moment_strata/convex.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace moment_strata {

enum class WeylKind { Trivial, SL2, SL3TorusWeyl };

std::string to_string(WeylKind kind);
WeylKind parse_weyl_kind(std::string_view name);

/// Weyl group elements as matrices acting on t (identity included, first).
std::vector<RationalMatrix> weyl_elements(WeylKind kind, Eigen::Index rank);

/// Linear torus action on a product of projective spaces. Factor i carries
/// the weights of T on the underlying vector space of its projective space.
struct WeightedModel {
  BilinearForm form;
  std::vector<std::vector<LieVector>> factors;
  WeylKind weyl = WeylKind::Trivial;

  /// Validates lengths, nonempty factors and Weyl invariance of the form.
  WeightedModel(BilinearForm form, std::vector<std::vector<LieVector>> factors,
                WeylKind weyl = WeylKind::Trivial);

  Eigen::Index rank() const { return form.rank(); }
  std::size_t total_slots() const;
};

/// P_n with rank-1 weights, identity form.
WeightedModel pn_model(const std::vector<Rational>& weights, WeylKind weyl = WeylKind::Trivial);

/// The SL(2) torus weights {n, n-2, ..., -n} on binary forms of degree n.
std::vector<Rational> sl2_weights(int n);

/// (P_1)^n with weights (1), (-1) on each factor.
WeightedModel p1n_model(int n, WeylKind weyl = WeylKind::Trivial);

/// Per factor, the ascending indices of nonzero coordinates.
using SupportProfile = std::vector<std::vector<std::size_t>>;

std::string to_string(const SupportProfile& profile);

/// Throws std::invalid_argument when a factor's coordinate vector is zero or has the wrong length.
SupportProfile support_of_point(const WeightedModel& model,
                                const std::vector<std::vector<Rational>>& coordinates);

/// Cross-factor sums of supported weights, deduplicated, first occurrence kept.
std::vector<LieVector> minkowski_points(const WeightedModel& model, const SupportProfile& profile);

struct StratumIndex {
  LieVector beta;
  ProjectionCertificate certificate;   // indexes into `points`
  std::vector<LieVector> points;       // Minkowski points of `profile`
  SupportProfile profile;              // a witness profile classifying to beta
};

StratumIndex classify(const WeightedModel& model, const SupportProfile& profile);
bool is_semistable(const WeightedModel& model, const SupportProfile& profile);
bool is_stable(const WeightedModel& model, const SupportProfile& profile);

/// Visits every support profile. Runs of consecutive identical factors are
/// visited once per multiset of supports (nondecreasing masks), which leaves
/// every Minkowski point set represented. Return false from `visit` to stop.
void for_each_profile(const WeightedModel& model,
                      const std::function<bool(const SupportProfile&)>& visit);

/// The index set B: distinct betas over all profiles, sorted by norm then lexicographically.
std::vector<StratumIndex> index_set(const WeightedModel& model);

/// A strictly semistable profile (in hull, not interior), if any.
std::optional<SupportProfile> strictly_semistable_witness(const WeightedModel& model);

struct ZComponent {
  std::vector<Rational> values;                // v_i per factor
  std::vector<std::vector<std::size_t>> indices;  // indices attaining v_i
};

/// All per-factor value tuples with sum <beta, beta>.
std::vector<ZComponent> z_components(const WeightedModel& model, const LieVector& beta);

/// Real codimension 2 * #{(i,k) : <alpha_ik, beta> < v_i}.
int codim(const WeightedModel& model, const LieVector& beta, const ZComponent& component);

/// Attaining weights shifted by -(v_i/|beta|^2) beta so that every weight pairs to 0 with beta.
/// Throws std::invalid_argument for beta = 0.
WeightedModel shifted_submodel(const WeightedModel& model, const LieVector& beta,
                               const ZComponent& component);

/// (total weight slots, dimension of the linear span of all Minkowski sums).
/// Strictly decreases lexicographically from a model to any of its shifted submodels.
std::pair<std::size_t, int> recursion_measure(const WeightedModel& model);

/// Profile with every index of every factor.
SupportProfile full_profile(const WeightedModel& model);

}  // namespace moment_strata
