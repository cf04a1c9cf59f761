#pragma once

// Presentations of H*_T(X) for rank-1 product models and the kernels of the
// restriction maps to the semistable set, built from Thom-Gysin lifts.

#include "moment_strata/graded.hpp"
#include "moment_strata/weighted_model.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace moment_strata {

enum class Group { Torus, SL2 };
enum class Target { Semistable, Stable };

std::string to_string(Group g);
std::string to_string(Target t);
Group parse_group(std::string_view name);
Target parse_target(std::string_view name);

/// H*_T(X) = Q[zeta_1..zeta_m, alpha] / (prod_k (zeta_i + a_ik alpha)) for a
/// rank-1 model with m factors. Variable m is alpha.
struct Presentation {
  WeightedModel model;
  std::vector<std::string> names;
  std::vector<Polynomial> base;
  int real_dimension = 0;
  WeylAction weyl;
  std::shared_ptr<GradedRing> ring;

  std::size_t nvars() const { return names.size(); }
  std::size_t factor_count() const { return names.size() - 1; }
  std::size_t alpha_index() const { return names.size() - 1; }
  Polynomial zeta(std::size_t factor) const { return Polynomial::variable(nvars(), factor); }
  Polynomial alpha() const { return Polynomial::variable(nvars(), alpha_index()); }
};

/// Requires rank 1. Weyl kind SL2 attaches alpha -> -alpha; any other kind the trivial action.
Presentation presentation_of(const WeightedModel& model);
Presentation torus_pn_presentation(const std::vector<Rational>& weights, WeylKind weyl = WeylKind::Trivial);
Presentation p1n_presentation(int n, WeylKind weyl = WeylKind::SL2);

/// True when every factor carries exactly the weights {1, -1}.
bool is_p1n(const WeightedModel& model);

/// eta * prod over (i, k) with a_ik beta < v_i of (zeta_i + a_ik alpha): the
/// equivariant Euler class of the normal bundle to the closure of the stratum
/// component. Throws std::invalid_argument when beta is not in the index set
/// or the component does not belong to beta.
Polynomial torus_tg_lift(const Presentation& pres, const LieVector& beta, const ZComponent& component,
                         const Polynomial& eta);
/// Same for a beta with exactly one component.
Polynomial torus_tg_lift(const Presentation& pres, const LieVector& beta, const Polynomial& eta);

/// prod_{j in subset} (zeta_j + sign alpha) on a (P_1)^n presentation.
Polynomial subset_product(const Presentation& pres, const std::vector<std::size_t>& subset, int sign);

struct KernelIdeal {
  Group group = Group::Torus;
  Target target = Target::Semistable;
  int max_degree = 0;
  std::vector<Polynomial> generators;
  std::shared_ptr<GradedRing> ring;
  std::shared_ptr<QuotientIdeal> ideal;
};

/// Ideal generated by the lifts with eta = 1 of every nonzero stratum
/// component of degree <= max_degree.
KernelIdeal torus_kernel_ideal(const Presentation& pres, int max_degree);

/// Images (1/(|W| D)) sum_w (-1)^w w(lift * eta) for eta in {1, alpha} and
/// beta > 0, D = 2 alpha; these generate the kernel over H*_T(X). For (P_1)^n
/// the pair families over subsets J with |J| > n/2 (|J| >= n/2 for the stable
/// target) are added. Throws std::invalid_argument without the SL(2) action or
/// for the stable target on other models; NotDivisible signals a bad action.
KernelIdeal sl2_kernel_ideal(const Presentation& pres, int max_degree, Target target = Target::Semistable);

/// dim of the degree-d part of ring / kernel, W-invariant part for SL(2).
int betti_from_presentation(const Presentation& pres, KernelIdeal& kernel, int degree);

struct LemmaFFRow {
  int degree = 0;                 // degree of ker rho; D ker rho sits in degree + 2
  std::size_t d_kernel_dim = 0;   // dim D ker rho
  std::size_t torus_anti_dim = 0; // dim (ker rho_T intersect anti-invariants)
  bool forward = true;            // D k lies in ker rho_T
  bool backward = true;           // u / D lies in ker rho
  bool round_trip = true;         // p(D k) = k and D p(u) = u
};

struct LemmaFFReport {
  bool ok = true;
  std::vector<LemmaFFRow> rows;
};

/// Degreewise check that multiplication by D maps ker rho onto the
/// anti-invariant part of ker rho_T, for every even degree <= max_degree.
LemmaFFReport lemma_ff_check(const Presentation& pres, int max_degree);

/// Basis of classes vanishing on every fixed component with mu <= 0, plus
/// those vanishing on every component with mu >= 0, per even degree.
/// Throws NotCoprimeStable for models with strictly semistable points.
std::map<int, std::vector<Polynomial>> lemma_ee_kernel(const Presentation& pres, int max_degree);

struct LemmaEERow {
  int degree = 0;
  std::size_t ee_dim = 0;
  std::size_t tg_dim = 0;
  bool same_span = true;
};

struct LemmaEEReport {
  bool ok = true;
  std::vector<LemmaEERow> rows;
};

/// lemma_ee_kernel against the torus kernel ideal: dimensions and mutual membership.
LemmaEEReport lemma_ee_check(const Presentation& pres, int max_degree);

/// Normal form of a class modulo prod_{k in keep[i]} (zeta_i + a_ik alpha) for every factor i.
/// Throws std::invalid_argument for an empty keep set.
Polynomial restrict_to_subspace(const Presentation& pres, const Polynomial& cls,
                                const std::vector<std::vector<std::size_t>>& keep);

}  // namespace moment_strata
