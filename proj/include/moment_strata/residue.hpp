#pragma once

// Rank-one residue pairings on quotients, computed by localization to the
// fixed components of the torus.

#include "moment_strata/kirwan.hpp"

#include <vector>

namespace moment_strata {

/// A connected component of the torus fixed set: in each factor, the
/// coordinates whose weight equals one value. Its cohomology is
/// prod_i Q[h_i] / (h_i^size_i).
struct FixedComponent {
  std::vector<Rational> values;
  std::vector<std::vector<std::size_t>> indices;
  Rational mu;  // sum of the values

  std::size_t factor_count() const { return values.size(); }
  int size(std::size_t factor) const { return static_cast<int>(indices[factor].size()); }
  /// Real dimension of the component.
  int real_dimension() const;
};

/// Every per-factor value class tuple, values descending within a factor,
/// tuples in lexicographic order. Requires rank 1.
std::vector<FixedComponent> fixed_components(const WeightedModel& model);

/// Component rings use variables h_1..h_m, alpha (alpha last).
/// zeta_i -> h_i - v_i alpha, with h_i^size_i = 0.
Polynomial restrict_to_component(const Presentation& pres, const Polynomial& cls, const FixedComponent& f);

/// prod over factors and weights b != v_i of (h_i + (b - v_i) alpha).
Polynomial euler_class(const WeightedModel& model, const FixedComponent& f);

/// Coefficient of alpha^-1 in int_F p / e_F, expanding 1/e_F with h nilpotent.
Rational localized_residue(const WeightedModel& model, const Polynomial& restricted, const FixedComponent& f);

/// Real dimension of X//T (2 (sum (d_i - 1) - 1)) or X//SL(2) (2 (sum (d_i - 1) - 3)).
int quotient_real_dimension(const WeightedModel& model, Group group);

struct PairingValue {
  Rational raw;
  Rational normalized;  // raw divided by the raw value of a point quotient
};

/// Residue at alpha = 0 of sum_{mu_F > 0} int_F (D^e eta zeta)|_F / e_F with
/// e = 0 for the torus and D = 2 alpha, e = 2 for SL(2). Throws
/// NotCoprimeStable when semistable and stable points differ.
PairingValue pairing(const Presentation& pres, const Polynomial& eta, const Polynomial& zeta, Group group);

struct PairingKernel {
  int degree = 0;
  int ambient_dimension = 0;  // dim of degree-d classes (W-invariant for SL(2))
  int dimension = 0;
  std::vector<Polynomial> spanning;
};

/// Degree-d classes pairing to zero with every class of complementary degree.
PairingKernel kernel_by_pairing(const Presentation& pres, int degree, Group group);

/// Basis of the degree-d classes of H*_T(X), or of the invariant part for SL(2), in normal form.
std::vector<Polynomial> class_basis(const Presentation& pres, int degree, Group group);

}  // namespace moment_strata
