#pragma once

#include "moment_strata/weighted_model.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace moment_strata {

/// Power series in t known exactly in degrees 0..degree().
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int degree);
  TruncatedSeries(int degree, std::vector<Rational> coefficients);

  static TruncatedSeries one(int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& operator[](int k) const;
  Rational& operator[](int k);
  const std::vector<Rational>& coefficients() const { return c_; }

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries operator+(const TruncatedSeries& other) const;
  TruncatedSeries operator-(const TruncatedSeries& other) const;
  TruncatedSeries operator*(const TruncatedSeries& other) const;
  bool operator==(const TruncatedSeries& other) const;

  /// Multiplies by t^k (k >= 0), dropping terms past the truncation.
  TruncatedSeries shifted(int k) const;
  /// Divides by 1 - t^step via the geometric expansion.
  TruncatedSeries divided_by_one_minus(int step) const;
  /// Same series known to a lower degree.
  TruncatedSeries truncated(int degree) const;
  /// Same coefficients padded with zeros to a higher degree (for finite polynomials).
  TruncatedSeries padded(int degree) const;

  bool has_nonnegative_integer_coefficients() const;
  /// Largest k with c_k != 0, or -1 for the zero series.
  int top_nonzero() const;

  /// "1 + 2*t^2 + t^4 (+ O(t^42))"; omit the tail for finite polynomials.
  std::string to_string(bool with_tail = true) const;

 private:
  std::vector<Rational> c_;
};

/// Ordinary Poincare polynomial prod_i (1 + t^2 + ... + t^(2(d_i - 1))).
TruncatedSeries ordinary_series(const WeightedModel& model, int degree);

/// P_T(X) = ordinary_series / (1 - t^2)^r.
TruncatedSeries model_equivariant_series(const WeightedModel& model, int degree);

class RecursionMeasureViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NotCoprimeStable : public std::runtime_error {
 public:
  NotCoprimeStable(const std::string& what, SupportProfile witness)
      : std::runtime_error(what), witness(std::move(witness)) {}
  SupportProfile witness;
};

class TruncationTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One term t^codim * P(Z_beta^ss component) of the stratification.
struct StratumTerm {
  LieVector beta;
  ZComponent component;
  int codim = 0;
  TruncatedSeries series{0};  // already multiplied by t^codim
};

/// Equivariant Poincare series of semistable sets through the perfect
/// stratification recursion. Memoizes on the canonical weight multiset;
/// one instance per top-level computation.
class SeriesEngine {
 public:
  TruncatedSeries semistable(const WeightedModel& model, int degree);
  /// The unstable strata of the model, each with its shifted series.
  std::vector<StratumTerm> unstable_terms(const WeightedModel& model, int degree);

 private:
  std::map<std::string, TruncatedSeries> memo_;
};

TruncatedSeries semistable_series(const WeightedModel& model, int degree);

struct PerfectionReport {
  bool ok = true;
  std::optional<int> failing_degree;
  std::string detail;
};

/// P_T(X) = sum over all strata of t^codim * P(stratum), exactly to `degree`,
/// plus nonnegativity and integrality of every stratum series, checked at
/// every level of the recursion.
PerfectionReport perfection_check(const WeightedModel& model, int degree);

/// Complex dimension of the torus quotient when generic: sum(d_i - 1) - rank.
int quotient_complex_dimension(const WeightedModel& model);

/// Poincare polynomial of X//T; requires semistable = stable.
/// Throws NotCoprimeStable (with witness) or TruncationTooSmall.
TruncatedSeries quotient_poincare_polynomial(const WeightedModel& model, int degree);

/// Series of X//SL(2) for a rank-1 model with negation-symmetric factors.
/// Throws std::invalid_argument for asymmetric weights.
TruncatedSeries sl2_quotient_series(const WeightedModel& model, int degree);

bool is_negation_symmetric(const WeightedModel& model);

/// Canonical text key of a model's weight multiset (sorted within and across factors).
std::string canonical_key(const WeightedModel& model);

}  // namespace moment_strata
