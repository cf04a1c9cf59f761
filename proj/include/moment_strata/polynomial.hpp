#pragma once

// Polynomials over Q in variables that all sit in cohomological degree 2.

#include "moment_strata/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moment_strata {

using Exponent = std::vector<int>;

/// Graded lexicographic order, larger first: higher total degree, then
/// lexicographically larger exponent (variable 0 most significant).
struct GrlexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

int total_degree(const Exponent& e);

class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational, GrlexDescending>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Exponent& e, const Rational& c = 1);
  /// Terms must carry no zero coefficients.
  static Polynomial from_terms(std::size_t nvars, Terms terms);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Exponent& e) const;

  /// Leading (largest) term; throws on zero.
  const std::pair<const Exponent, Rational>& leading() const;

  /// Cohomological degree of a homogeneous polynomial (2 * exponent sum); -1 for zero.
  /// Throws std::invalid_argument when not homogeneous.
  int degree() const;
  bool is_homogeneous() const;

  void add_term(const Exponent& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial pow(unsigned k) const;

  /// Replaces variable i by images[i].
  Polynomial substitute(const std::vector<Polynomial>& images) const;

 private:
  std::size_t nvars_;
  Terms terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

class NotDivisible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// q with q * d = p exactly; throws NotDivisible otherwise (and for d = 0).
Polynomial divide_exact(const Polynomial& p, const Polynomial& d);

/// ASCII grammar: sums of products of numbers ("p/q"), names, "^k" powers and parentheses.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names);

/// Terms in descending grlex order, e.g. "3/2 * z^2 * a - a^2".
std::string to_string(const Polynomial& p, const std::vector<std::string>& names);

/// All exponents of the given total, in descending grlex order.
std::vector<Exponent> monomials_of_total(std::size_t nvars, int total);

/// A finite group acting by linear substitutions, with a sign character.
struct WeylAction {
  std::vector<std::vector<Polynomial>> substitutions;  // per element, images of the variables
  std::vector<int> signs;

  static WeylAction trivial(std::size_t nvars);
  /// Z/2 negating one variable (alpha -> -alpha), sign -1 on the generator.
  static WeylAction negate_variable(std::size_t nvars, std::size_t index);

  std::size_t order() const { return substitutions.size(); }
  Polynomial apply(std::size_t w, const Polynomial& p) const;

  /// Identity present, closed under composition, signs multiplicative.
  bool is_valid_group() const;
  bool is_invariant(const Polynomial& p) const;
  bool is_anti_invariant(const Polynomial& p) const;
};

/// (1/|W|) sum_w (-1)^w w(p).
Polynomial antisymmetrize(const Polynomial& p, const WeylAction& w);
/// (1/|W|) sum_w w(p).
Polynomial symmetrize(const Polynomial& p, const WeylAction& w);

}  // namespace moment_strata
