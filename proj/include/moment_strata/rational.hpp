#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace moment_strata {

/// Exact rational scalar. Always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// An element of the Lie algebra t, identified with Q^r.
using LieVector = Vector<Rational>;
using RationalMatrix = Matrix<Rational>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q". Decimal points and exponents are rejected.
Rational parse_rational(std::string_view text);

/// Formats as "p/q", or "p" when q = 1.
std::string to_string(const Rational& value);

/// Comma-separated rational list, e.g. "1/2,0,-3".
LieVector parse_vector(std::string_view text);

std::string to_string(const LieVector& v);

LieVector make_vector(std::initializer_list<Rational> coords);

inline bool is_zero(const LieVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (sgn(v(i)) != 0) return false;
  }
  return true;
}

/// Lexicographic order on coordinates; vectors of different length compare by size first.
bool lex_less(const LieVector& a, const LieVector& b);
bool equal(const LieVector& a, const LieVector& b);

/// Generic integer power for exact scalars.
Rational pow(const Rational& base, unsigned exponent);

}  // namespace moment_strata
