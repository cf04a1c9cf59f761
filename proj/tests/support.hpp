#pragma once

// Shared helpers for the test binaries: deterministic randomness and terse
// constructors for exact vectors.

#include "moment_strata/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace testing_support {

using moment_strata::LieVector;
using moment_strata::Rational;

inline LieVector V(std::initializer_list<Rational> c) { return moment_strata::make_vector(c); }

inline Rational Q(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

  /// p/q with |p| <= span, 1 <= q <= max_den.
  Rational rational(long span, long max_den) { return Q(integer(-span, span), integer(1, max_den)); }

  LieVector vector(Eigen::Index r, long span, long max_den) {
    LieVector v(r);
    for (Eigen::Index i = 0; i < r; ++i) v(i) = rational(span, max_den);
    return v;
  }

  bool coin() { return integer(0, 1) == 1; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace testing_support
