#pragma once

// Refined stratum labels for point configurations in P_1 and P_2 under
// SL(2) and SL(3), computed from coincidences and collinearities over Q.

#include "moment_strata/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace moment_strata {

/// Homogeneous coordinates scaled so the first nonzero entry is 1.
class ProjPoint {
 public:
  /// Throws std::invalid_argument for the zero vector.
  explicit ProjPoint(std::vector<Rational> coords);

  const std::vector<Rational>& coords() const { return c_; }
  std::size_t dimension() const { return c_.size() - 1; }
  bool operator==(const ProjPoint& o) const { return c_ == o.c_; }
  bool operator<(const ProjPoint& o) const { return c_ < o.c_; }

 private:
  std::vector<Rational> c_;
};

std::string to_string(const ProjPoint& p);

using Config = std::vector<ProjPoint>;

enum class ConfigFamily { P1, Binary, P2 };

ConfigFamily parse_config_family(std::string_view name);
std::string to_string(ConfigFamily f);

/// Refined label and the Morse stratum it refines, e.g. {"(T,2)", "S_{0}"}.
struct StratumLabel {
  std::string refined;
  std::string coarse;
  bool operator==(const StratumLabel& o) const { return refined == o.refined && coarse == o.coarse; }
};

/// Raised when the destabilizing flag of an unstable P_2 configuration is not unique.
class AmbiguousFlag : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Ordered points of P_1: "S_{2j-n}" when j > n/2 coincide, "(T)", "(T,2)" or "Stable".
StratumLabel classify_p1_tuple(const Config& config);

/// Roots of a binary form of degree n = config.size(): as for tuples, with
/// "(T,2k)" when exactly one root has multiplicity n/2.
StratumLabel classify_binary_form(const Config& roots);

/// k of the stratum (T,2k) when exactly one root has multiplicity n/2, n even.
std::optional<int> binary_form_k(const Config& roots);

/// k from the coefficients a_i of u^i v^(n-i) of a form with [0:1] as root of
/// multiplicity exactly n/2; the form need not split over Q. Throws
/// std::logic_error when the other n/2 roots coincide.
int binary_form_k_at_zero(std::vector<Rational> a);

/// Ordered points of P_2 under SL(3).
StratumLabel classify_p2_tuple(const Config& config);

/// The Morse stratum alone, computed from the stability inequalities and the destabilizing flag.
std::string morse_label_of_config(const Config& config, ConfigFamily family);

StratumLabel classify(const Config& config, ConfigFamily family);

/// g applied to every point; g must be invertible of size dimension + 1.
Config transform(const RationalMatrix& g, const Config& config);

}  // namespace moment_strata
