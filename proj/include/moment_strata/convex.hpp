#pragma once

#include "moment_strata/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace moment_strata {

class RankMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A rational, symmetric, positive-definite inner product on t.
class BilinearForm {
 public:
  static BilinearForm identity(Eigen::Index rank);

  /// Throws std::invalid_argument unless gram is square, symmetric and positive definite.
  explicit BilinearForm(RationalMatrix gram);

  Eigen::Index rank() const { return gram_.rows(); }
  const RationalMatrix& gram() const { return gram_; }
  bool is_identity() const { return identity_; }

  Rational operator()(const LieVector& a, const LieVector& b) const;
  Rational norm2(const LieVector& a) const { return (*this)(a, a); }

  /// True when w^T G w = G, i.e. the form is invariant under the linear map w.
  bool is_invariant_under(const RationalMatrix& w) const;

  bool operator==(const BilinearForm& other) const;

 private:
  RationalMatrix gram_;
  bool identity_ = false;
};

/// Witness that beta is the nearest point of conv(points) to the origin.
struct ProjectionCertificate {
  std::vector<std::size_t> support;     // indices into the caller's point list, ascending
  std::vector<Rational> coefficients;   // positive, summing to one, aligned with support
  LieVector beta;
};

/// Nearest point of conv(points) to 0 in the norm of `form`.
///
/// Enumerates affinely independent subsets of at most rank+1 distinct points,
/// projects 0 onto each affine hull through the exact normal equations and
/// keeps the first candidate (in lexicographic order of its support) with
/// positive barycentric coordinates that passes the global optimality test
/// <p, beta> >= <beta, beta> for every input point p.
///
/// Throws RankMismatch when the list is empty or a point has the wrong length.
ProjectionCertificate closest_point_to_origin(std::span<const LieVector> points,
                                              const BilinearForm& form);

/// Checks the three certificate conditions exactly.
bool verify_certificate(std::span<const LieVector> points, const BilinearForm& form,
                        const ProjectionCertificate& cert);

bool origin_in_hull(std::span<const LieVector> points);

/// True iff 0 lies in the full-dimensional interior of conv(points) in Q^rank.
bool origin_in_interior(std::span<const LieVector> points, Eigen::Index rank);

int affine_dimension(std::span<const LieVector> points);

/// Dimension of the linear span of the points.
int linear_dimension(std::span<const LieVector> points);

}  // namespace moment_strata
