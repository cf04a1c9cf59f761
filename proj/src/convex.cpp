#include "moment_strata/convex.hpp"

#include "moment_strata/linalg.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace moment_strata {

BilinearForm BilinearForm::identity(Eigen::Index rank) {
  if (rank < 1) throw std::invalid_argument("torus rank must be positive");
  BilinearForm f(RationalMatrix::Identity(rank, rank));
  return f;
}

BilinearForm::BilinearForm(RationalMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() < 1 || gram_.rows() != gram_.cols()) {
    throw std::invalid_argument("Gram matrix must be square and nonempty");
  }
  for (Eigen::Index i = 0; i < gram_.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("Gram matrix is not symmetric");
    }
  }
  if (!linalg::is_positive_definite(gram_)) {
    throw std::invalid_argument("Gram matrix is not positive definite");
  }
  identity_ = gram_ == RationalMatrix::Identity(gram_.rows(), gram_.cols());
}

Rational BilinearForm::operator()(const LieVector& a, const LieVector& b) const {
  if (a.size() != rank() || b.size() != rank()) {
    throw RankMismatch("vector length does not match the form's rank");
  }
  if (identity_) return a.dot(b);
  return a.dot(gram_ * b);
}

bool BilinearForm::is_invariant_under(const RationalMatrix& w) const {
  return RationalMatrix(w.transpose() * gram_ * w) == gram_;
}

bool BilinearForm::operator==(const BilinearForm& other) const {
  return gram_.rows() == other.gram_.rows() && gram_ == other.gram_;
}

namespace {

void check_points(std::span<const LieVector> points, Eigen::Index rank) {
  if (points.empty()) throw RankMismatch("point list is empty");
  for (const auto& p : points) {
    if (p.size() != rank) throw RankMismatch("point length does not match the torus rank");
  }
}

struct Candidate {
  std::vector<Rational> coefficients;
  LieVector beta;
};

// Projects 0 onto the affine hull of the chosen points. Returns nothing when the
// points are affinely dependent (the bordered Gram system is then singular).
std::optional<Candidate> project_onto_affine_hull(const std::vector<const LieVector*>& chosen,
                                                  const BilinearForm& form) {
  const auto k = static_cast<Eigen::Index>(chosen.size());
  RationalMatrix kkt(k + 1, k + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      kkt(i, j) = form(*chosen[static_cast<std::size_t>(i)], *chosen[static_cast<std::size_t>(j)]);
      kkt(j, i) = kkt(i, j);
    }
    kkt(i, k) = 1;
    kkt(k, i) = 1;
  }
  kkt(k, k) = 0;
  LieVector rhs = LieVector::Zero(k + 1);
  rhs(k) = 1;
  auto solution = linalg::solve(kkt, rhs);
  if (!solution) return std::nullopt;
  Candidate c;
  c.beta = LieVector::Zero(form.rank());
  for (Eigen::Index i = 0; i < k; ++i) {
    c.coefficients.push_back((*solution)(i));
    c.beta += (*solution)(i) * *chosen[static_cast<std::size_t>(i)];
  }
  return c;
}

}  // namespace

ProjectionCertificate closest_point_to_origin(std::span<const LieVector> points,
                                              const BilinearForm& form) {
  check_points(points, form.rank());

  // Distinct points, each represented by its first occurrence.
  std::vector<std::size_t> representatives;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool seen = false;
    for (auto r : representatives) {
      if (equal(points[r], points[i])) {
        seen = true;
        break;
      }
    }
    if (!seen) representatives.push_back(i);
  }
  const std::size_t max_size = std::min<std::size_t>(static_cast<std::size_t>(form.rank()) + 1,
                                                     representatives.size());

  std::vector<std::size_t> subset;
  std::optional<ProjectionCertificate> found;

  auto globally_optimal = [&](const LieVector& beta) {
    Rational bb = form.norm2(beta);
    for (const auto& p : points) {
      if (form(p, beta) < bb) return false;
    }
    return true;
  };

  // Depth-first pre-order visits supports in lexicographic order, so the
  // first admissible candidate has the lexicographically smallest support.
  std::function<void(std::size_t)> visit = [&](std::size_t start) {
    for (std::size_t i = start; i < representatives.size() && !found; ++i) {
      subset.push_back(representatives[i]);
      std::vector<const LieVector*> chosen;
      for (auto idx : subset) chosen.push_back(&points[idx]);
      if (auto cand = project_onto_affine_hull(chosen, form)) {
        bool positive = std::all_of(cand->coefficients.begin(), cand->coefficients.end(),
                                    [](const Rational& c) { return sgn(c) > 0; });
        if (positive && globally_optimal(cand->beta)) {
          found = ProjectionCertificate{subset, std::move(cand->coefficients), std::move(cand->beta)};
        } else if (subset.size() < max_size) {
          visit(i + 1);
        }
      }
      subset.pop_back();
    }
  };
  visit(0);

  if (!found) {
    // Unreachable for a positive-definite form; kept as a hard failure.
    throw std::logic_error("nearest-point enumeration found no admissible face");
  }
  return *found;
}

bool verify_certificate(std::span<const LieVector> points, const BilinearForm& form,
                        const ProjectionCertificate& cert) {
  if (cert.support.empty() || cert.support.size() != cert.coefficients.size()) return false;
  Rational total = 0;
  LieVector combo = LieVector::Zero(form.rank());
  for (std::size_t k = 0; k < cert.support.size(); ++k) {
    if (cert.support[k] >= points.size() || sgn(cert.coefficients[k]) <= 0) return false;
    total += cert.coefficients[k];
    combo += cert.coefficients[k] * points[cert.support[k]];
  }
  if (total != 1 || !equal(combo, cert.beta)) return false;
  const Rational bb = form.norm2(cert.beta);
  for (const auto& p : points) {
    if (form(p, cert.beta) < bb) return false;
  }
  for (auto idx : cert.support) {
    if (form(points[idx], cert.beta) != bb) return false;
  }
  return true;
}

bool origin_in_hull(std::span<const LieVector> points) {
  check_points(points, points.empty() ? 0 : points.front().size());
  const auto rank = points.front().size();
  return is_zero(closest_point_to_origin(points, BilinearForm::identity(rank)).beta);
}

int linear_dimension(std::span<const LieVector> points) {
  if (points.empty()) return 0;
  RationalMatrix m(static_cast<Eigen::Index>(points.size()), points.front().size());
  for (std::size_t i = 0; i < points.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  return static_cast<int>(linalg::rank(m));
}

int affine_dimension(std::span<const LieVector> points) {
  if (points.empty()) throw RankMismatch("point list is empty");
  if (points.size() == 1) return 0;
  RationalMatrix m(static_cast<Eigen::Index>(points.size() - 1), points.front().size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != points.front().size()) throw RankMismatch("mixed point lengths");
    m.row(static_cast<Eigen::Index>(i - 1)) = (points[i] - points.front()).transpose();
  }
  return static_cast<int>(linalg::rank(m));
}

bool origin_in_interior(std::span<const LieVector> points, Eigen::Index rank) {
  check_points(points, rank);
  // 0 is interior iff cone(points) = Q^rank. A proper polyhedral cone spanning
  // Q^rank has a facet spanned by rank-1 linearly independent generators, so it
  // suffices to test those hyperplanes.
  if (linear_dimension(points) < rank) return false;
  std::vector<std::size_t> subset;
  bool separated = false;

  auto test_hyperplane = [&]() {
    RationalMatrix rows(static_cast<Eigen::Index>(subset.size()), rank);
    for (std::size_t k = 0; k < subset.size(); ++k) rows.row(static_cast<Eigen::Index>(k)) = points[subset[k]].transpose();
    RationalMatrix normal_space = subset.empty() ? RationalMatrix(RationalMatrix::Identity(rank, rank))
                                                 : linalg::nullspace(rows);
    if (normal_space.cols() != 1) return;  // dependent subset
    const LieVector u = normal_space.col(0);
    bool all_nonneg = true;
    bool all_nonpos = true;
    for (const auto& p : points) {
      int s = sgn(Rational(u.dot(p)));
      if (s < 0) all_nonneg = false;
      if (s > 0) all_nonpos = false;
    }
    if (all_nonneg || all_nonpos) separated = true;
  };

  std::function<void(std::size_t)> visit = [&](std::size_t start) {
    if (separated) return;
    if (static_cast<Eigen::Index>(subset.size()) == rank - 1) {
      test_hyperplane();
      return;
    }
    for (std::size_t i = start; i < points.size() && !separated; ++i) {
      subset.push_back(i);
      visit(i + 1);
      subset.pop_back();
    }
  };
  visit(0);
  return !separated;
}

}  // namespace moment_strata
