#pragma once

// Degreewise linear algebra in quotients of polynomial rings. Every space is
// a span of homogeneous polynomials of one degree, kept in echelon form with
// the leading monomial as pivot.

#include "moment_strata/polynomial.hpp"

#include <map>
#include <memory>
#include <vector>

namespace moment_strata {

class Echelon {
 public:
  explicit Echelon(std::size_t nvars) : nvars_(nvars) {}

  /// Adds p to the span; true when the rank grows.
  bool insert(const Polynomial& p);
  /// Eliminates every pivot monomial from p (a canonical remainder).
  Polynomial reduce(const Polynomial& p) const;
  bool contains(const Polynomial& p) const { return reduce(p).is_zero(); }

  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(const Exponent& e) const { return rows_.count(e) != 0; }
  std::vector<Polynomial> basis() const;

 private:
  std::size_t nvars_;
  std::map<Exponent, Polynomial, GrlexDescending> rows_;
};

/// Degree pieces of the ideal generated by homogeneous polynomials, optionally
/// taken modulo an ambient ideal. Built incrementally: piece(d + 2) is spanned by
/// variables times piece(d) together with the generators of degree d + 2.
class IdealPieces {
 public:
  IdealPieces(std::size_t nvars, std::vector<Polynomial> generators, IdealPieces* ambient = nullptr);

  /// Echelon of the degree-d piece, reduced modulo the ambient piece when present.
  const Echelon& piece(int degree);
  std::size_t nvars() const { return nvars_; }

 private:
  std::size_t nvars_;
  std::vector<Polynomial> generators_;
  IdealPieces* ambient_;
  std::map<int, Echelon> pieces_;
};

/// Q[x_1..x_n] / (base relations), all variables in degree 2.
class GradedRing {
 public:
  GradedRing(std::size_t nvars, std::vector<Polynomial> base_relations);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Polynomial>& base_relations() const { return base_; }

  /// Span of the base relations in degree d.
  const Echelon& relations(int degree);
  /// Monomials of degree d that are not pivots of relations(d).
  std::vector<Exponent> standard_monomials(int degree);
  /// Canonical representative modulo the base relations.
  Polynomial normal_form(const Polynomial& p);
  int dimension(int degree);

  IdealPieces& base_pieces() { return *base_pieces_; }

 private:
  std::size_t nvars_;
  std::vector<Polynomial> base_;
  std::unique_ptr<IdealPieces> base_pieces_;
};

/// An ideal of a GradedRing, represented degreewise modulo the base relations.
class QuotientIdeal {
 public:
  QuotientIdeal(GradedRing& ring, std::vector<Polynomial> generators);

  GradedRing& ring() { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

  /// Ideal piece of degree d in normal form.
  const Echelon& piece(int degree) { return pieces_.piece(degree); }
  bool contains(const Polynomial& p);

  /// dim (ring / ideal)_d.
  int quotient_dimension(int degree);
  /// dim of the W-invariant part of (ring / ideal)_d; W must preserve both ideals.
  int invariant_quotient_dimension(int degree, const WeylAction& w);

 private:
  GradedRing& ring_;
  std::vector<Polynomial> generators_;
  IdealPieces pieces_;
};

/// dim over Q of the degree-d part of Q[x] / (base + ideal).
int graded_piece_dim(std::size_t nvars, const std::vector<Polynomial>& base_relations,
                     const std::vector<Polynomial>& ideal, int degree);

}  // namespace moment_strata
