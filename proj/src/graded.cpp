#include "moment_strata/graded.hpp"

namespace moment_strata {

Polynomial Echelon::reduce(const Polynomial& p) const {
  if (p.nvars() != nvars_) throw std::invalid_argument("polynomial from a different ring");
  Polynomial::Terms t = p.terms();
  // Subtracting the row of pivot m only touches monomials <= m, so one
  // descending sweep eliminates every pivot.
  auto it = t.begin();
  while (it != t.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const Exponent m = it->first;
    const Rational c = it->second;
    for (const auto& [e, v] : row->second.terms()) {
      auto [pos, inserted] = t.emplace(e, -c * v);
      if (!inserted) {
        pos->second -= c * v;
        if (sgn(pos->second) == 0) t.erase(pos);
      }
    }
    it = t.upper_bound(m);
  }
  return Polynomial::from_terms(nvars_, std::move(t));
}

bool Echelon::insert(const Polynomial& p) {
  Polynomial r = reduce(p);
  if (r.is_zero()) return false;
  const auto lead = r.leading();
  r *= Rational(1) / lead.second;
  rows_.emplace(lead.first, std::move(r));
  return true;
}

std::vector<Polynomial> Echelon::basis() const {
  std::vector<Polynomial> out;
  out.reserve(rows_.size());
  for (const auto& [e, row] : rows_) out.push_back(row);
  return out;
}

IdealPieces::IdealPieces(std::size_t nvars, std::vector<Polynomial> generators, IdealPieces* ambient)
    : nvars_(nvars), generators_(std::move(generators)), ambient_(ambient) {
  for (const auto& g : generators_) {
    if (g.nvars() != nvars_) throw std::invalid_argument("generator from a different ring");
    if (!g.is_homogeneous()) throw std::invalid_argument("ideal generators must be homogeneous");
  }
}

const Echelon& IdealPieces::piece(int degree) {
  if (auto it = pieces_.find(degree); it != pieces_.end()) return it->second;
  Echelon e(nvars_);
  if (degree >= 0 && degree % 2 == 0) {
    auto modulo = [&](const Polynomial& p) {
      return ambient_ ? ambient_->piece(degree).reduce(p) : p;
    };
    if (degree >= 2) {
      for (const auto& row : piece(degree - 2).basis()) {
        for (std::size_t i = 0; i < nvars_; ++i) e.insert(modulo(row * Polynomial::variable(nvars_, i)));
      }
    }
    for (const auto& g : generators_) {
      if (g.degree() == degree) e.insert(modulo(g));
    }
  }
  return pieces_.emplace(degree, std::move(e)).first->second;
}

GradedRing::GradedRing(std::size_t nvars, std::vector<Polynomial> base_relations)
    : nvars_(nvars), base_(std::move(base_relations)),
      base_pieces_(std::make_unique<IdealPieces>(nvars, base_)) {}

const Echelon& GradedRing::relations(int degree) { return base_pieces_->piece(degree); }

std::vector<Exponent> GradedRing::standard_monomials(int degree) {
  std::vector<Exponent> out;
  if (degree < 0 || degree % 2 != 0) return out;
  const Echelon& rel = relations(degree);
  for (auto& e : monomials_of_total(nvars_, degree / 2)) {
    if (!rel.is_pivot(e)) out.push_back(std::move(e));
  }
  return out;
}

namespace {

std::map<int, Polynomial> homogeneous_parts(const Polynomial& p) {
  std::map<int, Polynomial> parts;
  for (const auto& [e, c] : p.terms()) {
    auto [it, inserted] = parts.try_emplace(2 * total_degree(e), p.nvars());
    it->second.add_term(e, c);
  }
  return parts;
}

}  // namespace

Polynomial GradedRing::normal_form(const Polynomial& p) {
  Polynomial out(nvars_);
  for (const auto& [d, part] : homogeneous_parts(p)) out += relations(d).reduce(part);
  return out;
}

int GradedRing::dimension(int degree) { return static_cast<int>(standard_monomials(degree).size()); }

QuotientIdeal::QuotientIdeal(GradedRing& ring, std::vector<Polynomial> generators)
    : ring_(ring), generators_(std::move(generators)), pieces_(ring.nvars(), generators_, &ring.base_pieces()) {}

bool QuotientIdeal::contains(const Polynomial& p) {
  for (const auto& [d, part] : homogeneous_parts(p)) {
    if (!piece(d).contains(ring_.normal_form(part))) return false;
  }
  return true;
}

int QuotientIdeal::quotient_dimension(int degree) {
  return ring_.dimension(degree) - static_cast<int>(piece(degree).rank());
}

int QuotientIdeal::invariant_quotient_dimension(int degree, const WeylAction& w) {
  Echelon span = piece(degree);
  const std::size_t before = span.rank();
  for (const auto& e : ring_.standard_monomials(degree)) {
    span.insert(ring_.normal_form(symmetrize(Polynomial::monomial(e), w)));
  }
  return static_cast<int>(span.rank() - before);
}

int graded_piece_dim(std::size_t nvars, const std::vector<Polynomial>& base_relations,
                     const std::vector<Polynomial>& ideal, int degree) {
  GradedRing ring(nvars, base_relations);
  QuotientIdeal q(ring, ideal);
  return q.quotient_dimension(degree);
}

}  // namespace moment_strata
