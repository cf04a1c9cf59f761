#include "moment_strata/residue.hpp"

#include "moment_strata/linalg.hpp"
#include "moment_strata/series.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace moment_strata {

int FixedComponent::real_dimension() const {
  int d = 0;
  for (std::size_t i = 0; i < factor_count(); ++i) d += 2 * (size(i) - 1);
  return d;
}

std::vector<FixedComponent> fixed_components(const WeightedModel& model) {
  if (model.rank() != 1) throw RankMismatch("fixed components need a rank-1 model");
  // Per factor, value classes in descending order of value.
  std::vector<std::vector<std::pair<Rational, std::vector<std::size_t>>>> classes;
  for (const auto& f : model.factors) {
    std::map<Rational, std::vector<std::size_t>, std::greater<>> by_value;
    for (std::size_t k = 0; k < f.size(); ++k) by_value[f[k](0)].push_back(k);
    classes.emplace_back(by_value.begin(), by_value.end());
  }
  std::vector<FixedComponent> out;
  FixedComponent cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == classes.size()) {
      cur.mu = 0;
      for (const auto& v : cur.values) cur.mu += v;
      out.push_back(cur);
      return;
    }
    for (const auto& [v, idx] : classes[i]) {
      cur.values.push_back(v);
      cur.indices.push_back(idx);
      rec(i + 1);
      cur.values.pop_back();
      cur.indices.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

// Drops every term with h_i^size_i or higher.
Polynomial truncate(const Polynomial& p, const FixedComponent& f) {
  Polynomial::Terms t;
  for (const auto& [e, c] : p.terms()) {
    bool keep = true;
    for (std::size_t i = 0; i < f.factor_count(); ++i) {
      if (e[i] >= f.size(i)) keep = false;
    }
    if (keep) t.emplace(e, c);
  }
  return Polynomial::from_terms(p.nvars(), std::move(t));
}

}  // namespace

Polynomial restrict_to_component(const Presentation& pres, const Polynomial& cls, const FixedComponent& f) {
  if (f.factor_count() != pres.factor_count()) throw std::invalid_argument("component from a different model");
  const std::size_t n = pres.nvars();
  const Polynomial alpha = Polynomial::variable(n, n - 1);
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < f.factor_count(); ++i) images.push_back(Polynomial::variable(n, i) - alpha * f.values[i]);
  images.push_back(alpha);
  return truncate(cls.substitute(images), f);
}

Polynomial euler_class(const WeightedModel& model, const FixedComponent& f) {
  const std::size_t n = model.factors.size() + 1;
  const Polynomial alpha = Polynomial::variable(n, n - 1);
  Polynomial e = Polynomial::constant(n, 1);
  for (std::size_t i = 0; i < model.factors.size(); ++i) {
    for (const auto& w : model.factors[i]) {
      const Rational b = w(0);
      if (b != f.values[i]) e = truncate(e * (Polynomial::variable(n, i) + alpha * (b - f.values[i])), f);
    }
  }
  return e;
}

Rational localized_residue(const WeightedModel& model, const Polynomial& restricted, const FixedComponent& f) {
  const std::size_t m = model.factors.size();
  const std::size_t n = m + 1;
  // alpha^s / (h + c alpha) = sum_{k < s} (-1)^k h^k alpha^(s-1-k) / c^(k+1); the
  // alpha^s factors are collected in `shift`.
  Polynomial p = truncate(restricted, f);
  int shift = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const int s = f.size(i);
    for (const auto& w : model.factors[i]) {
      const Rational c = w(0) - f.values[i];
      if (sgn(c) == 0) continue;
      Polynomial inv(n);
      for (int k = 0; k < s; ++k) {
        Exponent e(n, 0);
        e[i] = k;
        e[m] = s - 1 - k;
        Rational coef = Rational(k % 2 == 0 ? 1 : -1) / pow(c, static_cast<unsigned>(k + 1));
        inv.add_term(e, coef);
      }
      p = truncate(p * inv, f);
      shift += s;
    }
  }
  if (shift < 1) return 0;
  Exponent top(n, 0);
  for (std::size_t i = 0; i < m; ++i) top[i] = f.size(i) - 1;
  top[m] = shift - 1;
  return p.coefficient(top);
}

int quotient_real_dimension(const WeightedModel& model, Group group) {
  int d = 0;
  for (const auto& f : model.factors) d += static_cast<int>(f.size()) - 1;
  return 2 * (d - (group == Group::Torus ? 1 : 3));
}

namespace {

// Raw torus pairing of 1 with 1 on P_1 with weights {1, -1}: the residue of 1/(-2 alpha).
const Rational kPointConstant(-1, 2);

void require_stable(const WeightedModel& model) {
  if (auto w = strictly_semistable_witness(model)) throw NotCoprimeStable("strictly semistable points exist", *w);
}

}  // namespace

PairingValue pairing(const Presentation& pres, const Polynomial& eta, const Polynomial& zeta, Group group) {
  require_stable(pres.model);
  Polynomial product = eta * zeta;
  if (group == Group::SL2) product = product * pres.alpha().pow(2) * Rational(4);
  Rational raw = 0;
  for (const auto& f : fixed_components(pres.model)) {
    if (sgn(f.mu) > 0) raw += localized_residue(pres.model, restrict_to_component(pres, product, f), f);
  }
  // The SL(2) integral is -(1/|W|) times the torus integral of D^2 eta zeta.
  const Rational scale = group == Group::Torus ? Rational(1) / kPointConstant : Rational(-1, 2) / kPointConstant;
  return PairingValue{raw, raw * scale};
}

std::vector<Polynomial> class_basis(const Presentation& pres, int degree, Group group) {
  std::vector<Polynomial> out;
  if (group == Group::Torus) {
    for (const auto& e : pres.ring->standard_monomials(degree)) out.push_back(Polynomial::monomial(e));
    return out;
  }
  Echelon span(pres.nvars());
  for (const auto& e : pres.ring->standard_monomials(degree)) {
    span.insert(pres.ring->normal_form(symmetrize(Polynomial::monomial(e), pres.weyl)));
  }
  return span.basis();
}

PairingKernel kernel_by_pairing(const Presentation& pres, int degree, Group group) {
  require_stable(pres.model);
  PairingKernel out;
  out.degree = degree;
  const auto rows = class_basis(pres, degree, group);
  out.ambient_dimension = static_cast<int>(rows.size());
  const int complement = quotient_real_dimension(pres.model, group) - degree;
  const auto cols = complement >= 0 ? class_basis(pres, complement, group) : std::vector<Polynomial>{};
  // Left null space of the pairing matrix.
  RationalMatrix mt(static_cast<Eigen::Index>(cols.size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      mt(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = pairing(pres, rows[i], cols[j], group).raw;
    }
  }
  const RationalMatrix null = linalg::nullspace(mt);
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Polynomial p(pres.nvars());
    for (std::size_t i = 0; i < rows.size(); ++i) p += rows[i] * null(static_cast<Eigen::Index>(i), c);
    out.spanning.push_back(p);
  }
  out.dimension = static_cast<int>(out.spanning.size());
  return out;
}

}  // namespace moment_strata
