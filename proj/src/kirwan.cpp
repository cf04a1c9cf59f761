#include "moment_strata/kirwan.hpp"

#include "moment_strata/linalg.hpp"
#include "moment_strata/residue.hpp"
#include "moment_strata/series.hpp"

#include <stdexcept>

namespace moment_strata {

std::string to_string(Group g) { return g == Group::Torus ? "torus" : "sl2"; }

std::string to_string(Target t) { return t == Target::Semistable ? "ss" : "s"; }

Group parse_group(std::string_view name) {
  if (name == "torus") return Group::Torus;
  if (name == "sl2") return Group::SL2;
  throw std::invalid_argument("unknown group '" + std::string(name) + "'");
}

Target parse_target(std::string_view name) {
  if (name == "ss" || name == "semistable") return Target::Semistable;
  if (name == "s" || name == "stable") return Target::Stable;
  throw std::invalid_argument("unknown target '" + std::string(name) + "'");
}

namespace {

Rational weight(const WeightedModel& model, std::size_t i, std::size_t k) { return model.factors[i][k](0); }

Polynomial linear_factor(const Presentation& pres, std::size_t i, const Rational& a) {
  return pres.zeta(i) + pres.alpha() * a;
}

}  // namespace

Presentation presentation_of(const WeightedModel& model) {
  if (model.rank() != 1) throw RankMismatch("presentations need a rank-1 model");
  Presentation p{model, {}, {}, 0, WeylAction::trivial(0), nullptr};
  const std::size_t m = model.factors.size();
  if (m == 1) {
    p.names = {"z", "a"};
  } else {
    for (std::size_t i = 0; i < m; ++i) p.names.push_back("z" + std::to_string(i + 1));
    p.names.push_back("a");
  }
  for (std::size_t i = 0; i < m; ++i) {
    Polynomial rel = Polynomial::constant(p.nvars(), 1);
    for (std::size_t k = 0; k < model.factors[i].size(); ++k) rel = rel * linear_factor(p, i, weight(model, i, k));
    p.base.push_back(rel);
    p.real_dimension += 2 * static_cast<int>(model.factors[i].size() - 1);
  }
  p.weyl = model.weyl == WeylKind::SL2 ? WeylAction::negate_variable(p.nvars(), p.alpha_index())
                                       : WeylAction::trivial(p.nvars());
  p.ring = std::make_shared<GradedRing>(p.nvars(), p.base);
  return p;
}

Presentation torus_pn_presentation(const std::vector<Rational>& weights, WeylKind weyl) {
  return presentation_of(pn_model(weights, weyl));
}

Presentation p1n_presentation(int n, WeylKind weyl) { return presentation_of(p1n_model(n, weyl)); }

bool is_p1n(const WeightedModel& model) {
  if (model.rank() != 1) return false;
  for (const auto& f : model.factors) {
    if (f.size() != 2) return false;
    const Rational a = f[0](0), b = f[1](0);
    if (!((a == 1 && b == -1) || (a == -1 && b == 1))) return false;
  }
  return true;
}

namespace {

// Lift without validation; the component is assumed to belong to beta.
Polynomial euler_product(const Presentation& pres, const LieVector& beta, const ZComponent& c) {
  const auto& model = pres.model;
  Polynomial out = Polynomial::constant(pres.nvars(), 1);
  for (std::size_t i = 0; i < model.factors.size(); ++i) {
    for (std::size_t k = 0; k < model.factors[i].size(); ++k) {
      if (model.form(model.factors[i][k], beta) < c.values[i]) out = out * linear_factor(pres, i, weight(model, i, k));
    }
  }
  return out;
}

bool component_matches(const WeightedModel& model, const LieVector& beta, const ZComponent& c) {
  for (const auto& z : z_components(model, beta)) {
    if (z.values == c.values && z.indices == c.indices) return true;
  }
  return false;
}

bool in_index_set(const WeightedModel& model, const LieVector& beta) {
  for (const auto& s : index_set(model)) {
    if (equal(s.beta, beta)) return true;
  }
  return false;
}

}  // namespace

Polynomial torus_tg_lift(const Presentation& pres, const LieVector& beta, const ZComponent& component,
                         const Polynomial& eta) {
  if (beta.size() != 1) throw RankMismatch("beta must have length 1");
  if (!in_index_set(pres.model, beta)) throw std::invalid_argument("beta " + to_string(beta) + " is not in the index set");
  if (!component_matches(pres.model, beta, component)) {
    throw std::invalid_argument("component does not belong to beta " + to_string(beta));
  }
  return eta * euler_product(pres, beta, component);
}

Polynomial torus_tg_lift(const Presentation& pres, const LieVector& beta, const Polynomial& eta) {
  if (beta.size() != 1) throw RankMismatch("beta must have length 1");
  const auto comps = z_components(pres.model, beta);
  if (comps.size() != 1) throw std::invalid_argument("beta " + to_string(beta) + " has several components");
  return torus_tg_lift(pres, beta, comps.front(), eta);
}

Polynomial subset_product(const Presentation& pres, const std::vector<std::size_t>& subset, int sign) {
  Polynomial out = Polynomial::constant(pres.nvars(), 1);
  for (auto j : subset) {
    if (j >= pres.factor_count()) throw std::out_of_range("subset index out of range");
    out = out * linear_factor(pres, j, Rational(sign));
  }
  return out;
}

namespace {

KernelIdeal make_kernel(const Presentation& pres, Group g, Target t, int max_degree, std::vector<Polynomial> gens) {
  KernelIdeal k;
  k.group = g;
  k.target = t;
  k.max_degree = max_degree;
  k.generators = std::move(gens);
  k.ring = pres.ring;
  k.ideal = std::make_shared<QuotientIdeal>(*pres.ring, k.generators);
  return k;
}

}  // namespace

KernelIdeal torus_kernel_ideal(const Presentation& pres, int max_degree) {
  std::vector<Polynomial> gens;
  for (const auto& s : index_set(pres.model)) {
    if (is_zero(s.beta)) continue;
    for (const auto& c : z_components(pres.model, s.beta)) {
      if (codim(pres.model, s.beta, c) > max_degree) continue;
      gens.push_back(euler_product(pres, s.beta, c));
    }
  }
  return make_kernel(pres, Group::Torus, Target::Semistable, max_degree, std::move(gens));
}

KernelIdeal sl2_kernel_ideal(const Presentation& pres, int max_degree, Target target) {
  if (pres.weyl.order() != 2 || !is_negation_symmetric(pres.model)) {
    throw std::invalid_argument("the SL(2) kernel needs negation-symmetric weights and the alpha -> -alpha action");
  }
  if (target == Target::Stable && !is_p1n(pres.model)) {
    throw std::invalid_argument("the stable target is only available for (P_1)^n");
  }
  const Polynomial d = pres.alpha() * Rational(2);
  std::vector<Polynomial> gens;
  auto add = [&](const Polynomial& g) {
    if (!g.is_zero() && g.degree() <= max_degree) gens.push_back(g);
  };
  for (const auto& s : index_set(pres.model)) {
    if (sgn(s.beta(0)) <= 0) continue;
    for (const auto& c : z_components(pres.model, s.beta)) {
      const Polynomial e = euler_product(pres, s.beta, c);
      add(divide_exact(antisymmetrize(e, pres.weyl), d));
      add(divide_exact(antisymmetrize(pres.alpha() * e, pres.weyl), d));
    }
  }
  if (is_p1n(pres.model)) {
    const std::size_t n = pres.factor_count();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1) subset.push_back(j);
      }
      const std::size_t twice = 2 * subset.size();
      if (twice < n || (twice == n && target == Target::Semistable)) continue;
      const Polynomial plus = subset_product(pres, subset, 1);
      const Polynomial minus = subset_product(pres, subset, -1);
      add(divide_exact(plus - minus, pres.alpha()));
      add(plus + minus);
    }
  }
  return make_kernel(pres, Group::SL2, target, max_degree, std::move(gens));
}

int betti_from_presentation(const Presentation& pres, KernelIdeal& kernel, int degree) {
  if (degree > kernel.max_degree) throw std::invalid_argument("degree exceeds the kernel's max_degree");
  if (kernel.group == Group::SL2) return kernel.ideal->invariant_quotient_dimension(degree, pres.weyl);
  return kernel.ideal->quotient_dimension(degree);
}

LemmaFFReport lemma_ff_check(const Presentation& pres, int max_degree) {
  LemmaFFReport report;
  KernelIdeal torus = torus_kernel_ideal(pres, max_degree + 2);
  KernelIdeal sl2 = sl2_kernel_ideal(pres, max_degree + 2);
  GradedRing& ring = *pres.ring;
  const WeylAction& w = pres.weyl;
  const Polynomial d = pres.alpha() * Rational(2);
  auto p_map = [&](const Polynomial& x) { return divide_exact(antisymmetrize(x, w), d); };
  for (int deg = 0; deg <= max_degree; deg += 2) {
    LemmaFFRow row;
    row.degree = deg;
    // ker rho is the invariant part of the SL(2) ideal piece.
    Echelon kernel(pres.nvars());
    for (const auto& r : sl2.ideal->piece(deg).basis()) kernel.insert(ring.normal_form(symmetrize(r, w)));
    Echelon image(pres.nvars());
    for (const auto& k : kernel.basis()) {
      const Polynomial dk = ring.normal_form(d * k);
      image.insert(dk);
      if (!torus.ideal->piece(deg + 2).contains(dk)) row.forward = false;
      if (p_map(d * k) != k) row.round_trip = false;
    }
    Echelon anti(pres.nvars());
    for (const auto& r : torus.ideal->piece(deg + 2).basis()) anti.insert(ring.normal_form(antisymmetrize(r, w)));
    for (const auto& u : anti.basis()) {
      try {
        const Polynomial q = p_map(u);
        if (d * q != u) row.round_trip = false;
        if (!sl2.ideal->piece(deg).contains(ring.normal_form(q))) row.backward = false;
      } catch (const NotDivisible&) {
        row.backward = false;
      }
    }
    row.d_kernel_dim = image.rank();
    row.torus_anti_dim = anti.rank();
    if (row.d_kernel_dim != row.torus_anti_dim || !row.forward || !row.backward || !row.round_trip) report.ok = false;
    report.rows.push_back(row);
  }
  return report;
}

namespace {

// Null space of the restriction map from degree-d standard monomials to the listed components.
std::vector<Polynomial> vanishing_classes(const Presentation& pres, const std::vector<Exponent>& basis,
                                          const std::vector<FixedComponent>& comps) {
  std::map<std::pair<std::size_t, Exponent>, Eigen::Index> rows;
  std::vector<std::vector<std::pair<Eigen::Index, Rational>>> columns(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const Polynomial r = restrict_to_component(pres, Polynomial::monomial(basis[j]), comps[c]);
      for (const auto& [e, v] : r.terms()) {
        auto [it, inserted] = rows.try_emplace({c, e}, static_cast<Eigen::Index>(rows.size()));
        columns[j].emplace_back(it->second, v);
      }
    }
  }
  RationalMatrix m = RationalMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (const auto& [i, v] : columns[j]) m(i, static_cast<Eigen::Index>(j)) = v;
  }
  const RationalMatrix null = linalg::nullspace(m);
  std::vector<Polynomial> out;
  for (Eigen::Index col = 0; col < null.cols(); ++col) {
    Polynomial p(pres.nvars());
    for (std::size_t j = 0; j < basis.size(); ++j) p.add_term(basis[j], null(static_cast<Eigen::Index>(j), col));
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::map<int, std::vector<Polynomial>> lemma_ee_kernel(const Presentation& pres, int max_degree) {
  if (auto w = strictly_semistable_witness(pres.model)) {
    throw NotCoprimeStable("strictly semistable points exist", *w);
  }
  std::vector<FixedComponent> nonpositive, nonnegative;
  for (const auto& f : fixed_components(pres.model)) {
    if (sgn(f.mu) <= 0) nonpositive.push_back(f);
    if (sgn(f.mu) >= 0) nonnegative.push_back(f);
  }
  std::map<int, std::vector<Polynomial>> out;
  for (int deg = 0; deg <= max_degree; deg += 2) {
    const auto basis = pres.ring->standard_monomials(deg);
    Echelon span(pres.nvars());
    for (const auto& p : vanishing_classes(pres, basis, nonpositive)) span.insert(p);
    for (const auto& p : vanishing_classes(pres, basis, nonnegative)) span.insert(p);
    out.emplace(deg, span.basis());
  }
  return out;
}

LemmaEEReport lemma_ee_check(const Presentation& pres, int max_degree) {
  LemmaEEReport report;
  const auto ee = lemma_ee_kernel(pres, max_degree);
  KernelIdeal tg = torus_kernel_ideal(pres, max_degree);
  for (const auto& [deg, basis] : ee) {
    LemmaEERow row;
    row.degree = deg;
    Echelon span(pres.nvars());
    for (const auto& p : basis) span.insert(p);
    const Echelon& piece = tg.ideal->piece(deg);
    row.ee_dim = span.rank();
    row.tg_dim = piece.rank();
    for (const auto& p : basis) {
      if (!piece.contains(p)) row.same_span = false;
    }
    for (const auto& p : piece.basis()) {
      if (!span.contains(p)) row.same_span = false;
    }
    if (row.ee_dim != row.tg_dim || !row.same_span) report.ok = false;
    report.rows.push_back(row);
  }
  return report;
}

Polynomial restrict_to_subspace(const Presentation& pres, const Polynomial& cls,
                                const std::vector<std::vector<std::size_t>>& keep) {
  if (keep.size() != pres.factor_count()) throw std::invalid_argument("keep set needs one entry per factor");
  std::vector<Polynomial> rels;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i].empty()) throw std::invalid_argument("keep set must be nonempty in every factor");
    Polynomial rel = Polynomial::constant(pres.nvars(), 1);
    for (auto k : keep[i]) rel = rel * linear_factor(pres, i, weight(pres.model, i, k));
    rels.push_back(rel);
  }
  GradedRing sub(pres.nvars(), rels);
  return sub.normal_form(cls);
}

}  // namespace moment_strata
