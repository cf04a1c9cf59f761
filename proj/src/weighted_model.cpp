#include "moment_strata/weighted_model.hpp"

#include <algorithm>
#include <sstream>

namespace moment_strata {

std::string to_string(WeylKind kind) {
  switch (kind) {
    case WeylKind::Trivial: return "trivial";
    case WeylKind::SL2: return "sl2";
    case WeylKind::SL3TorusWeyl: return "sl3-torus-weyl";
  }
  return "trivial";
}

WeylKind parse_weyl_kind(std::string_view name) {
  if (name == "trivial") return WeylKind::Trivial;
  if (name == "sl2") return WeylKind::SL2;
  if (name == "sl3-torus-weyl") return WeylKind::SL3TorusWeyl;
  throw std::invalid_argument("unknown Weyl group '" + std::string(name) + "'");
}

std::vector<RationalMatrix> weyl_elements(WeylKind kind, Eigen::Index rank) {
  std::vector<RationalMatrix> out{RationalMatrix::Identity(rank, rank)};
  switch (kind) {
    case WeylKind::Trivial:
      break;
    case WeylKind::SL2:
      if (rank != 1) throw std::invalid_argument("sl2 Weyl action needs rank 1");
      out.push_back(RationalMatrix::Constant(1, 1, Rational(-1)));
      break;
    case WeylKind::SL3TorusWeyl: {
      if (rank != 2) throw std::invalid_argument("sl3 Weyl action needs rank 2");
      // t = {x in Q^3 : sum x = 0} in coordinates (x1, x2); S_3 permutes x1, x2, x3.
      RationalMatrix s12(2, 2), s23(2, 2);
      s12 << 0, 1, 1, 0;
      s23 << 1, 0, -1, -1;
      RationalMatrix a = s12 * s23, b = s23 * s12, c = s12 * s23 * s12;
      out.insert(out.end(), {s12, s23, a, b, c});
      break;
    }
  }
  return out;
}

WeightedModel::WeightedModel(BilinearForm f, std::vector<std::vector<LieVector>> fs, WeylKind w)
    : form(std::move(f)), factors(std::move(fs)), weyl(w) {
  if (factors.empty()) throw std::invalid_argument("model needs at least one factor");
  for (const auto& factor : factors) {
    if (factor.empty()) throw std::invalid_argument("every factor needs at least one weight");
    for (const auto& a : factor) {
      if (a.size() != form.rank()) throw RankMismatch("weight length does not match the torus rank");
    }
  }
  for (const auto& m : weyl_elements(weyl, form.rank())) {
    if (!form.is_invariant_under(m)) throw std::invalid_argument("inner product is not Weyl invariant");
  }
}

std::size_t WeightedModel::total_slots() const {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.size();
  return n;
}

WeightedModel pn_model(const std::vector<Rational>& weights, WeylKind weyl) {
  std::vector<LieVector> factor;
  for (const auto& a : weights) factor.push_back(make_vector({a}));
  return WeightedModel(BilinearForm::identity(1), {factor}, weyl);
}

std::vector<Rational> sl2_weights(int n) {
  std::vector<Rational> w;
  for (int j = n; j >= 0; --j) w.emplace_back(2 * j - n);
  return w;
}

WeightedModel p1n_model(int n, WeylKind weyl) {
  if (n < 1) throw std::invalid_argument("(P1)^n needs n >= 1");
  std::vector<std::vector<LieVector>> fs(static_cast<std::size_t>(n),
                                         {make_vector({1}), make_vector({-1})});
  return WeightedModel(BilinearForm::identity(1), fs, weyl);
}

std::string to_string(const SupportProfile& profile) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) out << ',';
    out << '{';
    for (std::size_t k = 0; k < profile[i].size(); ++k) out << (k ? "," : "") << profile[i][k];
    out << '}';
  }
  out << ')';
  return out.str();
}

SupportProfile support_of_point(const WeightedModel& model,
                                const std::vector<std::vector<Rational>>& coordinates) {
  if (coordinates.size() != model.factors.size()) {
    throw std::invalid_argument("point has the wrong number of factors");
  }
  SupportProfile profile(coordinates.size());
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (coordinates[i].size() != model.factors[i].size()) {
      throw std::invalid_argument("factor " + std::to_string(i) + " has the wrong number of coordinates");
    }
    for (std::size_t k = 0; k < coordinates[i].size(); ++k) {
      if (sgn(coordinates[i][k]) != 0) profile[i].push_back(k);
    }
    if (profile[i].empty()) {
      throw std::invalid_argument("factor " + std::to_string(i) + " has the zero vector");
    }
  }
  return profile;
}

namespace {

void append_unique(std::vector<LieVector>& out, LieVector v) {
  for (const auto& u : out) {
    if (equal(u, v)) return;
  }
  out.push_back(std::move(v));
}

void check_profile(const WeightedModel& model, const SupportProfile& profile) {
  if (profile.size() != model.factors.size()) throw std::invalid_argument("profile has the wrong number of factors");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i].empty()) throw std::invalid_argument("profile has an empty factor support");
    for (auto k : profile[i]) {
      if (k >= model.factors[i].size()) throw std::invalid_argument("profile index out of range");
    }
  }
}

}  // namespace

std::vector<LieVector> minkowski_points(const WeightedModel& model, const SupportProfile& profile) {
  check_profile(model, profile);
  std::vector<LieVector> sums{LieVector::Zero(model.rank())};
  for (std::size_t i = 0; i < profile.size(); ++i) {
    std::vector<LieVector> next;
    for (const auto& s : sums) {
      for (auto k : profile[i]) append_unique(next, s + model.factors[i][k]);
    }
    sums = std::move(next);
  }
  return sums;
}

StratumIndex classify(const WeightedModel& model, const SupportProfile& profile) {
  StratumIndex out;
  out.points = minkowski_points(model, profile);
  out.certificate = closest_point_to_origin(out.points, model.form);
  out.beta = out.certificate.beta;
  out.profile = profile;
  return out;
}

bool is_semistable(const WeightedModel& model, const SupportProfile& profile) {
  return origin_in_hull(minkowski_points(model, profile));
}

bool is_stable(const WeightedModel& model, const SupportProfile& profile) {
  return origin_in_interior(minkowski_points(model, profile), model.rank());
}

void for_each_profile(const WeightedModel& model,
                      const std::function<bool(const SupportProfile&)>& visit) {
  const std::size_t m = model.factors.size();
  for (const auto& f : model.factors) {
    if (f.size() > 24) throw std::invalid_argument("factor too large for profile enumeration");
  }
  std::vector<bool> same_as_previous(m, false);
  for (std::size_t i = 1; i < m; ++i) {
    const auto& a = model.factors[i - 1];
    const auto& b = model.factors[i];
    same_as_previous[i] = a.size() == b.size() &&
                          std::equal(a.begin(), a.end(), b.begin(),
                                     [](const LieVector& x, const LieVector& y) { return equal(x, y); });
  }
  std::vector<std::uint32_t> masks(m, 0);
  SupportProfile profile(m);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == m) {
      if (!visit(profile)) stop = true;
      return;
    }
    const std::uint32_t top = std::uint32_t{1} << model.factors[i].size();
    const std::uint32_t first = same_as_previous[i] ? masks[i - 1] : 1;
    for (std::uint32_t mask = first; mask < top && !stop; ++mask) {
      masks[i] = mask;
      profile[i].clear();
      for (std::size_t k = 0; k < model.factors[i].size(); ++k) {
        if (mask >> k & 1u) profile[i].push_back(k);
      }
      rec(i + 1);
    }
  };
  rec(0);
}

std::vector<StratumIndex> index_set(const WeightedModel& model) {
  std::vector<StratumIndex> out;
  for_each_profile(model, [&](const SupportProfile& p) {
    StratumIndex s = classify(model, p);
    for (const auto& existing : out) {
      if (equal(existing.beta, s.beta)) return true;
    }
    out.push_back(std::move(s));
    return true;
  });
  std::sort(out.begin(), out.end(), [&](const StratumIndex& a, const StratumIndex& b) {
    Rational na = model.form.norm2(a.beta), nb = model.form.norm2(b.beta);
    if (na != nb) return na < nb;
    return lex_less(a.beta, b.beta);
  });
  return out;
}

std::optional<SupportProfile> strictly_semistable_witness(const WeightedModel& model) {
  std::optional<SupportProfile> witness;
  for_each_profile(model, [&](const SupportProfile& p) {
    auto pts = minkowski_points(model, p);
    if (origin_in_hull(pts) && !origin_in_interior(pts, model.rank())) {
      witness = p;
      return false;
    }
    return true;
  });
  return witness;
}

std::vector<ZComponent> z_components(const WeightedModel& model, const LieVector& beta) {
  if (beta.size() != model.rank()) throw RankMismatch("beta has the wrong length");
  const Rational target = model.form.norm2(beta);
  const std::size_t m = model.factors.size();
  // Distinct values per factor, ascending.
  std::vector<std::vector<Rational>> values(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& a : model.factors[i]) values[i].push_back(model.form(a, beta));
    std::sort(values[i].begin(), values[i].end());
    values[i].erase(std::unique(values[i].begin(), values[i].end()), values[i].end());
  }
  // Suffix min/max prune the search.
  std::vector<Rational> lo(m + 1, Rational(0)), hi(m + 1, Rational(0));
  for (std::size_t i = m; i-- > 0;) {
    lo[i] = lo[i + 1] + values[i].front();
    hi[i] = hi[i + 1] + values[i].back();
  }
  std::vector<ZComponent> out;
  std::vector<Rational> chosen(m);
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& sum) {
    if (i == m) {
      if (sum != target) return;
      ZComponent c;
      c.values = chosen;
      c.indices.resize(m);
      for (std::size_t f = 0; f < m; ++f) {
        for (std::size_t k = 0; k < model.factors[f].size(); ++k) {
          if (model.form(model.factors[f][k], beta) == chosen[f]) c.indices[f].push_back(k);
        }
      }
      out.push_back(std::move(c));
      return;
    }
    for (const auto& v : values[i]) {
      Rational s = sum + v;
      if (s + lo[i + 1] > target || s + hi[i + 1] < target) continue;
      chosen[i] = v;
      rec(i + 1, s);
    }
  };
  rec(0, Rational(0));
  return out;
}

int codim(const WeightedModel& model, const LieVector& beta, const ZComponent& component) {
  int count = 0;
  for (std::size_t i = 0; i < model.factors.size(); ++i) {
    for (const auto& a : model.factors[i]) {
      if (model.form(a, beta) < component.values[i]) ++count;
    }
  }
  return 2 * count;
}

WeightedModel shifted_submodel(const WeightedModel& model, const LieVector& beta,
                               const ZComponent& component) {
  if (is_zero(beta)) throw std::invalid_argument("shifted submodel needs beta != 0");
  const Rational bb = model.form.norm2(beta);
  std::vector<std::vector<LieVector>> fs(model.factors.size());
  for (std::size_t i = 0; i < model.factors.size(); ++i) {
    const LieVector shift = (component.values[i] / bb) * beta;
    for (auto k : component.indices[i]) fs[i].push_back(model.factors[i][k] - shift);
  }
  return WeightedModel(model.form, std::move(fs));
}

SupportProfile full_profile(const WeightedModel& model) {
  SupportProfile p(model.factors.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = 0; k < model.factors[i].size(); ++k) p[i].push_back(k);
  }
  return p;
}

std::pair<std::size_t, int> recursion_measure(const WeightedModel& model) {
  return {model.total_slots(), linear_dimension(minkowski_points(model, full_profile(model)))};
}

}  // namespace moment_strata
