#include "moment_strata/series.hpp"

#include <algorithm>
#include <sstream>

namespace moment_strata {

TruncatedSeries::TruncatedSeries(int degree) {
  if (degree < 0) throw std::invalid_argument("truncation degree must be nonnegative");
  c_.assign(static_cast<std::size_t>(degree) + 1, Rational(0));
}

TruncatedSeries::TruncatedSeries(int degree, std::vector<Rational> coefficients) : TruncatedSeries(degree) {
  for (std::size_t k = 0; k < coefficients.size() && k < c_.size(); ++k) c_[k] = coefficients[k];
}

TruncatedSeries TruncatedSeries::one(int degree) {
  TruncatedSeries s(degree);
  s.c_[0] = 1;
  return s;
}

const Rational& TruncatedSeries::operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
Rational& TruncatedSeries::operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t k = 0; k < n; ++k) c_[k] += o.c_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  const std::size_t n = std::min(c_.size(), o.c_.size());
  c_.resize(n);
  for (std::size_t k = 0; k < n; ++k) c_[k] -= o.c_[k];
  return *this;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  TruncatedSeries s = *this;
  s += o;
  return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  TruncatedSeries s = *this;
  s -= o;
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  TruncatedSeries s(std::min(degree(), o.degree()));
  for (int i = 0; i <= s.degree(); ++i) {
    if (sgn(c_[static_cast<std::size_t>(i)]) == 0) continue;
    for (int j = 0; i + j <= s.degree(); ++j) s[i + j] += (*this)[i] * o[j];
  }
  return s;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const { return c_ == o.c_; }

TruncatedSeries TruncatedSeries::shifted(int k) const {
  if (k < 0) throw std::invalid_argument("negative shift");
  TruncatedSeries s(degree());
  for (int i = 0; i + k <= degree(); ++i) s[i + k] = (*this)[i];
  return s;
}

TruncatedSeries TruncatedSeries::divided_by_one_minus(int step) const {
  if (step <= 0) throw std::invalid_argument("step must be positive");
  TruncatedSeries s = *this;
  for (int k = step; k <= degree(); ++k) s[k] += s[k - step];
  return s;
}

TruncatedSeries TruncatedSeries::truncated(int d) const {
  if (d > degree()) throw std::invalid_argument("cannot raise the truncation of a series");
  return TruncatedSeries(d, std::vector<Rational>(c_.begin(), c_.begin() + d + 1));
}

TruncatedSeries TruncatedSeries::padded(int d) const { return TruncatedSeries(d, c_); }

bool TruncatedSeries::has_nonnegative_integer_coefficients() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const Rational& q) { return sgn(q) >= 0 && q.get_den() == 1; });
}

int TruncatedSeries::top_nonzero() const {
  for (int k = degree(); k >= 0; --k) {
    if (sgn((*this)[k]) != 0) return k;
  }
  return -1;
}

std::string TruncatedSeries::to_string(bool with_tail) const {
  std::ostringstream out;
  bool first = true;
  for (int k = 0; k <= degree(); ++k) {
    Rational c = (*this)[k];
    if (sgn(c) == 0) continue;
    if (!first) out << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) out << '-';
    Rational a = abs(c);
    if (k == 0) {
      out << moment_strata::to_string(a);
    } else {
      if (a != 1) out << moment_strata::to_string(a) << '*';
      out << "t" << (k == 1 ? "" : "^" + std::to_string(k));
    }
    first = false;
  }
  if (first) out << '0';
  if (with_tail) out << " (+ O(t^" << (degree() % 2 == 0 ? degree() + 2 : degree() + 1) << "))";
  return out.str();
}

TruncatedSeries ordinary_series(const WeightedModel& model, int degree) {
  TruncatedSeries p = TruncatedSeries::one(degree);
  for (const auto& factor : model.factors) {
    TruncatedSeries f(degree);
    for (std::size_t k = 0; k < factor.size() && 2 * static_cast<int>(k) <= degree; ++k) f[2 * static_cast<int>(k)] = 1;
    p = p * f;
  }
  return p;
}

TruncatedSeries model_equivariant_series(const WeightedModel& model, int degree) {
  TruncatedSeries p = ordinary_series(model, degree);
  for (Eigen::Index i = 0; i < model.rank(); ++i) p = p.divided_by_one_minus(2);
  return p;
}

std::string canonical_key(const WeightedModel& model) {
  std::vector<std::string> factors;
  for (const auto& f : model.factors) {
    std::vector<LieVector> w = f;
    std::sort(w.begin(), w.end(), lex_less);
    std::string s;
    for (const auto& a : w) s += to_string(a);
    factors.push_back(s);
  }
  std::sort(factors.begin(), factors.end());
  std::ostringstream out;
  out << "G";
  for (Eigen::Index i = 0; i < model.form.gram().rows(); ++i)
    for (Eigen::Index j = 0; j < model.form.gram().cols(); ++j) out << ',' << to_string(model.form.gram()(i, j));
  for (const auto& s : factors) out << '|' << s;
  return out.str();
}

std::vector<StratumTerm> SeriesEngine::unstable_terms(const WeightedModel& model, int degree) {
  std::vector<StratumTerm> terms;
  const auto measure = recursion_measure(model);
  for (const auto& s : index_set(model)) {
    if (is_zero(s.beta)) continue;
    for (auto& comp : z_components(model, s.beta)) {
      StratumTerm term;
      term.beta = s.beta;
      term.codim = codim(model, s.beta, comp);
      term.series = TruncatedSeries(degree);
      if (term.codim <= degree) {
        WeightedModel sub = shifted_submodel(model, s.beta, comp);
        if (!(recursion_measure(sub) < measure)) {
          throw RecursionMeasureViolation("recursion measure did not decrease at beta " + to_string(s.beta));
        }
        term.series = semistable(sub, degree - term.codim).padded(degree).shifted(term.codim);
      }
      term.component = std::move(comp);
      terms.push_back(std::move(term));
    }
  }
  return terms;
}

TruncatedSeries SeriesEngine::semistable(const WeightedModel& model, int degree) {
  const std::string key = canonical_key(model) + "#" + std::to_string(degree);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  TruncatedSeries p = model_equivariant_series(model, degree);
  for (const auto& term : unstable_terms(model, degree)) p -= term.series;
  memo_.emplace(key, p);
  return p;
}

TruncatedSeries semistable_series(const WeightedModel& model, int degree) {
  SeriesEngine engine;
  return engine.semistable(model, degree);
}

namespace {

void check_level(SeriesEngine& engine, const WeightedModel& model, int degree, PerfectionReport& report,
                 const std::string& path) {
  if (!report.ok) return;
  const TruncatedSeries total = model_equivariant_series(model, degree);
  TruncatedSeries sum = engine.semistable(model, degree);
  if (!sum.has_nonnegative_integer_coefficients()) {
    report.ok = false;
    report.detail = "semistable series of " + path + " has a coefficient outside N: " + sum.to_string();
  }
  for (const auto& term : engine.unstable_terms(model, degree)) {
    sum += term.series;
    if (term.codim % 2 != 0 || !term.series.has_nonnegative_integer_coefficients()) {
      report.ok = false;
      report.detail = "stratum " + to_string(term.beta) + " of " + path + " has an invalid series";
    }
    if (report.ok && term.codim <= degree) {
      check_level(engine, shifted_submodel(model, term.beta, term.component), degree - term.codim, report,
                  path + "/" + to_string(term.beta));
    }
    if (!report.ok) return;
  }
  for (int k = 0; k <= degree; ++k) {
    if (sum[k] != total[k]) {
      report.ok = false;
      report.failing_degree = k;
      report.detail = "stratum sum differs from P_T(X) in degree " + std::to_string(k) + " at " + path;
      return;
    }
  }
}

}  // namespace

PerfectionReport perfection_check(const WeightedModel& model, int degree) {
  PerfectionReport report;
  SeriesEngine engine;
  check_level(engine, model, degree, report, "X");
  return report;
}

int quotient_complex_dimension(const WeightedModel& model) {
  int d = 0;
  for (const auto& f : model.factors) d += static_cast<int>(f.size()) - 1;
  return d - static_cast<int>(model.rank());
}

TruncatedSeries quotient_poincare_polynomial(const WeightedModel& model, int degree) {
  if (auto w = strictly_semistable_witness(model)) {
    throw NotCoprimeStable("semistable point that is not stable: " + to_string(*w), *w);
  }
  const int top = 2 * quotient_complex_dimension(model);
  const int needed = std::max(top, 0) + 4;
  if (degree < needed) {
    throw TruncationTooSmall("truncation " + std::to_string(degree) + " below required " + std::to_string(needed));
  }
  TruncatedSeries s = semistable_series(model, degree);
  for (int k = std::max(top + 1, 0); k <= degree; ++k) {
    if (sgn(s[k]) != 0) {
      throw std::logic_error("semistable series does not terminate at degree " + std::to_string(top));
    }
  }
  return s.truncated(std::max(top, 0));
}

bool is_negation_symmetric(const WeightedModel& model) {
  for (const auto& f : model.factors) {
    std::vector<LieVector> a = f, b;
    for (const auto& w : f) b.push_back(-w);
    std::sort(a.begin(), a.end(), lex_less);
    std::sort(b.begin(), b.end(), lex_less);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!equal(a[k], b[k])) return false;
    }
  }
  return true;
}

TruncatedSeries sl2_quotient_series(const WeightedModel& model, int degree) {
  if (model.rank() != 1) throw std::invalid_argument("SL(2) folding needs a rank-1 model");
  if (!is_negation_symmetric(model)) throw std::invalid_argument("weights are not symmetric under alpha -> -alpha");
  SeriesEngine engine;
  TruncatedSeries p = ordinary_series(model, degree).divided_by_one_minus(4);
  for (const auto& s : index_set(model)) {
    if (sgn(s.beta(0)) <= 0) continue;
    for (const auto& comp : z_components(model, s.beta)) {
      const int lambda = codim(model, s.beta, comp) - 2;
      if (lambda < 0) throw std::logic_error("SL(2) stratum of negative codimension");
      if (lambda > degree) continue;
      WeightedModel sub = shifted_submodel(model, s.beta, comp);
      p -= engine.semistable(sub, degree - lambda).padded(degree).shifted(lambda);
    }
  }
  return p;
}

}  // namespace moment_strata
