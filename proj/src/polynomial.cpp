#include "moment_strata/polynomial.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace moment_strata {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexDescending::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(e);
}

Polynomial Polynomial::monomial(const Exponent& e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, Terms terms) {
  Polynomial p(nvars);
  p.terms_ = std::move(terms);
  return p;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

const std::pair<const Exponent, Rational>& Polynomial::leading() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return *terms_.begin();
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = total_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) != d) return false;
  }
  return true;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  if (!is_homogeneous()) throw std::invalid_argument("polynomial is not homogeneous");
  return 2 * total_degree(terms_.begin()->first);
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match the ring");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials from different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials from different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial p = *this;
  p += o;
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial p = *this;
  p -= o;
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  p *= Rational(-1);
  return p;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial p = *this;
  p *= c;
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials from different rings");
  Polynomial p(nvars_);
  Exponent e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  }
  return p;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) throw std::invalid_argument("substitution needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i]) t = t * images[i].pow(static_cast<unsigned>(e[i]));
    }
    out += t;
  }
  return out;
}

Polynomial divide_exact(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw NotDivisible("division by the zero polynomial");
  const auto& [de, dc] = d.leading();
  Polynomial rest = p;
  Polynomial q(p.nvars());
  Exponent e(p.nvars());
  while (!rest.is_zero()) {
    const auto& [re, rc] = rest.leading();
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = re[i] - de[i];
      if (e[i] < 0) throw NotDivisible("leading term is not divisible by the divisor's leading term");
    }
    Polynomial t = Polynomial::monomial(e, rc / dc);
    q += t;
    rest -= t * d;
  }
  return q;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& names) : s_(text), names_(names) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial: " + why + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial p(names_.size());
    bool negative = false;
    if (eat('-')) negative = true;
    else eat('+');
    Polynomial t = term();
    p += negative ? -t : t;
    while (true) {
      if (eat('+')) p += term();
      else if (eat('-')) p -= term();
      else return p;
    }
  }

  Polynomial term() {
    Polynomial p = factor();
    while (eat('*')) p = p * factor();
    return p;
  }

  Polynomial factor() {
    if (eat('-')) return -factor();
    Polynomial base = primary();
    if (eat('^')) {
      skip();
      std::string k = digits();
      if (k.size() > 4) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(k)));
    }
    return base;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        num += "/" + digits();
      }
      return Polynomial::constant(names_.size(), parse_rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return Polynomial::variable(names_.size(), i);
      }
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names) {
  return Parser(text, names).parse();
}

std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  if (names.size() != p.nvars()) throw std::invalid_argument("wrong number of variable names");
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) out << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) out << "-";
    const Rational a = abs(c);
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      parts.push_back(names[i] + (e[i] == 1 ? "" : "^" + std::to_string(e[i])));
    }
    if (parts.empty() || a != 1) parts.insert(parts.begin(), to_string(a));
    for (std::size_t k = 0; k < parts.size(); ++k) out << (k ? " * " : "") << parts[k];
    first = false;
  }
  return out.str();
}

std::vector<Exponent> monomials_of_total(std::size_t nvars, int total) {
  std::vector<Exponent> out;
  if (total < 0) return out;
  if (nvars == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  Exponent e(nvars, 0);
  // Descending lex among fixed total: variable 0 takes the largest share first.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, total);
  return out;
}

WeylAction WeylAction::trivial(std::size_t nvars) {
  WeylAction w;
  std::vector<Polynomial> id;
  for (std::size_t i = 0; i < nvars; ++i) id.push_back(Polynomial::variable(nvars, i));
  w.substitutions.push_back(id);
  w.signs.push_back(1);
  return w;
}

WeylAction WeylAction::negate_variable(std::size_t nvars, std::size_t index) {
  WeylAction w = trivial(nvars);
  auto images = w.substitutions.front();
  images[index] = -images[index];
  w.substitutions.push_back(images);
  w.signs.push_back(-1);
  return w;
}

Polynomial WeylAction::apply(std::size_t w, const Polynomial& p) const { return p.substitute(substitutions.at(w)); }

bool WeylAction::is_valid_group() const {
  if (substitutions.empty() || substitutions.size() != signs.size()) return false;
  const std::size_t n = substitutions.front().size();
  auto find = [&](const std::vector<Polynomial>& images) -> std::ptrdiff_t {
    for (std::size_t w = 0; w < substitutions.size(); ++w) {
      if (substitutions[w] == images) return static_cast<std::ptrdiff_t>(w);
    }
    return -1;
  };
  std::vector<Polynomial> id;
  for (std::size_t i = 0; i < n; ++i) id.push_back(Polynomial::variable(n, i));
  const auto e = find(id);
  if (e < 0 || signs[static_cast<std::size_t>(e)] != 1) return false;
  for (std::size_t a = 0; a < substitutions.size(); ++a) {
    for (std::size_t b = 0; b < substitutions.size(); ++b) {
      // (a o b)(x_i) = a(b(x_i))
      std::vector<Polynomial> images;
      for (std::size_t i = 0; i < n; ++i) images.push_back(apply(a, substitutions[b][i]));
      const auto c = find(images);
      if (c < 0 || signs[static_cast<std::size_t>(c)] != signs[a] * signs[b]) return false;
    }
  }
  return true;
}

bool WeylAction::is_invariant(const Polynomial& p) const {
  for (std::size_t w = 0; w < order(); ++w) {
    if (apply(w, p) != p) return false;
  }
  return true;
}

bool WeylAction::is_anti_invariant(const Polynomial& p) const {
  for (std::size_t w = 0; w < order(); ++w) {
    if (apply(w, p) != p * Rational(signs[w])) return false;
  }
  return true;
}

Polynomial antisymmetrize(const Polynomial& p, const WeylAction& w) {
  Polynomial out(p.nvars());
  for (std::size_t k = 0; k < w.order(); ++k) out += w.apply(k, p) * Rational(w.signs[k]);
  out *= Rational(1, static_cast<long>(w.order()));
  return out;
}

Polynomial symmetrize(const Polynomial& p, const WeylAction& w) {
  Polynomial out(p.nvars());
  for (std::size_t k = 0; k < w.order(); ++k) out += w.apply(k, p);
  out *= Rational(1, static_cast<long>(w.order()));
  return out;
}

}  // namespace moment_strata
