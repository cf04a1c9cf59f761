#include "moment_strata/config.hpp"

#include "moment_strata/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace moment_strata {

ProjPoint::ProjPoint(std::vector<Rational> coords) : c_(std::move(coords)) {
  auto lead = std::find_if(c_.begin(), c_.end(), [](const Rational& x) { return sgn(x) != 0; });
  if (c_.size() < 2 || lead == c_.end()) throw std::invalid_argument("a projective point needs a nonzero vector");
  const Rational inv = Rational(1) / *lead;
  for (auto& x : c_) x *= inv;
}

std::string to_string(const ProjPoint& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coords().size(); ++i) s += (i ? ":" : "") + to_string(p.coords()[i]);
  return s + "]";
}

ConfigFamily parse_config_family(std::string_view name) {
  if (name == "p1") return ConfigFamily::P1;
  if (name == "binary") return ConfigFamily::Binary;
  if (name == "p2") return ConfigFamily::P2;
  throw std::invalid_argument("unknown config family '" + std::string(name) + "'");
}

std::string to_string(ConfigFamily f) {
  switch (f) {
    case ConfigFamily::P1: return "p1";
    case ConfigFamily::Binary: return "binary";
    case ConfigFamily::P2: return "p2";
  }
  return "";
}

namespace {

void require_dimension(const Config& config, std::size_t dim) {
  if (config.empty()) throw std::invalid_argument("a configuration needs at least one point");
  for (const auto& p : config) {
    if (p.dimension() != dim) throw std::invalid_argument("every point must lie in P_" + std::to_string(dim));
  }
}

std::map<ProjPoint, int> multiplicities(const Config& config) {
  std::map<ProjPoint, int> m;
  for (const auto& p : config) ++m[p];
  return m;
}

std::string morse(int value) { return "S_{" + std::to_string(value) + "}"; }

// Max multiplicity rule shared by ordered tuples and binary forms; nullopt when semistable.
std::optional<std::string> p1_unstable(const std::map<ProjPoint, int>& mult, int n) {
  int j = 0;
  for (const auto& [p, c] : mult) j = std::max(j, c);
  if (2 * j > n) return morse(2 * j - n);
  return std::nullopt;
}

std::vector<int> sorted_multiplicities(const std::map<ProjPoint, int>& mult) {
  std::vector<int> out;
  for (const auto& [p, c] : mult) out.push_back(c);
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

StratumLabel classify_p1_tuple(const Config& config) {
  require_dimension(config, 1);
  const int n = static_cast<int>(config.size());
  const auto mult = multiplicities(config);
  if (auto s = p1_unstable(mult, n)) return {*s, *s};
  const auto sorted = sorted_multiplicities(mult);
  if (n % 2 == 0 && 2 * sorted.front() == n) {
    return {sorted.size() == 2 ? "(T)" : "(T,2)", morse(0)};
  }
  return {"Stable", morse(0)};
}

namespace {

// Coefficients a_i of u^i v^(n-i) in prod_r (y_r u - x_r v).
std::vector<Rational> form_coefficients(const Config& roots) {
  std::vector<Rational> a{1};
  for (const auto& r : roots) {
    const Rational& x = r.coords()[0];
    const Rational& y = r.coords()[1];
    std::vector<Rational> next(a.size() + 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      next[i + 1] += a[i] * y;
      next[i] -= a[i] * x;
    }
    a = std::move(next);
  }
  return a;
}

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
  return r;
}

// Coefficients of F(u, v + c u) from those of F(u, v).
std::vector<Rational> shear(const std::vector<Rational>& a, const Rational& c) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<Rational> out(a.size(), Rational(0));
  for (int i = 0; i <= n; ++i) {
    if (sgn(a[static_cast<std::size_t>(i)]) == 0) continue;
    // u^i (v + c u)^(n-i) = sum_l binom(n-i, l) c^l u^(i+l) v^(n-i-l)
    for (int l = 0; l <= n - i; ++l) {
      out[static_cast<std::size_t>(i + l)] +=
          a[static_cast<std::size_t>(i)] * binomial(n - i, l) * pow(c, static_cast<unsigned>(l));
    }
  }
  return out;
}

}  // namespace

std::optional<int> binary_form_k(const Config& roots) {
  require_dimension(roots, 1);
  const int n = static_cast<int>(roots.size());
  if (n % 2 != 0) return std::nullopt;
  const int m = n / 2;
  const auto mult = multiplicities(roots);
  std::optional<ProjPoint> p;
  int half = 0;
  for (const auto& [q, c] : mult) {
    if (c > m) return std::nullopt;
    if (c == m) {
      p = q;
      ++half;
    }
  }
  if (half != 1) return std::nullopt;
  // Move p to [0:1]: the first row kills p, the second row pairs to 1 with it.
  const Rational& x = p->coords()[0];
  const Rational& y = p->coords()[1];
  RationalMatrix g(2, 2);
  g << y, -x, (sgn(y) != 0 ? Rational(0) : Rational(1) / x), (sgn(y) != 0 ? Rational(1) / y : Rational(0));
  return binary_form_k_at_zero(form_coefficients(transform(g, roots)));
}

int binary_form_k_at_zero(std::vector<Rational> a) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("binary form: degree must be even and positive");
  const int m = n / 2;
  for (int i = 0; i < m; ++i) {
    if (sgn(a[static_cast<std::size_t>(i)]) != 0) throw std::invalid_argument("binary form: [0:1] is not a root of multiplicity n/2");
  }
  if (sgn(a[static_cast<std::size_t>(m)]) == 0) throw std::invalid_argument("binary form: [0:1] has multiplicity above n/2");
  // The unique shear fixing 0 that kills a_{m+1}.
  const Rational c = -a[static_cast<std::size_t>(m + 1)] / (Rational(m) * a[static_cast<std::size_t>(m)]);
  a = shear(a, c);
  for (int i = m + 1; i <= n; ++i) {
    if (sgn(a[static_cast<std::size_t>(i)]) != 0) return i - m;
  }
  throw std::logic_error("binary form: the remaining roots coincide, so two roots have multiplicity n/2");
}

StratumLabel classify_binary_form(const Config& roots) {
  require_dimension(roots, 1);
  const int n = static_cast<int>(roots.size());
  const auto mult = multiplicities(roots);
  if (auto s = p1_unstable(mult, n)) return {*s, *s};
  const auto sorted = sorted_multiplicities(mult);
  if (n % 2 == 0 && 2 * sorted.front() == n) {
    if (sorted.size() == 2) return {"(T)", morse(0)};
    return {"(T," + std::to_string(2 * *binary_form_k(roots)) + ")", morse(0)};
  }
  return {"Stable", morse(0)};
}

namespace {

using Line = ProjPoint;  // coefficients of a linear form

Line line_through(const ProjPoint& p, const ProjPoint& q) {
  const auto& a = p.coords();
  const auto& b = q.coords();
  return Line({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]});
}

bool on(const ProjPoint& p, const Line& l) {
  const auto& a = p.coords();
  const auto& c = l.coords();
  return sgn(a[0] * c[0] + a[1] * c[1] + a[2] * c[2]) == 0;
}

std::string tuple(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

struct P2Data {
  int n = 0;
  std::map<ProjPoint, int> mult;
  std::map<Line, int> lines;  // every line through two distinct points, with its point count

  explicit P2Data(const Config& config) : n(static_cast<int>(config.size())), mult(multiplicities(config)) {
    for (auto i = mult.begin(); i != mult.end(); ++i) {
      for (auto j = std::next(i); j != mult.end(); ++j) lines.emplace(line_through(i->first, j->first), 0);
    }
    for (auto& [l, count] : lines) count = count_on(l);
  }

  int count_on(const Line& l) const {
    int c = 0;
    for (const auto& [p, k] : mult) {
      if (on(p, l)) c += k;
    }
    return c;
  }

  int max_mult_on(const Line& l) const {
    int c = 0;
    for (const auto& [p, k] : mult) {
      if (on(p, l)) c = std::max(c, k);
    }
    return c;
  }

  int distinct_on(const Line& l) const {
    int c = 0;
    for (const auto& [p, k] : mult) c += on(p, l) ? 1 : 0;
    return c;
  }

  /// Lines through p and another point, with the count of points off p.
  std::map<Line, int> pencil(const ProjPoint& p) const {
    std::map<Line, int> out;
    for (const auto& [l, count] : lines) {
      if (on(p, l)) out.emplace(l, count - mult.at(p));
    }
    return out;
  }

  bool semistable() const {
    for (const auto& [p, k] : mult) {
      if (3 * k > n) return false;
    }
    for (const auto& [l, count] : lines) {
      if (3 * count > 2 * n) return false;
    }
    return true;
  }

  bool stable() const {
    for (const auto& [p, k] : mult) {
      if (3 * k >= n) return false;
    }
    for (const auto& [l, count] : lines) {
      if (3 * count >= 2 * n) return false;
    }
    return true;
  }
};

enum class FlagType { Point, Line, Full };

struct Flag {
  FlagType type;
  std::optional<ProjPoint> point;
  std::optional<Line> line;
  std::vector<Rational> beta;  // in Lie(U(3)), decreasing
};

// Every flag 0 < M_1 < ... < C^3 with strictly decreasing k_i / m_i and
// semistable projections on the two-dimensional pieces.
std::vector<Flag> destabilizing_flags(const P2Data& d) {
  std::vector<Flag> out;
  const int n = d.n;
  for (const auto& [p, k] : d.mult) {
    if (2 * k > n - k) {
      bool projection_semistable = true;
      for (const auto& [l, rest] : d.pencil(p)) {
        if (2 * rest > n - k) projection_semistable = false;
      }
      if (projection_semistable) {
        out.push_back({FlagType::Point, p, std::nullopt, {Rational(k), Rational(n - k, 2), Rational(n - k, 2)}});
      }
    }
    for (const auto& [l, rest] : d.pencil(p)) {
      const int k2 = rest;
      const int k3 = n - k - k2;
      if (k > k2 && k2 > k3) out.push_back({FlagType::Full, p, l, {Rational(k), Rational(k2), Rational(k3)}});
    }
  }
  for (const auto& [l, k] : d.lines) {
    if (k > 2 * (n - k) && 2 * d.max_mult_on(l) <= k) {
      out.push_back({FlagType::Line, std::nullopt, l, {Rational(k, 2), Rational(k, 2), Rational(n - k)}});
    }
  }
  for (auto& f : out) {
    for (auto& b : f.beta) b.canonicalize();
  }
  return out;
}

Flag unique_flag(const P2Data& d) {
  const auto flags = destabilizing_flags(d);
  if (flags.size() != 1) {
    throw AmbiguousFlag("an unstable configuration has " + std::to_string(flags.size()) + " destabilizing flags");
  }
  return flags.front();
}

std::string p2_coarse(const P2Data& d) {
  if (d.semistable()) {
    Rational third(d.n, 3);
    third.canonicalize();
    return "S_{" + tuple({third, third, third}) + "}";
  }
  return "S_{" + tuple(unique_flag(d).beta) + "}";
}

std::string refine_unstable(const P2Data& d, const Flag& f) {
  const std::string base = tuple(f.beta);
  const int n = d.n;
  if (f.type == FlagType::Line) {
    const int k = d.count_on(*f.line);
    if (k % 2 != 0) return "S_{" + base + "}";
    const int top = d.max_mult_on(*f.line);
    if (2 * top < k) return base;
    // Exactly k/2 coincide; the rest on L either coincide elsewhere or not.
    const std::string tail = base.substr(0, base.size() - 1);
    return d.distinct_on(*f.line) == 2 ? tail + ",T1)" : tail + ",T1,3)";
  }
  if (f.type == FlagType::Point) {
    const int rest = n - d.mult.at(*f.point);
    if (rest % 2 != 0 || rest == 0) return "S_{" + base + "}";
    int full = 0;
    for (const auto& [l, c] : d.pencil(*f.point)) {
      if (2 * c == rest) ++full;
    }
    const std::string tail = base.substr(0, base.size() - 1);
    if (full == 0) return base;
    return full == 2 ? tail + ",T2)" : tail + ",T2,3)";
  }
  return "S_{" + base + "}";
}

std::string refine_semistable(const P2Data& d) {
  if (d.stable()) return "Stable";
  const int n = d.n;
  if (n % 3 != 0) throw std::logic_error("strictly semistable configuration with n not divisible by 3");
  const int c = n / 3;
  std::vector<ProjPoint> heavy;
  for (const auto& [p, k] : d.mult) {
    if (k == c) heavy.push_back(p);
  }
  if (heavy.size() == 3) return "(T)";
  // Pairs (p, L): p of multiplicity n/3 on a line L carrying 2n/3 points.
  std::vector<std::pair<ProjPoint, Line>> pairs;
  for (const auto& p : heavy) {
    for (const auto& [l, count] : d.lines) {
      if (on(p, l) && count == 2 * c) pairs.emplace_back(p, l);
    }
  }
  if (!pairs.empty()) {
    for (const auto& [p, l] : pairs) {
      // (d): the points of L off p do not all coincide, and another heavy point lies off L.
      std::set<ProjPoint> off_p;
      for (const auto& [q, k] : d.mult) {
        if (on(q, l) && !(q == p)) off_p.insert(q);
      }
      const bool spread = off_p.size() > 1;
      const bool heavy_off = std::any_of(heavy.begin(), heavy.end(), [&](const ProjPoint& q) { return !on(q, l); });
      if (spread && heavy_off) return "(T,(1,0,-1))";
    }
    std::set<ProjPoint> ps;
    std::set<Line> ls;
    for (const auto& [p, l] : pairs) {
      ps.insert(p);
      ls.insert(l);
    }
    if (ps.size() == 1 && ls.size() == 1) return "(T,(1/2,0,-1/2))";
    if (ls.size() == 1) return "(T,(1/2,1/2,-1))";
    if (ps.size() == 1) return "(T,(1,-1/2,-1/2))";
    throw std::logic_error("unclassified configuration with a heavy point on a heavy line");
  }
  const bool heavy_line = std::any_of(d.lines.begin(), d.lines.end(), [&](const auto& e) { return e.second == 2 * c; });
  if (!heavy.empty() && heavy_line) return "(T1)";
  if (heavy_line) return "(T1,3)";
  return "(T1,-3)";
}

}  // namespace

StratumLabel classify_p2_tuple(const Config& config) {
  require_dimension(config, 2);
  const P2Data d(config);
  if (d.semistable()) return {refine_semistable(d), p2_coarse(d)};
  const Flag f = unique_flag(d);
  return {refine_unstable(d, f), "S_{" + tuple(f.beta) + "}"};
}

std::string morse_label_of_config(const Config& config, ConfigFamily family) {
  switch (family) {
    case ConfigFamily::P1:
    case ConfigFamily::Binary: {
      require_dimension(config, 1);
      const auto mult = multiplicities(config);
      return p1_unstable(mult, static_cast<int>(config.size())).value_or(morse(0));
    }
    case ConfigFamily::P2:
      require_dimension(config, 2);
      return p2_coarse(P2Data(config));
  }
  return "";
}

StratumLabel classify(const Config& config, ConfigFamily family) {
  switch (family) {
    case ConfigFamily::P1: return classify_p1_tuple(config);
    case ConfigFamily::Binary: return classify_binary_form(config);
    case ConfigFamily::P2: return classify_p2_tuple(config);
  }
  return {};
}

Config transform(const RationalMatrix& g, const Config& config) {
  Config out;
  out.reserve(config.size());
  for (const auto& p : config) {
    const auto& c = p.coords();
    if (g.rows() != static_cast<Eigen::Index>(c.size()) || g.cols() != g.rows()) {
      throw std::invalid_argument("transformation has the wrong size");
    }
    if (linalg::determinant(g) == 0) throw std::invalid_argument("transformation is singular");
    std::vector<Rational> image(c.size(), Rational(0));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = 0; j < g.cols(); ++j) image[static_cast<std::size_t>(i)] += g(i, j) * c[static_cast<std::size_t>(j)];
    }
    out.emplace_back(std::move(image));
  }
  return out;
}

}  // namespace moment_strata
