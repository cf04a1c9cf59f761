#include "moment_strata/cli.hpp"

#include "moment_strata/kirwan.hpp"
#include "moment_strata/perturbation.hpp"
#include "moment_strata/residue.hpp"
#include "moment_strata/series.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace moment_strata::cli {

using nlohmann::json;

std::string CommandReport::text() const { return body.dump(2) + "\n"; }

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"index-set", "classify", "series", "perturb",
                                              "kirwan",    "pairing",  "config"};
  return names;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

int parse_thread_cap(const std::string& value) {
  if (value.empty() || value.size() > 6 || value.find_first_not_of("0123456789") != std::string::npos) {
    throw ValidationError("MOMENT_STRATA_THREADS must be a positive integer, got \"" + value + "\"");
  }
  const int n = std::stoi(value);
  if (n < 1) throw ValidationError("MOMENT_STRATA_THREADS must be a positive integer, got \"" + value + "\"");
  return n;
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ValidationError(e.what());
    }
  }
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(std::to_string(j.get<std::uint64_t>()));
    return Rational(std::to_string(j.get<std::int64_t>()));
  }
  throw ValidationError("expected a rational as a \"p/q\" string or an integer, got " + j.dump());
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const LieVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

json to_json(const SupportProfile& profile) {
  json out = json::array();
  for (const auto& f : profile) out.push_back(f);
  return out;
}

namespace {

const json& require_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  return j;
}

std::vector<Rational> rationals_from_json(const json& j, const std::string& what) {
  std::vector<Rational> out;
  for (const auto& x : require_array(j, what)) out.push_back(rational_from_json(x));
  return out;
}

LieVector vector_from_json(const json& j, const std::string& what) {
  const auto v = rationals_from_json(j, what);
  LieVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace

WeightedModel model_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("model must be a JSON object");
  if (!j.contains("rank") || !j["rank"].is_number_integer() || j["rank"].get<long>() < 1) {
    throw ValidationError("model.rank must be a positive integer");
  }
  const auto rank = static_cast<Eigen::Index>(j["rank"].get<long>());
  BilinearForm form = BilinearForm::identity(rank);
  if (j.contains("form")) {
    const auto& rows = require_array(j["form"], "model.form");
    if (static_cast<Eigen::Index>(rows.size()) != rank) throw ValidationError("model.form must have rank rows");
    RationalMatrix gram(rank, rank);
    for (Eigen::Index r = 0; r < rank; ++r) {
      const auto row = rationals_from_json(rows[static_cast<std::size_t>(r)], "model.form row");
      if (static_cast<Eigen::Index>(row.size()) != rank) throw ValidationError("model.form must be square");
      for (Eigen::Index c = 0; c < rank; ++c) gram(r, c) = row[static_cast<std::size_t>(c)];
    }
    form = BilinearForm(gram);
  }
  if (!j.contains("factors")) throw ValidationError("model.factors is required");
  std::vector<std::vector<LieVector>> factors;
  for (const auto& f : require_array(j["factors"], "model.factors")) {
    std::vector<LieVector> weights;
    for (const auto& w : require_array(f, "model factor")) weights.push_back(vector_from_json(w, "weight"));
    factors.push_back(std::move(weights));
  }
  WeylKind weyl = WeylKind::Trivial;
  if (j.contains("weyl")) {
    if (!j["weyl"].is_string()) throw ValidationError("model.weyl must be a string");
    weyl = parse_weyl_kind(j["weyl"].get<std::string>());
  }
  return WeightedModel(std::move(form), std::move(factors), weyl);
}

std::vector<std::vector<Rational>> point_from_json(const json& j) {
  std::vector<std::vector<Rational>> out;
  for (const auto& f : require_array(j, "point")) out.push_back(rationals_from_json(f, "point factor"));
  return out;
}

Config config_from_json(const json& j) {
  Config out;
  for (const auto& p : require_array(j, "configuration")) out.emplace_back(rationals_from_json(p, "configuration point"));
  return out;
}

namespace {

std::string read_input(const std::string& path, const std::string& what) {
  if (path.empty()) throw ValidationError(what + " is required");
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + what + " \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(what + " is not valid JSON: " + e.what());
  }
}

json series_json(const TruncatedSeries& s, bool with_tail) {
  json coeffs = json::array();
  for (const auto& c : s.coefficients()) coeffs.push_back(to_string(c));
  return {{"coefficients", coeffs}, {"text", s.to_string(with_tail)}};
}

json certificate_json(const StratumIndex& s) {
  json points = json::array();
  for (std::size_t idx : s.certificate.support) points.push_back(to_json(s.points[idx]));
  json coefficients = json::array();
  for (const auto& c : s.certificate.coefficients) coefficients.push_back(to_string(c));
  return {{"points", points}, {"coefficients", coefficients}};
}

json component_json(const WeightedModel& model, const LieVector& beta, const ZComponent& c) {
  json values = json::array();
  for (const auto& v : c.values) values.push_back(to_string(v));
  return {{"values", values}, {"indices", c.indices}, {"codim", codim(model, beta, c)}};
}

json stratum_json(const WeightedModel& model, const StratumIndex& s) {
  json components = json::array();
  if (!is_zero(s.beta)) {
    for (const auto& c : z_components(model, s.beta)) components.push_back(component_json(model, s.beta, c));
  }
  return {{"beta", to_json(s.beta)},
          {"norm2", to_string(model.form.norm2(s.beta))},
          {"certificate", certificate_json(s)},
          {"witness_profile", to_json(s.profile)},
          {"components", components}};
}

int parse_degree(int value, const std::string& name) {
  if (value < 0) throw ValidationError(name + " must be nonnegative");
  return value;
}

Group group_option(const Options& o) {
  try {
    return parse_group(o.group);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

void require_coprime(const WeightedModel& model) {
  if (auto w = strictly_semistable_witness(model)) {
    throw NotCoprimeStable("semistable point that is not stable: " + to_string(*w), *w);
  }
}

struct Inputs {
  std::string digest_source;
  std::optional<WeightedModel> model;
  void add(const std::string& key, const std::string& value) {
    digest_source += key;
    digest_source += '=';
    digest_source += std::to_string(value.size());
    digest_source += ':';
    digest_source += value;
    digest_source += '\n';
  }
};

json cmd_index_set(const WeightedModel& model) {
  json strata = json::array();
  for (const auto& s : index_set(model)) strata.push_back(stratum_json(model, s));
  return {{"rank", model.rank()}, {"strata", strata}};
}

json cmd_classify(const WeightedModel& model, const std::vector<std::vector<Rational>>& point) {
  const auto profile = support_of_point(model, point);
  const auto s = classify(model, profile);
  json out = stratum_json(model, s);
  out["profile"] = to_json(profile);
  out["semistable"] = is_semistable(model, profile);
  out["stable"] = is_stable(model, profile);
  return out;
}

json cmd_series(const WeightedModel& model, Group group, int trunc) {
  json out{{"group", to_string(group)}, {"truncation", trunc}};
  if (group == Group::Torus) {
    out["equivariant"] = series_json(model_equivariant_series(model, trunc), true);
    out["semistable"] = series_json(semistable_series(model, trunc), true);
    const auto report = perfection_check(model, trunc);
    out["perfection"] = {{"ok", report.ok}, {"detail", report.detail}};
    out["perfection"]["failing_degree"] = report.failing_degree ? json(*report.failing_degree) : json(nullptr);
    try {
      out["quotient"] = series_json(quotient_poincare_polynomial(model, trunc), false);
    } catch (const NotCoprimeStable& e) {
      out["quotient"] = nullptr;
      out["quotient_unavailable"] = {{"reason", e.what()}, {"witness", to_json(e.witness)}};
    }
    return out;
  }
  TruncatedSeries s(0);
  try {
    s = sl2_quotient_series(model, trunc);
  } catch (const std::invalid_argument& e) {
    throw PreconditionFailure(e.what(), {{"weyl", to_string(model.weyl)}});
  }
  out["semistable"] = series_json(s, true);
  const int top = quotient_real_dimension(model, Group::SL2);
  const auto witness = strictly_semistable_witness(model);
  if (!witness && top >= 0 && s.top_nonzero() <= top && top + 2 <= trunc) {
    out["quotient"] = series_json(s.truncated(top), false);
  } else {
    out["quotient"] = nullptr;
    out["quotient_unavailable"] = {{"reason", witness ? "semistable point that is not stable" : "series does not terminate"}};
    if (witness) out["quotient_unavailable"]["witness"] = to_json(*witness);
  }
  return out;
}

json cmd_perturb(const WeightedModel& model, const std::optional<LieVector>& given) {
  Epsilon eps;
  if (given) {
    if (given->size() != model.rank()) throw ValidationError("epsilon must have rank entries");
    eps.vector = *given;
    if (auto w = genericity_witness(model, eps.vector)) {
      throw PreconditionFailure("epsilon is not generic: a perturbed semistable profile is not stable",
                                {{"epsilon", to_json(eps.vector)}, {"profile", to_json(*w)}});
    }
    eps.genericity_certified = true;
  } else {
    eps = propose_epsilon(model);
  }
  const auto shifted = shifted_model(model, eps.vector);
  json perturbed = json::array();
  for (const auto& s : index_set(shifted)) perturbed.push_back({{"beta", to_json(s.beta)}, {"witness_profile", to_json(s.profile)}});
  const auto report = refinement_report(model, eps.vector);
  json refinement = json::array();
  for (const auto& r : report) {
    refinement.push_back(
        {{"eps_beta", to_json(r.eps_beta)}, {"parent", to_json(r.parent)}, {"witness_profile", to_json(r.witness)}});
  }
  json fibers = json::array();
  for (const auto& s : index_set(model)) {
    fibers.push_back({{"parent", to_json(s.beta)}, {"size", fiber_size(report, s.beta)}});
  }
  return {{"epsilon", to_json(eps.vector)},
          {"generic", eps.genericity_certified},
          {"perturbed_index_set", perturbed},
          {"refinement", refinement},
          {"fibers", fibers}};
}

json cmd_kirwan(const WeightedModel& model, Group group, Target target, int max_degree) {
  if (model.rank() != 1) throw ValidationError("kirwan needs a rank-1 model");
  const Presentation pres = presentation_of(model);
  if (group == Group::Torus) {
    if (target == Target::Stable) throw ValidationError("the stable target is only defined for SL(2)");
    require_coprime(model);
  }
  KernelIdeal kernel = group == Group::Torus ? torus_kernel_ideal(pres, max_degree)
                                             : sl2_kernel_ideal(pres, max_degree, target);
  json base = json::array();
  for (const auto& b : pres.base) base.push_back(to_string(b, pres.names));
  json generators = json::array();
  for (const auto& g : kernel.generators) generators.push_back(to_string(g, pres.names));
  json betti = json::array();
  for (int d = 0; d <= max_degree; ++d) betti.push_back(betti_from_presentation(pres, kernel, d));
  json out{{"group", to_string(group)},
           {"target", to_string(target)},
           {"max_degree", max_degree},
           {"presentation", {{"variables", pres.names}, {"relations", base}, {"real_dimension", pres.real_dimension}}},
           {"generators", generators},
           {"betti", betti}};
  if (group == Group::SL2) {
    const auto ff = lemma_ff_check(pres, max_degree);
    json rows = json::array();
    for (const auto& r : ff.rows) {
      rows.push_back({{"degree", r.degree},
                      {"d_kernel_dim", r.d_kernel_dim},
                      {"torus_anti_dim", r.torus_anti_dim},
                      {"forward", r.forward},
                      {"backward", r.backward},
                      {"round_trip", r.round_trip}});
    }
    out["lemma_ff"] = {{"ok", ff.ok}, {"rows", rows}};
  } else {
    const auto ee = lemma_ee_check(pres, max_degree);
    json rows = json::array();
    for (const auto& r : ee.rows) {
      rows.push_back({{"degree", r.degree}, {"ee_dim", r.ee_dim}, {"tg_dim", r.tg_dim}, {"same_span", r.same_span}});
    }
    out["lemma_ee"] = {{"ok", ee.ok}, {"rows", rows}};
  }
  return out;
}

json cmd_pairing(const WeightedModel& model, Group group, const std::string& eta, const std::string& zeta) {
  if (model.rank() != 1) throw ValidationError("pairing needs a rank-1 model");
  const Presentation pres = presentation_of(model);
  Polynomial e(pres.nvars()), z(pres.nvars());
  try {
    e = parse_polynomial(eta, pres.names);
    z = parse_polynomial(zeta, pres.names);
  } catch (const ParseError& err) {
    throw ValidationError(err.what());
  }
  const auto v = pairing(pres, e, z, group);
  return {{"group", to_string(group)},
          {"variables", pres.names},
          {"eta", to_string(e, pres.names)},
          {"zeta", to_string(z, pres.names)},
          {"raw", to_string(v.raw)},
          {"normalized", to_string(v.normalized)}};
}

json cmd_config(const Config& config, ConfigFamily family) {
  const auto label = classify(config, family);
  json points = json::array();
  for (const auto& p : config) points.push_back(to_string(p));
  return {{"family", to_string(family)}, {"points", points}, {"refined", label.refined}, {"coarse", label.coarse}};
}

json dispatch(const std::string& command, const Options& o, Inputs& in) {
  auto load_model = [&] {
    const std::string text = read_input(o.model_file, "model file");
    in.add("model", text);
    in.model = model_from_json(parse_json(text, "model file"));
    return *in.model;
  };
  if (command == "index-set") return cmd_index_set(load_model());
  if (command == "classify") {
    const auto model = load_model();
    const std::string text = read_input(o.point_file, "point file");
    in.add("point", text);
    return cmd_classify(model, point_from_json(parse_json(text, "point file")));
  }
  if (command == "series") {
    const auto model = load_model();
    in.add("group", o.group);
    in.add("trunc", std::to_string(o.trunc));
    return cmd_series(model, group_option(o), parse_degree(o.trunc, "--trunc"));
  }
  if (command == "perturb") {
    const auto model = load_model();
    std::optional<LieVector> eps;
    if (o.epsilon) {
      in.add("epsilon", *o.epsilon);
      try {
        eps = parse_vector(*o.epsilon);
      } catch (const ParseError& e) {
        throw ValidationError(e.what());
      }
    }
    return cmd_perturb(model, eps);
  }
  if (command == "kirwan") {
    const auto model = load_model();
    in.add("group", o.group);
    in.add("target", o.target);
    in.add("max_degree", std::to_string(o.max_degree));
    Target target;
    try {
      target = parse_target(o.target);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
    return cmd_kirwan(model, group_option(o), target, parse_degree(o.max_degree, "--max-degree"));
  }
  if (command == "pairing") {
    const auto model = load_model();
    in.add("group", o.group);
    in.add("eta", o.eta);
    in.add("zeta", o.zeta);
    return cmd_pairing(model, group_option(o), o.eta, o.zeta);
  }
  if (command == "config") {
    const std::string text = read_input(o.config_file, "configuration file");
    in.add("config", text);
    in.add("family", o.family);
    ConfigFamily family;
    try {
      family = parse_config_family(o.family);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
    return cmd_config(config_from_json(parse_json(text, "configuration file")), family);
  }
  throw ValidationError("unknown command \"" + command + "\"");
}

}  // namespace

CommandReport run(const std::string& command, const Options& options) {
  CommandReport report;
  Inputs in;
  in.add("command", command);
  auto fail = [&](int code, const std::string& kind, const std::string& message, json witness = nullptr) {
    report.exit_code = code;
    json err{{"kind", kind}, {"message", message}};
    if (!witness.is_null()) err["witness"] = std::move(witness);
    report.body["error"] = std::move(err);
  };
  try {
    if (options.threads_env) parse_thread_cap(*options.threads_env);
    report.body["result"] = dispatch(command, options, in);
  } catch (const NotCoprimeStable& e) {
    fail(kPrecondition, "NotCoprimeStable", e.what(), {{"profile", to_json(e.witness)}});
  } catch (const EpsilonSearchFailed& e) {
    json rejected = json::array();
    for (const auto& [eps, profile] : e.witnesses) rejected.push_back({{"epsilon", to_json(eps)}, {"profile", to_json(profile)}});
    fail(kPrecondition, "EpsilonSearchFailed", e.what(), {{"rejected", rejected}});
  } catch (const RefinementViolation& e) {
    fail(kPrecondition, "RefinementViolation", e.what(), {{"first", to_json(e.first)}, {"second", to_json(e.second)}});
  } catch (const PreconditionFailure& e) {
    fail(kPrecondition, "PreconditionFailure", e.what(), e.witness);
  } catch (const AmbiguousFlag& e) {
    fail(kPrecondition, "AmbiguousFlag", e.what());
  } catch (const NotDivisible& e) {
    fail(kPrecondition, "NotDivisible", e.what());
  } catch (const json::exception& e) {
    fail(kValidation, "ValidationError", e.what());
  } catch (const ParseError& e) {
    fail(kValidation, "ValidationError", e.what());
  } catch (const std::invalid_argument& e) {
    fail(kValidation, "ValidationError", e.what());
  } catch (const std::exception& e) {
    fail(kInternal, "InternalError", e.what());
  }
  report.body["command"] = command;
  report.body["input_digest"] = fnv1a_hex(in.digest_source);
  report.body["exact"] = true;
  return report;
}

}  // namespace moment_strata::cli
