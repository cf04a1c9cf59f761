#pragma once

// Command dispatch behind the moment-strata executable. Every command reads
// JSON inputs, computes exactly and returns a JSON report whose bytes depend
// only on the inputs.

#include "moment_strata/config.hpp"
#include "moment_strata/weighted_model.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace moment_strata::cli {

/// Malformed input; exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition fails; exit code 3 with `witness` in the report.
class PreconditionFailure : public std::runtime_error {
 public:
  PreconditionFailure(const std::string& what, nlohmann::json witness)
      : std::runtime_error(what), witness(std::move(witness)) {}
  nlohmann::json witness;
};

enum ExitCode { kSuccess = 0, kInternal = 1, kValidation = 2, kPrecondition = 3 };

struct Options {
  std::string model_file;
  std::string point_file;
  std::string config_file;
  std::string group = "torus";
  std::string target = "ss";
  std::string family;
  std::string eta;
  std::string zeta;
  std::optional<std::string> epsilon;
  int trunc = 40;
  int max_degree = 12;
  /// Raw value of MOMENT_STRATA_THREADS, if set.
  std::optional<std::string> threads_env;
};

struct CommandReport {
  int exit_code = kSuccess;
  nlohmann::json body;
  /// Two-space indented JSON with a trailing newline.
  std::string text() const;
};

const std::vector<std::string>& command_names();

/// Runs one command; never throws. Files named "-" are read from stdin.
CommandReport run(const std::string& command, const Options& options);

/// FNV-1a 64-bit hash as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Positive integer, else ValidationError.
int parse_thread_cap(const std::string& value);

/// JSON string "p/q" or JSON integer; floats are rejected.
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const LieVector& v);
nlohmann::json to_json(const SupportProfile& profile);

/// {"rank", "form"?, "factors", "weyl"?}.
WeightedModel model_from_json(const nlohmann::json& j);
/// One coordinate array per factor.
std::vector<std::vector<Rational>> point_from_json(const nlohmann::json& j);
/// Array of homogeneous coordinate arrays.
Config config_from_json(const nlohmann::json& j);

}  // namespace moment_strata::cli
