#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moment_strata/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace moment_strata;
using namespace moment_strata::cli;
using nlohmann::json;

namespace {

// Writes `text` to a fresh file in the temp directory and removes it on destruction.
class TempFile {
 public:
  TempFile(const std::string& name, const std::string& text)
      : path_(std::filesystem::temp_directory_path() / ("moment_strata_test_" + name)) {
    std::ofstream(path_) << text;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

const std::string kP3 = R"({"rank": 1, "factors": [[["3"], ["1"], ["-1"], ["-3"]]], "weyl": "sl2"})";
const std::string kP1Fourth =
    R"({"rank": 1, "factors": [[["1"], ["-1"]], [["1"], ["-1"]], [["1"], ["-1"]], [["1"], ["-1"]]], "weyl": "sl2"})";

CommandReport run_with_model(const std::string& command, const std::string& model, Options o = {}) {
  TempFile f("model_" + command + ".json", model);
  o.model_file = f.path();
  return run(command, o);
}

}  // namespace

TEST_CASE("FNV-1a digests") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("JSON inputs") {
  CHECK(rational_from_json(json("3/6")) == Rational(1, 2));
  CHECK(rational_from_json(json(-4)) == -4);
  CHECK_THROWS_AS(rational_from_json(json(0.5)), ValidationError);
  CHECK_THROWS_AS(rational_from_json(json("0.5")), ValidationError);

  const auto m = model_from_json(json::parse(kP3));
  CHECK(m.rank() == 1);
  CHECK(m.factors[0].size() == 4);
  CHECK(m.weyl == WeylKind::SL2);
  const auto ranked = model_from_json(json::parse(R"({"rank": 2, "form": [["2","1"],["1","2"]], "factors": [[["1","0"],["0","1"]]]})"));
  CHECK(ranked.form.gram()(0, 1) == 1);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"factors": []})")), ValidationError);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"rank": 1, "factors": [[["1","2"]]]})")), std::invalid_argument);

  const auto c = config_from_json(json::parse(R"([["2","4"], [0, 1]])"));
  REQUIRE(c.size() == 2);
  CHECK(c[0] == ProjPoint({Rational(1), Rational(2)}));
  CHECK_THROWS_AS(config_from_json(json::parse(R"([["0","0"]])")), std::invalid_argument);
}

TEST_CASE("thread cap validation") {
  CHECK(parse_thread_cap("4") == 4);
  CHECK_THROWS_AS(parse_thread_cap("0"), ValidationError);
  CHECK_THROWS_AS(parse_thread_cap("-2"), ValidationError);
  CHECK_THROWS_AS(parse_thread_cap("two"), ValidationError);
  Options o;
  o.threads_env = "abc";
  CHECK(run_with_model("index-set", kP3, o).exit_code == kValidation);
  o.threads_env = "3";
  CHECK(run_with_model("index-set", kP3, o).exit_code == kSuccess);
}

TEST_CASE("reports carry the common fields and are deterministic") {
  for (const auto& command : command_names()) {
    Options o;
    o.eta = "1";
    o.zeta = "1";
    o.family = "p1";
    o.max_degree = 6;
    o.group = command == "pairing" ? "sl2" : "torus";
    TempFile point("point.json", R"([["1", "0", "0", "1"]])");
    TempFile config("config.json", R"([["0","1"], ["1","0"], ["1","1"]])");
    o.point_file = point.path();
    o.config_file = config.path();
    const auto a = run_with_model(command, kP3, o);
    const auto b = run_with_model(command, kP3, o);
    INFO(command << ": " << a.text());
    CHECK(a.exit_code == kSuccess);
    CHECK(a.text() == b.text());
    CHECK(a.body["command"] == command);
    CHECK(a.body["exact"] == true);
    CHECK(a.body["input_digest"].get<std::string>().size() == 16);
    CHECK(a.body.contains("result"));
  }
  // The digest tracks the inputs.
  Options o;
  o.max_degree = 4;
  const auto d4 = run_with_model("kirwan", kP3, o).body["input_digest"];
  o.max_degree = 6;
  CHECK(run_with_model("kirwan", kP3, o).body["input_digest"] != d4);
}

TEST_CASE("command results") {
  const auto idx = run_with_model("index-set", kP3).body["result"]["strata"];
  REQUIRE(idx.size() == 5);
  CHECK(idx[0]["beta"] == json::array({"0"}));
  CHECK(idx[4]["norm2"] == "9");

  Options s;
  s.group = "sl2";
  const auto series = run_with_model("series", kP3, s).body["result"];
  CHECK(series["quotient"]["text"] == "1");

  Options k;
  k.group = "torus";
  const auto kt = run_with_model("kirwan", kP3, k).body["result"];
  CHECK(kt["betti"] == json::array({1, 0, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(kt["lemma_ee"]["ok"] == true);
  k.group = "sl2";
  k.max_degree = 12;
  const auto ks = run_with_model("kirwan", kP1Fourth, k).body["result"];
  CHECK(ks["lemma_ff"]["ok"] == true);
  k.target = "s";
  CHECK(run_with_model("kirwan", kP1Fourth, k).exit_code == kSuccess);

  Options p;
  p.group = "sl2";
  p.eta = "1";
  p.zeta = "1";
  CHECK(run_with_model("pairing", kP3, p).body["result"]["normalized"] == "1/6");

  Options e;
  e.epsilon = "1/97";
  const auto fibers = run_with_model("perturb", kP1Fourth, e).body["result"]["fibers"];
  for (const auto& f : fibers) {
    if (f["parent"] == json::array({"0"})) CHECK(f["size"] == 2);
  }
}

TEST_CASE("exit codes") {
  Options t;
  t.group = "torus";
  const auto r = run_with_model("kirwan", kP1Fourth, t);
  CHECK(r.exit_code == kPrecondition);
  CHECK(r.body["error"]["kind"] == "NotCoprimeStable");
  CHECK(r.body["error"]["witness"]["profile"].size() == 4);
  t.eta = "1";
  t.zeta = "1";
  CHECK(run_with_model("pairing", kP1Fourth, t).exit_code == kPrecondition);

  Options bad_eps;
  bad_eps.epsilon = "0";
  const auto eps = run_with_model("perturb", kP1Fourth, bad_eps);
  CHECK(eps.exit_code == kPrecondition);
  CHECK(eps.body["error"].contains("witness"));
  bad_eps.epsilon = "0.1";
  CHECK(run_with_model("perturb", kP1Fourth, bad_eps).exit_code == kValidation);

  CHECK(run_with_model("index-set", "{not json").exit_code == kValidation);
  CHECK(run_with_model("index-set", R"({"rank": 1, "factors": [[["1/0"]]]})").exit_code == kValidation);
  Options missing;
  missing.model_file = "/nonexistent/model.json";
  CHECK(run("index-set", missing).exit_code == kValidation);
  CHECK(run("no-such-command", {}).exit_code == kValidation);
  Options trunc;
  trunc.trunc = -1;
  CHECK(run_with_model("series", kP3, trunc).exit_code == kValidation);
  Options poly;
  poly.eta = "q^2";
  poly.zeta = "1";
  CHECK(run_with_model("pairing", kP3, poly).exit_code == kValidation);
}
