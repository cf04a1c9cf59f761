#include "moment_strata/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

void add_group(CLI::App* sub, std::string& group) {
  sub->add_option("--group", group, "torus | sl2")->check(CLI::IsMember({"torus", "sl2"}));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace moment_strata::cli;
  Options o;
  CLI::App app{"Exact Morse stratifications of moment-map norm squares and their quotients"};
  app.require_subcommand(1);

  auto* index_set = app.add_subcommand("index-set", "Stratum indices with projection certificates");
  index_set->add_option("model", o.model_file, "model JSON file, - for stdin")->required();

  auto* classify = app.add_subcommand("classify", "Stratum of one point");
  classify->add_option("model", o.model_file)->required();
  classify->add_option("point", o.point_file, "JSON array of per-factor coordinates")->required();

  auto* series = app.add_subcommand("series", "Equivariant series, perfection check and quotient polynomial");
  series->add_option("model", o.model_file)->required();
  series->add_option("--trunc", o.trunc, "truncation degree")->capture_default_str();
  add_group(series, o.group);

  auto* perturb = app.add_subcommand("perturb", "Perturbed index set and refinement map");
  perturb->add_option("model", o.model_file)->required();
  perturb->add_option("--epsilon", o.epsilon, "comma-separated rationals, e.g. 1/97");

  auto* kirwan = app.add_subcommand("kirwan", "Kernel generators, Betti table and lemma checks");
  kirwan->add_option("model", o.model_file)->required();
  kirwan->add_option("--max-degree", o.max_degree)->capture_default_str();
  kirwan->add_option("--target", o.target, "ss | s")->check(CLI::IsMember({"ss", "s", "semistable", "stable"}));
  add_group(kirwan, o.group);

  auto* pairing = app.add_subcommand("pairing", "Intersection pairing of two classes on the quotient");
  pairing->add_option("model", o.model_file)->required();
  pairing->add_option("eta", o.eta)->required();
  pairing->add_option("zeta", o.zeta)->required();
  add_group(pairing, o.group);

  auto* config = app.add_subcommand("config", "Refined stratum of a point configuration");
  config->add_option("config", o.config_file, "JSON array of homogeneous coordinates")->required();
  config->add_option("--family", o.family, "p1 | binary | p2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  if (const char* threads = std::getenv("MOMENT_STRATA_THREADS")) o.threads_env = threads;
  const auto report = run(app.get_subcommands().front()->get_name(), o);
  std::cout << report.text();
  return report.exit_code;
}
