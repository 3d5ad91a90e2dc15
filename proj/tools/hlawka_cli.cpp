// hlawka: verification and search driver for the inner-product-space
// inequality toolkit. Subcommands: verify | identities | search | classify
// | witness. All reports are JSON on stdout (or --out).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hlawka/json_io.hpp"
#include "hlawka/search.hpp"
#include "hlawka/suite.hpp"

namespace {

using hlawka::json;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output path: " + out_path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("failed writing output: " + out_path);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

hlawka::VectorTriple builtin_witness(const std::string& name) {
  if (name == "ones")
    return {{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  if (name == "planar120") {
    const double h = std::sqrt(3.0) / 2.0;
    return {{1.0, 0.0, 0.0}, {0.5, h, 0.0}, {0.5, -h, 0.0}};
  }
  throw std::runtime_error("unknown witness '" + name +
                           "' (valid names: ones, planar120)");
}

struct VerifyArgs {
  std::uint64_t trials = 10000;
  std::size_t dim = 3;
  std::uint64_t seed = 42;
  double tol = hlawka::kDefaultTol;
  std::vector<std::string> strategies;
  std::vector<std::string> inequalities;
  std::string scale_law = "standard-normal";
  std::string out_path;
  std::string config_path;
  bool serial = false;
  bool inject_nonpsd = false;
};

// Precedence: command-line flags > config-file values > built-in defaults.
void overlay_config(const json& cfg, const CLI::App* cmd, VerifyArgs& a) {
  auto absent = [&](const std::string& flag) {
    return cmd->get_option(flag)->count() == 0;
  };
  if (cfg.contains("trials") && absent("--trials"))
    a.trials = cfg["trials"].get<std::uint64_t>();
  if (cfg.contains("dim") && absent("--dim"))
    a.dim = cfg["dim"].get<std::size_t>();
  if (cfg.contains("seed") && absent("--seed"))
    a.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("tol") && absent("--tol")) a.tol = cfg["tol"].get<double>();
  if (cfg.contains("strategy") && absent("--strategy"))
    a.strategies = cfg["strategy"].get<std::vector<std::string>>();
  if (cfg.contains("inequality") && absent("--inequality"))
    a.inequalities = cfg["inequality"].get<std::vector<std::string>>();
  if (cfg.contains("scale_law") && absent("--scale-law"))
    a.scale_law = cfg["scale_law"].get<std::string>();
}

int run_verify(const VerifyArgs& a) {
  hlawka::SuiteConfig cfg;
  cfg.trials = a.trials;
  cfg.dimension = a.dim;
  cfg.seed = a.seed;
  cfg.tol = a.tol;
  cfg.inject_nonpsd = a.inject_nonpsd;
  for (const std::string& s : a.strategies) {
    hlawka::SampleConfig sc;
    sc.strategy = hlawka::strategy_from_string(s);
    sc.dim = a.dim;
    sc.scale_law = hlawka::scale_law_from_string(a.scale_law);
    cfg.strategies.push_back(sc);
  }
  for (const std::string& s : a.inequalities)
    cfg.inequalities.push_back(hlawka::inequality_from_string(s));

  const hlawka::SuiteReport rep = hlawka::run_suite(
      cfg, a.serial ? hlawka::ExecMode::serial : hlawka::ExecMode::parallel);
  emit(json(rep), a.out_path);
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification and search for Hornich-Hlawka and Gram-matrix "
               "inequalities in inner product spaces"};
  app.require_subcommand(1);

  // verify ----------------------------------------------------------------
  VerifyArgs va;
  auto* verify = app.add_subcommand(
      "verify", "Sample random inputs and check every inequality's slack");
  verify->add_option("--trials", va.trials, "Number of samples");
  verify->add_option("--dim", va.dim, "Ambient dimension");
  verify->add_option("--seed", va.seed, "RNG seed");
  verify->add_option("--tol", va.tol, "Relative tolerance");
  verify->add_option("--strategy", va.strategies,
                     "Sampling strategy (repeatable): ambient-vectors, "
                     "factor-3x3, boundary-rank2, boundary-rank1");
  verify->add_option("--inequality", va.inequalities,
                     "Inequality id to check (repeatable; default all)");
  verify->add_option("--scale-law", va.scale_law,
                     "Coordinate law: standard-normal or heavy-tail");
  verify->add_option("--out", va.out_path, "Write the JSON report here");
  verify->add_option("--config", va.config_path,
                     "JSON config file (flags override it)");
  verify->add_flag("--serial", va.serial, "Use the serial reference kernel");
  verify
      ->add_flag("--inject-nonpsd", va.inject_nonpsd,
                 "Test hook: force a failing run on a non-PSD input")
      ->group("");  // hidden

  // identities ------------------------------------------------------------
  std::uint64_t id_count = 10000, id_seed = 7;
  std::string id_out;
  bool id_tamper = false, id_serial = false;
  auto* identities = app.add_subcommand(
      "identities",
      "Randomized check of the factored-xi and Q/R substitution identities");
  identities->add_option("--count", id_count, "Draws per identity");
  identities->add_option("--seed", id_seed, "RNG seed");
  identities->add_option("--out", id_out, "Write the JSON report here");
  identities->add_flag("--serial", id_serial,
                       "Use the serial reference kernel");
  identities
      ->add_flag("--tamper", id_tamper,
                 "Test hook: flip a sign so the identities fail")
      ->group("");  // hidden

  // search ----------------------------------------------------------------
  hlawka::SearchConfig sc;
  std::string s_objective = "xi_quartic", s_out;
  bool s_equality = false, s_serial = false;
  auto* search = app.add_subcommand(
      "search",
      "Minimize an inequality's nonnegative form over the PSD cone");
  search->add_option("--restarts", sc.restarts, "Random restarts");
  search->add_option("--max-iters", sc.max_iters, "Iteration cap per restart");
  search->add_option("--seed", sc.seed, "RNG seed");
  search->add_option("--step", sc.step_init, "Initial backtracking step");
  search->add_option("--objective", s_objective, "Inequality id to minimize");
  search->add_flag("--equality", s_equality,
                   "Hunt equality points instead of minimizing the value");
  search->add_option("--out", s_out, "Write the JSON report here");
  search->add_flag("--serial", s_serial, "Use the serial reference kernel");

  // classify --------------------------------------------------------------
  std::string cl_input;
  double cl_tol = hlawka::kDefaultTol;
  auto* classify = app.add_subcommand(
      "classify", "Report the equality cases matched by a vector triple");
  classify->add_option("input", cl_input, "JSON file with x, y, z arrays")
      ->required();
  classify->add_option("--tol", cl_tol, "Relative tolerance");

  // witness ---------------------------------------------------------------
  std::string w_name;
  auto* witness = app.add_subcommand(
      "witness", "Print a built-in sharpness witness and its slack reports");
  witness->add_option("name", w_name, "ones | planar120")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      if (!va.config_path.empty())
        overlay_config(load_json_file(va.config_path), verify, va);
      return run_verify(va);
    }

    if (*identities) {
      const hlawka::IdentityReport rep = hlawka::run_identities(
          id_count, id_seed, id_tamper,
          id_serial ? hlawka::ExecMode::serial : hlawka::ExecMode::parallel);
      emit(json(rep), id_out);
      return rep.pass ? 0 : 1;
    }

    if (*search) {
      sc.objective = hlawka::inequality_from_string(s_objective);
      const hlawka::ExecMode mode =
          s_serial ? hlawka::ExecMode::serial : hlawka::ExecMode::parallel;
      if (s_equality) {
        const auto points =
            hlawka::find_equality_points(sc.objective, sc, mode);
        emit(json{{"objective", s_objective},
                  {"seed", sc.seed},
                  {"restarts", sc.restarts},
                  {"points", points}},
             s_out);
      } else {
        const hlawka::SearchResult res = hlawka::minimize_xi(sc, mode);
        emit(json(res), s_out);
      }
      return 0;
    }

    if (*classify) {
      hlawka::VectorTriple t = load_json_file(cl_input).get<hlawka::VectorTriple>();
      const hlawka::SlackReport strong = hlawka::strong_hlawka_slack(t, cl_tol);
      const auto witnesses = hlawka::classify_equality(t, cl_tol);
      emit(json{{"strong_hlawka", strong}, {"witnesses", witnesses}}, "");
      return 0;
    }

    if (*witness) {
      const hlawka::VectorTriple t = builtin_witness(w_name);
      const hlawka::GramParams g = hlawka::gram_from_vectors(t);
      emit(json{{"name", w_name},
                {"triple", t},
                {"gram", g},
                {"reports",
                 {hlawka::classical_hlawka_slack(t),
                  hlawka::strong_hlawka_slack(t),
                  hlawka::corollary_slack(g)}}},
           "");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
