#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hlawka/exec.hpp"
#include "hlawka/gram.hpp"
#include "hlawka/inequalities.hpp"

namespace hlawka {

struct SuiteConfig {
  std::uint64_t trials = 10000;
  std::size_t dimension = 3;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  // Strategies are cycled per sample index; empty means one
  // ambient-vectors strategy at `dimension`.
  std::vector<SampleConfig> strategies;
  // Empty means all ten inequalities.
  std::vector<InequalityId> inequalities;
  // Test hook: replaces every sample with a fixed non-PSD Gram matrix and
  // evaluates only the polynomial (PSD-free) inequalities, forcing a
  // failing verdict with the offending input echoed.
  bool inject_nonpsd = false;
};

struct WorstInput {
  bool is_gram = false;  // injected inputs are Gram-only
  VectorTriple triple;
  GramParams gram;
  std::uint64_t index = 0;
  std::string strategy;
};

struct InequalityStats {
  std::uint64_t count = 0;
  double min_slack = std::numeric_limits<double>::infinity();  // scaled
  std::uint64_t equality_count = 0;
  WorstInput worst_input;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  double elapsed_seconds = 0.0;
  bool pass = false;
  std::map<InequalityId, InequalityStats> per_inequality;
};

// Evaluates the requested inequalities on every sample and aggregates
// min scaled slack / equality counts per inequality. The reduction is a
// commutative min with index tie-breaks, so serial and parallel runs
// produce identical reports (elapsed time aside).
SuiteReport run_suite(const SuiteConfig& cfg, ExecMode mode = ExecMode::parallel);

struct IdentityReport {
  struct Entry {
    std::string name;
    double max_residual = 0.0;
  };
  std::vector<Entry> entries;
  bool pass = false;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
};

// Randomized check of the three factored forms of xi on the dependence
// strata plus the Q/R substitution identity. Pass iff every maximum
// relative residual is <= 1e-10. `tamper` flips a sign in the comparison
// (test hook for the failure path).
IdentityReport run_identities(std::uint64_t count, std::uint64_t seed,
                              bool tamper = false,
                              ExecMode mode = ExecMode::parallel);

}  // namespace hlawka
