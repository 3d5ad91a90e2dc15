#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hlawka/boundary.hpp"
#include "hlawka/exec.hpp"
#include "hlawka/gram.hpp"
#include "hlawka/inequalities.hpp"

namespace hlawka {

// Unconstrained 3x3 factor; columns are the three vectors, G = B^T B.
// Covers the whole PSD cone including its boundary strata, so descent
// never needs a projection step.
struct FactorMatrix {
  std::array<double, 9> m{};  // row-major

  double& at(int row, int col) { return m[3 * row + col]; }
  double at(int row, int col) const { return m[3 * row + col]; }
};

GramParams gram_of_factor(const FactorMatrix& b);

struct SearchConfig {
  int restarts = 64;
  int max_iters = 2000;
  double step_init = 0.1;
  double grad_tol = 1e-10;
  std::uint64_t seed = 1;
  InequalityId objective = InequalityId::xi_quartic;
  WeightTriple weights{1.0, 1.0, 1.0};
};

struct SearchResult {
  double min_value = 0.0;
  FactorMatrix argmin_factor;
  GramParams argmin_gram;
  double det_at_argmin = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Analytic gradient of xi_quartic with respect to
// (nsq_x, nsq_y, nsq_z, p, q, r).
std::array<double, 6> xi_gradient(const GramParams& g);

// The nonnegative-on-the-cone quantity the chosen inequality asserts:
// xi for xi_quartic, the quadratic form for gram_quadratic_q, the slack
// (lhs - rhs) for the rest. Norm-valued terms clamp tiny negative
// radicands to zero.
double objective_value(InequalityId id, const GramParams& g,
                       const WeightTriple& w = {1.0, 1.0, 1.0});

// Gradient descent with Armijo backtracking on B -> objective(Gram(B^T B))
// from cfg.restarts random starts; deterministic given cfg.seed. Restarts
// are independent and may run in parallel; the reported argmin is the
// lowest value with ties broken by restart index, so the result does not
// depend on thread count.
SearchResult minimize_xi(const SearchConfig& cfg,
                         ExecMode mode = ExecMode::parallel);

// Single descent from an explicit start; optionally records every iterate's
// Gram parameters (used to check that iterates never leave the PSD cone).
SearchResult minimize_xi_from(const FactorMatrix& start,
                              const SearchConfig& cfg,
                              std::vector<GramParams>* trace = nullptr);

struct EqualityPoint {
  GramParams gram;
  VectorTriple triple;
  std::vector<DependenceWitness> witnesses;
  double slack = 0.0;
};

// Minimizes the squared scaled slack of the chosen inequality and returns
// every restart that lands on an equality point, together with the
// dependence witnesses of its realized triple. For the sign-split
// corollaries a margin penalty keeps the product pqr away from the
// degenerate zero stratum, so the recovered points are the nondegenerate
// sharpness families.
std::vector<EqualityPoint> find_equality_points(
    InequalityId id, const SearchConfig& cfg,
    ExecMode mode = ExecMode::parallel);

// Brute-force companion: coarse grid over the Gram parameters restricted to
// the PSD region. Anchors the descent results independently.
struct GridSpec {
  int points_per_axis = 13;
  double nsq_max = 2.0;
  double offdiag_max = 2.0;
};

struct GridResult {
  double min_scaled_xi = 0.0;  // min of xi / max(1, nsq)^4 over the grid
  GramParams argmin;
  std::uint64_t admissible_count = 0;
};

GridResult grid_min_xi(const GridSpec& spec,
                       ExecMode mode = ExecMode::parallel);

}  // namespace hlawka
