#include "hlawka/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hlawka/rng.hpp"

namespace hlawka {

GramParams gram_of_factor(const FactorMatrix& b) {
  GramParams g;
  // Columns of B are the vectors.
  auto col_dot = [&](int c1, int c2) {
    return b.at(0, c1) * b.at(0, c2) + b.at(1, c1) * b.at(1, c2) +
           b.at(2, c1) * b.at(2, c2);
  };
  g.nsq_x = col_dot(0, 0);
  g.nsq_y = col_dot(1, 1);
  g.nsq_z = col_dot(2, 2);
  g.p = col_dot(0, 1);
  g.q = col_dot(0, 2);
  g.r = col_dot(1, 2);
  return g;
}

std::array<double, 6> xi_gradient(const GramParams& g) {
  const double A = g.nsq_x, B = g.nsq_y, C = g.nsq_z;
  const double p = g.p, q = g.q, r = g.r;
  const double S = A + B + C + 2.0 * (p + q + r);
  std::array<double, 6> grad;
  grad[0] = B * C * S + A * B * C -
            (2.0 * A * r * r + 2.0 * B * q * r - 2.0 * C * p * r +
             4.0 * q * r * r);
  grad[1] = A * C * S + A * B * C -
            (2.0 * B * q * q + 2.0 * A * q * r - 2.0 * C * p * q +
             4.0 * q * q * r);
  grad[2] = A * B * S + A * B * C -
            (2.0 * C * p * p - 2.0 * A * p * r - 2.0 * B * p * q -
             4.0 * p * q * r);
  grad[3] = 2.0 * A * B * C -
            (2.0 * C * C * p - 2.0 * A * C * r - 2.0 * B * C * q -
             4.0 * C * q * r);
  grad[4] = 2.0 * A * B * C -
            (2.0 * B * B * q + 8.0 * q * r * r + 2.0 * A * B * r -
             2.0 * B * C * p + 4.0 * A * r * r + 8.0 * B * q * r -
             4.0 * C * p * r);
  grad[5] = 2.0 * A * B * C -
            (2.0 * A * A * r + 8.0 * q * q * r + 2.0 * A * B * q -
             2.0 * A * C * p + 8.0 * A * q * r + 4.0 * B * q * q -
             4.0 * C * p * q);
  return grad;
}

namespace {

double clamped_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }

}  // namespace

double objective_value(InequalityId id, const GramParams& g,
                       const WeightTriple& w) {
  const double A = g.nsq_x, B = g.nsq_y, C = g.nsq_z;
  const double p = g.p, q = g.q, r = g.r;
  switch (id) {
    case InequalityId::xi_quartic:
      return xi_quartic(g);
    case InequalityId::gram_quadratic_q:
      return gram_quadratic_q(g, w);
    case InequalityId::substituted_r:
      return substituted_r(g, w);
    case InequalityId::strong_hlawka: {
      const double ns = clamped_sqrt(A + B + C + 2.0 * (p + q + r));
      return clamped_sqrt(A) * clamped_sqrt(B) + clamped_sqrt(C) * ns -
             clamped_sqrt(A + C + 2.0 * q) * clamped_sqrt(B + C + 2.0 * r);
    }
    case InequalityId::classical_hlawka: {
      const double ns = clamped_sqrt(A + B + C + 2.0 * (p + q + r));
      return clamped_sqrt(A) + clamped_sqrt(B) + clamped_sqrt(C) + ns -
             clamped_sqrt(A + B + 2.0 * p) - clamped_sqrt(A + C + 2.0 * q) -
             clamped_sqrt(B + C + 2.0 * r);
    }
    case InequalityId::reduced_scalar: {
      const double ns = clamped_sqrt(A + B + C + 2.0 * (p + q + r));
      const double L = clamped_sqrt(A) * clamped_sqrt(B) * clamped_sqrt(C) * ns;
      const double R = A * r + B * q - C * p + 2.0 * q * r;
      return L - R;
    }
    case InequalityId::corollary_pos:
      return (A * r * r + B * q * q + C * p * p) - 3.0 * p * q * r;
    case InequalityId::corollary_neg:
      return (A * r * r + B * q * q + C * p * p) + 6.0 * p * q * r;
    case InequalityId::gram_det_identity:
      return g.det();
    case InequalityId::cauchy_schwarz:
      return A * B * B - p * p * B;
  }
  return 0.0;
}

namespace {

struct DescentOut {
  double value = std::numeric_limits<double>::infinity();
  FactorMatrix factor;
  int iterations = 0;
  bool converged = false;
};

using ValueFn = std::function<double(const FactorMatrix&)>;
using GradFn = std::function<std::array<double, 9>(const FactorMatrix&)>;

// Armijo backtracking descent: factor 0.5, sufficient decrease 1e-4,
// relative gradient stop. When the infimum is known to be zero (equality
// hunting on a squared slack) the trial step starts from the Polyak length
// f/|g|^2, which keeps the linear rate from collapsing near the flat
// minimum manifold.
DescentOut descend(FactorMatrix b, const ValueFn& f, const GradFn& grad,
                   int max_iters, double step_init, double grad_tol,
                   bool polyak_trial = false,
                   std::vector<GramParams>* trace = nullptr) {
  DescentOut out;
  double fv = f(b);
  if (trace) trace->push_back(gram_of_factor(b));
  int it = 0;
  for (; it < max_iters; ++it) {
    const std::array<double, 9> gv = grad(b);
    double gn2 = 0.0;
    for (double c : gv) gn2 += c * c;
    const double gn = std::sqrt(gn2);
    if (gn <= grad_tol * std::max(1.0, std::abs(fv))) {
      out.converged = true;
      break;
    }
    double step = step_init;
    if (polyak_trial && fv > 0.0 && gn2 > 0.0)
      step = std::min(1e3, std::max(step_init, fv / gn2));
    FactorMatrix cand;
    double fc = fv;
    bool moved = false;
    while (step > 1e-18) {
      for (int k = 0; k < 9; ++k) cand.m[k] = b.m[k] - step * gv[k];
      fc = f(cand);
      if (fc <= fv - 1e-4 * step * gn2) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;  // no decrease possible at machine step
    b = cand;
    fv = fc;
    if (trace) trace->push_back(gram_of_factor(b));
  }
  out.value = fv;
  out.factor = b;
  out.iterations = it;
  return out;
}

FactorMatrix random_factor(std::uint64_t seed, std::uint64_t restart) {
  Rng rng(seed, restart);
  FactorMatrix b;
  for (double& c : b.m) c = rng.normal();
  return b;
}

std::array<double, 9> xi_factor_gradient(const FactorMatrix& b) {
  const GramParams g = gram_of_factor(b);
  const std::array<double, 6> gg = xi_gradient(g);
  // Chain rule: columns are the vectors, G = B^T B.
  std::array<double, 9> out{};
  for (int rowi = 0; rowi < 3; ++rowi) {
    const double b0 = b.at(rowi, 0), b1 = b.at(rowi, 1), b2 = b.at(rowi, 2);
    out[3 * rowi + 0] = 2.0 * gg[0] * b0 + gg[3] * b1 + gg[4] * b2;
    out[3 * rowi + 1] = 2.0 * gg[1] * b1 + gg[3] * b0 + gg[5] * b2;
    out[3 * rowi + 2] = 2.0 * gg[2] * b2 + gg[4] * b0 + gg[5] * b1;
  }
  return out;
}

GradFn central_difference_gradient(const ValueFn& f) {
  return [f](const FactorMatrix& b) {
    std::array<double, 9> g{};
    for (int k = 0; k < 9; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(b.m[k]));
      FactorMatrix hi = b, lo = b;
      hi.m[k] += h;
      lo.m[k] -= h;
      g[k] = (f(hi) - f(lo)) / (2.0 * h);
    }
    return g;
  };
}

SearchResult to_result(const DescentOut& out) {
  SearchResult res;
  res.min_value = out.value;
  res.argmin_factor = out.factor;
  res.argmin_gram = gram_of_factor(out.factor);
  res.det_at_argmin = res.argmin_gram.det();
  res.iterations = out.iterations;
  res.converged = out.converged;
  return res;
}

SearchResult pick_best(const std::vector<DescentOut>& outs) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < outs.size(); ++k)
    if (outs[k].value < outs[best].value) best = k;  // ties keep lowest index
  return to_result(outs[best]);
}

// Smooth scale (>= 1) used inside equality objectives, so the descent
// surface has no kinks at nsq = 1 crossings. Reported slacks still use the
// max-based convention.
double smooth_scale(const GramParams& g) {
  return 1.0 + (g.nsq_x + g.nsq_y + g.nsq_z) / 3.0;
}

ValueFn make_value_fn(InequalityId id, const WeightTriple& w,
                      bool equality_mode) {
  if (!equality_mode)
    return [id, w](const FactorMatrix& b) {
      return objective_value(id, gram_of_factor(b), w);
    };
  const int deg = homogeneity_degree(id);
  return [id, w, deg](const FactorMatrix& b) {
    const GramParams g = gram_of_factor(b);
    const double sc = std::pow(smooth_scale(g), deg);
    const double scaled = objective_value(id, g, w) / sc;
    double val = scaled * scaled;
    if (id == InequalityId::corollary_pos ||
        id == InequalityId::corollary_neg) {
      // Keep the product pqr away from zero so the search lands on the
      // nondegenerate sharpness stratum of the right sign.
      const double d3 = smooth_scale(g);
      const double dd = g.p * g.q * g.r / (d3 * d3 * d3);
      const double pen = id == InequalityId::corollary_pos
                             ? std::max(0.0, 0.05 - dd)
                             : std::max(0.0, dd + 0.05);
      val += pen * pen;
    }
    return val;
  };
}

DescentOut run_restart(const SearchConfig& cfg, bool equality_mode,
                       std::uint64_t restart) {
  const ValueFn f = make_value_fn(cfg.objective, cfg.weights, equality_mode);
  const bool analytic =
      !equality_mode && cfg.objective == InequalityId::xi_quartic;
  const GradFn grad =
      analytic ? GradFn([](const FactorMatrix& b) {
        return xi_factor_gradient(b);
      })
               : central_difference_gradient(f);
  return descend(random_factor(cfg.seed, restart), f, grad, cfg.max_iters,
                 cfg.step_init, cfg.grad_tol, equality_mode);
}

void validate(const SearchConfig& cfg) {
  if (cfg.restarts < 1 || cfg.max_iters < 1 || !(cfg.step_init > 0.0) ||
      !(cfg.grad_tol > 0.0))
    throw std::invalid_argument(
        "SearchConfig: restarts, max_iters, step_init and grad_tol must be "
        "positive");
}

std::vector<DescentOut> run_restarts(const SearchConfig& cfg,
                                     bool equality_mode, ExecMode mode) {
  validate(cfg);
  std::vector<DescentOut> outs(cfg.restarts);
  if (mode == ExecMode::parallel && openmp_enabled()) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < cfg.restarts; ++k)
      outs[k] = run_restart(cfg, equality_mode, k);
#endif
  } else {
    for (int k = 0; k < cfg.restarts; ++k)
      outs[k] = run_restart(cfg, equality_mode, k);
  }
  return outs;
}

}  // namespace

SearchResult minimize_xi(const SearchConfig& cfg, ExecMode mode) {
  return pick_best(run_restarts(cfg, /*equality_mode=*/false, mode));
}

SearchResult minimize_xi_from(const FactorMatrix& start,
                              const SearchConfig& cfg,
                              std::vector<GramParams>* trace) {
  validate(cfg);
  const ValueFn f = make_value_fn(cfg.objective, cfg.weights, false);
  const bool analytic = cfg.objective == InequalityId::xi_quartic;
  const GradFn grad =
      analytic ? GradFn([](const FactorMatrix& b) {
        return xi_factor_gradient(b);
      })
               : central_difference_gradient(f);
  return to_result(descend(start, f, grad, cfg.max_iters, cfg.step_init,
                           cfg.grad_tol, /*polyak_trial=*/false, trace));
}

namespace {

// Gauss-Newton polish on the scalar residual slack/scale^deg: a Newton
// step for a single smooth residual converges quadratically to its zero
// set, which squeezes the descent output from ~1e-6 down to rounding
// level. Corollary branches stop polishing if the sign margin of pqr
// would be lost.
FactorMatrix polish_equality(InequalityId id, const WeightTriple& w,
                             FactorMatrix b) {
  const int deg = homogeneity_degree(id);
  const auto residual = [&](const FactorMatrix& bb) {
    const GramParams g = gram_of_factor(bb);
    return objective_value(id, g, w) / std::pow(smooth_scale(g), deg);
  };
  const auto margin_ok = [&](const FactorMatrix& bb) {
    if (id != InequalityId::corollary_pos &&
        id != InequalityId::corollary_neg)
      return true;
    const GramParams g = gram_of_factor(bb);
    const double d3 = smooth_scale(g);
    const double dd = g.p * g.q * g.r / (d3 * d3 * d3);
    return id == InequalityId::corollary_pos ? dd >= 0.04 : dd <= -0.04;
  };

  double s = residual(b);
  for (int step = 0; step < 40; ++step) {
    if (std::abs(s) <= 1e-13) break;
    std::array<double, 9> gr{};
    double gn2 = 0.0;
    for (int k = 0; k < 9; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(b.m[k]));
      FactorMatrix hi = b, lo = b;
      hi.m[k] += h;
      lo.m[k] -= h;
      gr[k] = (residual(hi) - residual(lo)) / (2.0 * h);
      gn2 += gr[k] * gr[k];
    }
    if (gn2 <= 1e-30) break;
    FactorMatrix cand = b;
    for (int k = 0; k < 9; ++k) cand.m[k] -= (s / gn2) * gr[k];
    const double sc = residual(cand);
    if (!(std::abs(sc) < std::abs(s)) || !margin_ok(cand)) break;
    b = cand;
    s = sc;
  }
  return b;
}

}  // namespace

std::vector<EqualityPoint> find_equality_points(InequalityId id,
                                                const SearchConfig& cfg,
                                                ExecMode mode) {
  SearchConfig eq_cfg = cfg;
  eq_cfg.objective = id;
  const std::vector<DescentOut> outs =
      run_restarts(eq_cfg, /*equality_mode=*/true, mode);

  std::vector<EqualityPoint> points;
  for (const DescentOut& o : outs) {
    const FactorMatrix polished = polish_equality(id, cfg.weights, o.factor);
    const GramParams g = gram_of_factor(polished);
    const double slack = objective_value(id, g, cfg.weights);
    const double scale_pow = std::pow(g.scale(), homogeneity_degree(id));
    if (std::abs(slack) > 1e-8 * scale_pow) continue;
    EqualityPoint pt;
    pt.gram = g;
    pt.slack = slack;
    pt.triple = realize_vectors(g, 1e-6);
    pt.witnesses = classify_equality(pt.triple, 1e-6);
    points.push_back(std::move(pt));
  }
  return points;
}

namespace {

struct GridAccum {
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_index = 0;
  GramParams argmin;
  std::uint64_t count = 0;

  void consider(double v, std::uint64_t idx, const GramParams& g) {
    ++count;
    if (v < best || (v == best && idx < best_index)) {
      best = v;
      best_index = idx;
      argmin = g;
    }
  }

  void merge(const GridAccum& o) {
    count += o.count;
    if (o.best < best || (o.best == best && o.best_index < best_index)) {
      best = o.best;
      best_index = o.best_index;
      argmin = o.argmin;
    }
  }
};

void grid_cell(const GridSpec& spec, const std::array<double, 3>& nsq,
               std::uint64_t base_index, GridAccum& acc) {
  const int n = spec.points_per_axis;
  const double off_step = 2.0 * spec.offdiag_max / (n - 1);
  const double scale = std::max({1.0, nsq[0], nsq[1], nsq[2]});
  const double minor_tol = 1e-12 * scale * scale;
  const double det_tol = 1e-12 * scale * scale * scale;
  std::uint64_t idx = base_index;
  for (int ip = 0; ip < n; ++ip) {
    const double p = -spec.offdiag_max + ip * off_step;
    if (nsq[0] * nsq[1] - p * p < -minor_tol) {
      idx += static_cast<std::uint64_t>(n) * n;
      continue;
    }
    for (int iq = 0; iq < n; ++iq) {
      const double q = -spec.offdiag_max + iq * off_step;
      if (nsq[0] * nsq[2] - q * q < -minor_tol) {
        idx += n;
        continue;
      }
      for (int ir = 0; ir < n; ++ir, ++idx) {
        const double r = -spec.offdiag_max + ir * off_step;
        const GramParams g{nsq[0], nsq[1], nsq[2], p, q, r};
        if (nsq[1] * nsq[2] - r * r < -minor_tol) continue;
        if (g.det() < -det_tol) continue;
        const double v = xi_quartic(g) / (scale * scale * scale * scale);
        acc.consider(v, idx, g);
      }
    }
  }
}

}  // namespace

GridResult grid_min_xi(const GridSpec& spec, ExecMode mode) {
  const int n = spec.points_per_axis;
  const double nsq_step = spec.nsq_max / (n - 1);
  const std::int64_t diag_cells = static_cast<std::int64_t>(n) * n * n;
  const std::uint64_t off_cells = static_cast<std::uint64_t>(n) * n * n;

  GridAccum total;
  if (mode == ExecMode::parallel && openmp_enabled()) {
#ifdef _OPENMP
#pragma omp parallel
    {
      GridAccum local;
#pragma omp for schedule(dynamic, 8) nowait
      for (std::int64_t cell = 0; cell < diag_cells; ++cell) {
        const int ia = static_cast<int>(cell / (n * n));
        const int ib = static_cast<int>((cell / n) % n);
        const int ic = static_cast<int>(cell % n);
        const std::array<double, 3> nsq = {ia * nsq_step, ib * nsq_step,
                                           ic * nsq_step};
        grid_cell(spec, nsq, static_cast<std::uint64_t>(cell) * off_cells,
                  local);
      }
#pragma omp critical
      total.merge(local);
    }
#endif
  } else {
    for (std::int64_t cell = 0; cell < diag_cells; ++cell) {
      const int ia = static_cast<int>(cell / (n * n));
      const int ib = static_cast<int>((cell / n) % n);
      const int ic = static_cast<int>(cell % n);
      const std::array<double, 3> nsq = {ia * nsq_step, ib * nsq_step,
                                         ic * nsq_step};
      grid_cell(spec, nsq, static_cast<std::uint64_t>(cell) * off_cells,
                total);
    }
  }

  GridResult res;
  res.min_scaled_xi = total.best;
  res.argmin = total.argmin;
  res.admissible_count = total.count;
  return res;
}

}  // namespace hlawka
