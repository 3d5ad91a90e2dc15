#include "hlawka/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hlawka/inequalities.hpp"

namespace hlawka {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_free_block(const FreeBlock& f) {
  const double s = std::max({1.0, f.nsq_1, f.nsq_2});
  if (f.nsq_1 < -kDefaultTol * s || f.nsq_2 < -kDefaultTol * s ||
      f.inner * f.inner > f.nsq_1 * f.nsq_2 + kDefaultTol * s * s)
    throw std::invalid_argument("free 2x2 Gram block is not PSD");
}

// Case condition value plus the magnitudes of its terms, used for the
// relative residual. case_i is the two-term difference, the others carry
// the extra cross term.
struct Condition {
  double value;
  double term_scale;
};

Condition case_condition(CaseTag tag, double lambda, double mu, double s1,
                         double s2, double inner) {
  const double t1 = s1 * lambda * (lambda + 1.0);
  const double t2 = s2 * mu * (mu + 1.0);
  if (tag == CaseTag::case_i)
    return {t1 - t2, std::max({1.0, std::abs(t1), std::abs(t2)})};
  const double t3 = 2.0 * lambda * (mu + 1.0) * inner;
  return {t1 + t2 + t3,
          std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)})};
}

// Coefficients of the condition as a quadratic in tau along the affine
// family (lambda, mu) = (l0, m0) + tau * (d1, d2).
struct TauQuadratic {
  double a2, a1, a0;
};

TauQuadratic condition_along(CaseTag tag, double l0, double m0, double d1,
                             double d2, double s1, double s2, double inner) {
  TauQuadratic c{};
  if (tag == CaseTag::case_i) {
    c.a2 = s1 * d1 * d1 - s2 * d2 * d2;
    c.a1 = s1 * d1 * (2.0 * l0 + 1.0) - s2 * d2 * (2.0 * m0 + 1.0);
    c.a0 = case_condition(tag, l0, m0, s1, s2, inner).value;
  } else {
    c.a2 = s1 * d1 * d1 + s2 * d2 * d2 + 2.0 * d1 * d2 * inner;
    c.a1 = s1 * d1 * (2.0 * l0 + 1.0) + s2 * d2 * (2.0 * m0 + 1.0) +
           2.0 * inner * (d1 * (m0 + 1.0) + l0 * d2);
    c.a0 = case_condition(tag, l0, m0, s1, s2, inner).value;
  }
  return c;
}

// Root of the tau-quadratic closest to 0, or the vertex when there is no
// real root (best-achievable condition value along the family).
double solve_tau(const TauQuadratic& c) {
  const double mag = std::max({std::abs(c.a2), std::abs(c.a1), std::abs(c.a0)});
  if (mag == 0.0) return 0.0;
  if (std::abs(c.a2) <= 1e-14 * mag) {
    if (std::abs(c.a1) <= 1e-14 * mag) return 0.0;  // constant
    return -c.a0 / c.a1;
  }
  const double disc = c.a1 * c.a1 - 4.0 * c.a2 * c.a0;
  if (disc < 0.0) return -c.a1 / (2.0 * c.a2);  // vertex
  const double sq = std::sqrt(disc);
  // Stable split: one root via the large-magnitude numerator, the other
  // via Vieta.
  const double qn = -0.5 * (c.a1 + (c.a1 >= 0.0 ? sq : -sq));
  double r1, r2;
  if (qn != 0.0) {
    r1 = qn / c.a2;
    r2 = c.a0 / qn;
  } else {
    r1 = 0.0;
    r2 = -c.a1 / c.a2;
  }
  return std::abs(r1) <= std::abs(r2) ? r1 : r2;
}

}  // namespace

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::case_i: return "case_i";
    case CaseTag::case_ii: return "case_ii";
    case CaseTag::case_iii: return "case_iii";
  }
  return "?";
}

GramParams substitute_dependence(const DependenceCase& c, const FreeBlock& f) {
  check_free_block(f);
  const double l = c.lambda, m = c.mu;
  GramParams g;
  switch (c.tag) {
    case CaseTag::case_i:
      g.nsq_x = f.nsq_1;
      g.nsq_y = f.nsq_2;
      g.p = f.inner;
      g.nsq_z = l * l * g.nsq_x + m * m * g.nsq_y + 2.0 * l * m * g.p;
      g.q = l * g.nsq_x + m * g.p;
      g.r = l * g.p + m * g.nsq_y;
      break;
    case CaseTag::case_ii:
      g.nsq_y = f.nsq_1;
      g.nsq_z = f.nsq_2;
      g.r = f.inner;
      g.nsq_x = l * l * g.nsq_y + m * m * g.nsq_z + 2.0 * l * m * g.r;
      g.p = l * g.nsq_y + m * g.r;
      g.q = l * g.r + m * g.nsq_z;
      break;
    case CaseTag::case_iii:
      g.nsq_x = f.nsq_1;
      g.nsq_z = f.nsq_2;
      g.q = f.inner;
      g.nsq_y = l * l * g.nsq_x + m * m * g.nsq_z + 2.0 * l * m * g.q;
      g.p = l * g.nsq_x + m * g.q;
      g.r = l * g.q + m * g.nsq_z;
      break;
  }
  return g;
}

double factored_xi(const DependenceCase& c, const FreeBlock& f) {
  check_free_block(f);
  const double minor = f.nsq_1 * f.nsq_2 - f.inner * f.inner;
  const double l = c.lambda, m = c.mu;
  double square = 0.0;
  if (c.tag == CaseTag::case_i) {
    square = f.nsq_1 * l * (l + 1.0) - f.nsq_2 * m * (m + 1.0);
  } else {
    square = f.nsq_1 * l * (l + 1.0) + f.nsq_2 * m * (m + 1.0) +
             2.0 * l * (m + 1.0) * f.inner;
  }
  return minor * square * square;
}

double identity_residual(const DependenceCase& c, const FreeBlock& f) {
  const GramParams g = substitute_dependence(c, f);
  const double direct = xi_quartic(g);
  const double factored = factored_xi(c, f);
  const double s = g.scale();
  return std::abs(direct - factored) / std::max(1.0, s * s * s * s);
}

PInterval p_interval(double a2, double b2, double c2, double q, double r,
                     double tol) {
  const double scale = std::max({1.0, a2, b2, c2});
  if (a2 < -tol * scale || b2 < -tol * scale || c2 < -tol * scale)
    throw std::invalid_argument("p_interval: negative squared norm");
  a2 = std::max(a2, 0.0);
  b2 = std::max(b2, 0.0);
  c2 = std::max(c2, 0.0);
  if (std::abs(q) > std::sqrt(a2 * c2) + tol * scale ||
      std::abs(r) > std::sqrt(b2 * c2) + tol * scale)
    throw std::invalid_argument(
        "p_interval: q or r exceeds its Cauchy-Schwarz bound");

  const double ab = std::sqrt(a2 * b2);
  if (c2 <= tol * scale) {
    // z = 0 at tolerance forces q = r = 0; every |p| <= ab is admissible.
    return {IntervalKind::full_segment, -ab, ab};
  }

  // det G(p) = -c2 p^2 + 2qr p + (a2 b2 c2 - a2 r^2 - b2 q^2); the
  // discriminant factors as the product of two 2x2 minors, which avoids
  // the cancelation of the textbook b^2 - 4ac form.
  const double disc = (a2 * c2 - q * q) * (b2 * c2 - r * r);
  const double vertex = q * r / c2;
  const double band = tol * scale * scale;
  if (disc < -band * band) return {IntervalKind::empty, 0.0, 0.0};

  const double half = std::sqrt(std::max(disc, 0.0)) / c2;
  if (std::sqrt(std::max(disc, 0.0)) <= band) {
    const double at = std::clamp(vertex, -ab, ab);
    return {IntervalKind::point, at, at};
  }
  // det(+-ab) = -(ar -+ bq)^2 <= 0, so the root interval already sits
  // inside [-ab, ab]; the clamp only absorbs rounding.
  double lo = std::max(vertex - half, -ab);
  double hi = std::min(vertex + half, ab);
  if (lo > hi) lo = hi = std::clamp(vertex, -ab, ab);
  return {IntervalKind::interval, lo, hi};
}

bool endpoint_dominance_check(double a2, double b2, double c2, double q,
                              double r, int samples, double tol) {
  const PInterval pi = p_interval(a2, b2, c2, q, r, tol);
  if (pi.kind == IntervalKind::empty)
    throw std::domain_error("endpoint_dominance_check: empty p-interval");
  if (pi.kind == IntervalKind::point) return true;

  auto xi_at = [&](double p) {
    return xi_quartic(GramParams{a2, b2, c2, p, q, r});
  };
  const double scale = std::max({1.0, a2, b2, c2});
  const double floor_val = std::min(xi_at(pi.lo), xi_at(pi.hi)) -
                           tol * scale * scale * scale * scale;
  for (int k = 1; k <= samples; ++k) {
    const double p =
        pi.lo + (pi.hi - pi.lo) * static_cast<double>(k) / (samples + 1);
    if (xi_at(p) < floor_val) return false;
  }
  return true;
}

std::vector<DependenceWitness> classify_equality(const VectorTriple& t,
                                                 double tol) {
  t.validate();
  const GramParams g = gram_from_vectors(t);
  const double norm_scale =
      std::sqrt(std::max({g.nsq_x, g.nsq_y, g.nsq_z, 0.0}));

  std::vector<DependenceWitness> out;

  // Dependence plus a case condition only forces xi = L^2 - R^2 to vanish;
  // equality of the strong inequality additionally needs R >= 0 (with
  // R < 0 the triple sits in the trivial regime and the inequality is
  // strict, e.g. x = u, y = -u, z = u satisfies case_i at (0, -1) with
  // slack 2). The sign of R is a property of the triple, checked once.
  const double r_bold =
      g.nsq_x * g.r + g.nsq_y * g.q - g.nsq_z * g.p + 2.0 * g.q * g.r;
  const double gram_scale = g.scale();
  if (r_bold < -tol * gram_scale * gram_scale) return out;

  if (norm_scale == 0.0) {
    // All-zero triple: every relation holds with lambda = mu = 0.
    for (CaseTag tag : {CaseTag::case_i, CaseTag::case_ii, CaseTag::case_iii})
      out.push_back({{tag, 0.0, 0.0}, 0.0, 0.0});
    return out;
  }

  struct CaseSetup {
    CaseTag tag;
    const std::vector<double>*lhs, *u1, *u2;
    double s1, s2, inner;
  };
  const CaseSetup cases[3] = {
      {CaseTag::case_i, &t.z, &t.x, &t.y, g.nsq_x, g.nsq_y, g.p},
      {CaseTag::case_ii, &t.x, &t.y, &t.z, g.nsq_y, g.nsq_z, g.r},
      {CaseTag::case_iii, &t.y, &t.x, &t.z, g.nsq_x, g.nsq_z, g.q},
  };

  const double zero_nsq = (tol * norm_scale) * (tol * norm_scale);

  for (const CaseSetup& cs : cases) {
    const double n11 = cs.s1, n22 = cs.s2, n12 = cs.inner;
    const double t1 = dot(*cs.lhs, *cs.u1);
    const double t2 = dot(*cs.lhs, *cs.u2);

    // Candidate coefficient pairs. A well-conditioned pair has a unique
    // solution (Cramer). A rank-deficient pair leaves an affine family;
    // minimum-norm least squares picks a base point and the case condition
    // is solved in closed form along the null direction. The two routes
    // degrade in opposite regimes, so both candidates are tried and the
    // residual checks arbitrate.
    std::array<std::pair<double, double>, 2> candidates;
    std::size_t n_candidates = 0;

    if (n11 <= zero_nsq && n22 <= zero_nsq) {
      // Spanning pair vanishes: the relation can only hold for a vanishing
      // left side, with lambda = mu = 0.
      candidates[n_candidates++] = {0.0, 0.0};
    } else {
      const double det_n = n11 * n22 - n12 * n12;
      if (det_n > 0.0) {
        const double lam = (t1 * n22 - t2 * n12) / det_n;
        const double mu_u = (n11 * t2 - n12 * t1) / det_n;
        if (std::isfinite(lam) && std::isfinite(mu_u))
          candidates[n_candidates++] = {lam, mu_u};
      }
      {
        const double tr = n11 + n22;
        const double root =
            std::sqrt((n11 - n22) * (n11 - n22) + 4.0 * n12 * n12);
        const double lmax = 0.5 * (tr + root);
        double v0 = n12, v1 = lmax - n11;
        if (std::abs(lmax - n22) > std::abs(v1)) {
          v0 = lmax - n22;
          v1 = n12;
        }
        double vn = std::sqrt(v0 * v0 + v1 * v1);
        if (vn == 0.0) {
          v0 = 1.0;
          v1 = 0.0;
          vn = 1.0;
        }
        v0 /= vn;
        v1 /= vn;
        const double proj = (t1 * v0 + t2 * v1) / lmax;
        const double l0 = proj * v0, m0 = proj * v1;
        const double d1 = -v1, d2 = v0;  // null direction of the pair Gram
        const double tau = solve_tau(
            condition_along(cs.tag, l0, m0, d1, d2, cs.s1, cs.s2, cs.inner));
        candidates[n_candidates++] = {l0 + tau * d1, m0 + tau * d2};
      }
    }

    bool matched = false;
    DependenceWitness best{};
    for (std::size_t c = 0; c < n_candidates && !matched; ++c) {
      const auto [lambda, mu] = candidates[c];
      // Residual of the relation lhs = lambda u1 + mu u2, from coordinates.
      double resid_sq = 0.0;
      for (std::size_t i = 0; i < t.dim(); ++i) {
        const double e =
            (*cs.lhs)[i] - lambda * (*cs.u1)[i] - mu * (*cs.u2)[i];
        resid_sq += e * e;
      }
      const double dep_res = std::sqrt(resid_sq) / norm_scale;
      const Condition cond =
          case_condition(cs.tag, lambda, mu, cs.s1, cs.s2, cs.inner);
      const double cond_res = std::abs(cond.value) / cond.term_scale;
      if (dep_res <= tol && cond_res <= tol) {
        matched = true;
        best = {{cs.tag, lambda, mu}, dep_res, cond_res};
      }
    }
    if (matched) out.push_back(best);
  }
  return out;
}

}  // namespace hlawka
