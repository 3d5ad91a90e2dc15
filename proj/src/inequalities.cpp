#include "hlawka/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hlawka {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> add(const std::vector<double>& a,
                        const std::vector<double>& b) {
  std::vector<double> s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

std::vector<double> add(const std::vector<double>& a,
                        const std::vector<double>& b,
                        const std::vector<double>& c) {
  std::vector<double> s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i] + c[i];
  return s;
}

double triple_scale(const VectorTriple& t) {
  return std::max({1.0, dot(t.x, t.x), dot(t.y, t.y), dot(t.z, t.z)});
}

SlackReport make_report(InequalityId id, double lhs, double rhs, double scale,
                        double tol) {
  SlackReport rep;
  rep.inequality_id = id;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.slack = lhs - rhs;
  rep.is_equality =
      std::abs(rep.slack) <= tol * std::pow(scale, homogeneity_degree(id));
  return rep;
}

}  // namespace

const char* to_string(InequalityId id) {
  switch (id) {
    case InequalityId::classical_hlawka: return "classical_hlawka";
    case InequalityId::strong_hlawka: return "strong_hlawka";
    case InequalityId::reduced_scalar: return "reduced_scalar";
    case InequalityId::xi_quartic: return "xi_quartic";
    case InequalityId::gram_quadratic_q: return "gram_quadratic_q";
    case InequalityId::substituted_r: return "substituted_r";
    case InequalityId::corollary_pos: return "corollary_pos";
    case InequalityId::corollary_neg: return "corollary_neg";
    case InequalityId::gram_det_identity: return "gram_det_identity";
    case InequalityId::cauchy_schwarz: return "cauchy_schwarz";
  }
  return "?";
}

InequalityId inequality_from_string(const std::string& s) {
  for (InequalityId id : kAllInequalities)
    if (s == to_string(id)) return id;
  throw std::invalid_argument("unknown inequality id: " + s);
}

int homogeneity_degree(InequalityId id) {
  switch (id) {
    case InequalityId::classical_hlawka: return 1;
    case InequalityId::strong_hlawka: return 2;
    case InequalityId::reduced_scalar: return 2;
    case InequalityId::xi_quartic: return 4;
    case InequalityId::gram_quadratic_q: return 1;
    case InequalityId::substituted_r: return 3;
    case InequalityId::corollary_pos: return 3;
    case InequalityId::corollary_neg: return 3;
    case InequalityId::gram_det_identity: return 3;
    case InequalityId::cauchy_schwarz: return 3;
  }
  return 1;
}

SlackReport classical_hlawka_slack(const VectorTriple& t, double tol) {
  t.validate();
  const double lhs = norm(t.x) + norm(t.y) + norm(t.z) +
                     norm(add(t.x, t.y, t.z));
  const double rhs = norm(add(t.x, t.y)) + norm(add(t.x, t.z)) +
                     norm(add(t.y, t.z));
  return make_report(InequalityId::classical_hlawka, lhs, rhs,
                     triple_scale(t), tol);
}

SlackReport strong_hlawka_slack(const VectorTriple& t, double tol) {
  t.validate();
  const double lhs =
      norm(t.x) * norm(t.y) + norm(t.z) * norm(add(t.x, t.y, t.z));
  const double rhs = norm(add(t.x, t.z)) * norm(add(t.y, t.z));
  return make_report(InequalityId::strong_hlawka, lhs, rhs, triple_scale(t),
                     tol);
}

std::array<double, 3> cyclic_strong_decomposition(const VectorTriple& t) {
  t.validate();
  const double nx = norm(t.x), ny = norm(t.y), nz = norm(t.z);
  const double ns = norm(add(t.x, t.y, t.z));
  const double nxy = norm(add(t.x, t.y));
  const double nxz = norm(add(t.x, t.z));
  const double nyz = norm(add(t.y, t.z));
  // Strong slacks of (x,y,z), (y,z,x), (z,x,y); they sum to
  // (lhs^2 - rhs^2)/2 of the classical inequality.
  return {nx * ny + nz * ns - nyz * nxz,
          ny * nz + nx * ns - nxz * nxy,
          nx * nz + ny * ns - nxy * nyz};
}

ReducedForms reduced_forms(const GramParams& g, double tol) {
  if (!psd_check(g, tol).is_psd)
    throw std::domain_error("reduced_forms: input fails the PSD check");
  const double a = std::sqrt(std::max(g.nsq_x, 0.0));
  const double b = std::sqrt(std::max(g.nsq_y, 0.0));
  const double c = std::sqrt(std::max(g.nsq_z, 0.0));
  double radicand =
      g.nsq_x + g.nsq_y + g.nsq_z + 2.0 * (g.p + g.q + g.r);
  if (radicand < 0.0) radicand = 0.0;  // PSD guarantees >= 0 up to rounding
  ReducedForms f;
  f.L_bold = a * b * c * std::sqrt(radicand);
  f.R_bold = g.nsq_x * g.r + g.nsq_y * g.q - g.nsq_z * g.p + 2.0 * g.q * g.r;
  f.xi = f.L_bold * f.L_bold - f.R_bold * f.R_bold;
  return f;
}

double xi_quartic(const GramParams& g) {
  const double A = g.nsq_x, B = g.nsq_y, C = g.nsq_z;
  const double p = g.p, q = g.q, r = g.r;
  const double lead = A * B * C * (A + B + C + 2.0 * (p + q + r));
  const double sub = A * A * r * r + B * B * q * q + C * C * p * p +
                     4.0 * q * q * r * r + 2.0 * A * B * q * r -
                     2.0 * A * C * p * r - 2.0 * B * C * p * q +
                     4.0 * A * q * r * r + 4.0 * B * r * q * q -
                     4.0 * C * p * q * r;
  return lead - sub;
}

double gram_quadratic_q(const GramParams& g, const WeightTriple& w) {
  return w.alpha * w.alpha * g.nsq_x + w.beta * w.beta * g.nsq_y +
         w.gamma * w.gamma * g.nsq_z + 2.0 * w.alpha * w.beta * g.p +
         2.0 * w.alpha * w.gamma * g.q + 2.0 * w.beta * w.gamma * g.r;
}

double substituted_r(const GramParams& g, const WeightTriple& w) {
  return w.alpha * w.alpha * g.nsq_x * g.r * g.r +
         w.beta * w.beta * g.nsq_y * g.q * g.q +
         w.gamma * w.gamma * g.nsq_z * g.p * g.p +
         2.0 * (w.alpha * w.beta + w.alpha * w.gamma + w.beta * w.gamma) *
             g.p * g.q * g.r;
}

SlackReport corollary_slack(const GramParams& g, double tol) {
  if (!psd_check(g, tol).is_psd)
    throw std::domain_error("corollary_slack: input fails the PSD check");
  const double D = g.p * g.q * g.r;
  const double lhs =
      g.nsq_x * g.r * g.r + g.nsq_y * g.q * g.q + g.nsq_z * g.p * g.p;
  InequalityId id = InequalityId::corollary_pos;
  double rhs = 0.0;
  if (D > 0.0) {
    rhs = 3.0 * D;
  } else if (D < 0.0) {
    id = InequalityId::corollary_neg;
    rhs = -6.0 * D;
  }
  return make_report(id, lhs, rhs, g.scale(), tol);
}

SlackReport gram_det_identity_slack(const GramParams& g, double tol) {
  const double lhs = g.nsq_x * g.nsq_y * g.nsq_z + 2.0 * g.p * g.q * g.r;
  const double rhs =
      g.nsq_x * g.r * g.r + g.nsq_y * g.q * g.q + g.nsq_z * g.p * g.p;
  return make_report(InequalityId::gram_det_identity, lhs, rhs, g.scale(),
                     tol);
}

SlackReport cauchy_schwarz_slack(const std::vector<double>& x,
                                 const std::vector<double>& y, double tol) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("cauchy_schwarz_slack: dimension mismatch");
  // Route through the corollary on (x, y, y); its slack equals the
  // reduction reported below, which is the pre-cancelation form of
  // ||x||^2 ||y||^2 >= <x,y>^2.
  VectorTriple t{x, y, y};
  const GramParams g3 = gram_from_vectors(t);
  (void)corollary_slack(g3, tol);
  const double nsqx = g3.nsq_x, nsqy = g3.nsq_y, ip = g3.p;
  const double lhs = nsqx * nsqy * nsqy;
  const double rhs = ip * ip * nsqy;
  return make_report(InequalityId::cauchy_schwarz, lhs, rhs,
                     std::max({1.0, nsqx, nsqy}), tol);
}

}  // namespace hlawka
