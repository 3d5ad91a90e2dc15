#pragma once

#include <array>
#include <string>

#include "hlawka/gram.hpp"

namespace hlawka {

enum class InequalityId {
  classical_hlawka,    // ||x||+||y||+||z||+||x+y+z|| >= ||x+y||+||x+z||+||y+z||
  strong_hlawka,       // ||x||||y|| + ||z||||x+y+z|| >= ||x+z||||y+z||
  reduced_scalar,      // L = abc||x+y+z|| >= R = a^2 r + b^2 q - c^2 p + 2qr
  xi_quartic,          // xi = L^2 - R^2 >= 0 on the PSD cone
  gram_quadratic_q,    // w^T G w >= 0
  substituted_r,       // Q at weights (alpha r, beta q, gamma p) >= 0
  corollary_pos,       // a^2 r^2 + b^2 q^2 + c^2 p^2 >= 3 pqr   (pqr > 0)
  corollary_neg,       // a^2 r^2 + b^2 q^2 + c^2 p^2 >= -6 pqr  (pqr < 0)
  gram_det_identity,   // det G >= 0, written as the reverse bound
  cauchy_schwarz,      // the z = y specialization of the corollary
};

inline constexpr std::array<InequalityId, 10> kAllInequalities = {
    InequalityId::classical_hlawka,  InequalityId::strong_hlawka,
    InequalityId::reduced_scalar,    InequalityId::xi_quartic,
    InequalityId::gram_quadratic_q,  InequalityId::substituted_r,
    InequalityId::corollary_pos,     InequalityId::corollary_neg,
    InequalityId::gram_det_identity, InequalityId::cauchy_schwarz,
};

const char* to_string(InequalityId id);
InequalityId inequality_from_string(const std::string& s);

// Exponent applied to the Gram scale when comparing slacks against the
// tolerance (the homogeneity degree of the inequality's sides).
int homogeneity_degree(InequalityId id);

// Left side minus right side of one inequality on one input.
struct SlackReport {
  InequalityId inequality_id{};
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs, exactly as computed
  bool is_equality = false;  // |slack| <= tol * scale^degree
};

// The reduced scalar forms of the strong inequality:
// L = abc * ||x+y+z||, R = a^2 r + b^2 q - c^2 p + 2 q r, xi = L^2 - R^2.
struct ReducedForms {
  double L_bold = 0.0;
  double R_bold = 0.0;
  double xi = 0.0;
};

struct WeightTriple {
  double alpha = 1.0, beta = 1.0, gamma = 1.0;
};

SlackReport classical_hlawka_slack(const VectorTriple& t,
                                   double tol = kDefaultTol);
SlackReport strong_hlawka_slack(const VectorTriple& t,
                                double tol = kDefaultTol);

// The three bracketed terms of the regrouped square identity: the strong
// slack of (x,y,z), (y,z,x) and (z,x,y). Their sum equals
// (lhs^2 - rhs^2)/2 of the classical inequality, so termwise nonnegativity
// implies the classical bound.
std::array<double, 3> cyclic_strong_decomposition(const VectorTriple& t);

// Requires a PSD input; a radicand in [-tol*scale, 0) is clamped to 0.
ReducedForms reduced_forms(const GramParams& g, double tol = kDefaultTol);

// The quartic polynomial in (a^2, b^2, c^2, p, q, r); defined everywhere.
double xi_quartic(const GramParams& g);

// Q(w) = w^T G w, expanded.
double gram_quadratic_q(const GramParams& g, const WeightTriple& w);

// R(w) = Q(alpha r, beta q, gamma p)
//      = alpha^2 a^2 r^2 + beta^2 b^2 q^2 + gamma^2 c^2 p^2
//        + 2 (alpha beta + alpha gamma + beta gamma) p q r.
double substituted_r(const GramParams& g, const WeightTriple& w);

// The sharp corollary: with D = pqr, lhs = a^2 r^2 + b^2 q^2 + c^2 p^2 and
// rhs = 3D (D > 0), -6D (D < 0) or 0 (D = 0, reported as corollary_pos).
// Requires a PSD input.
SlackReport corollary_slack(const GramParams& g, double tol = kDefaultTol);

// slack = det G, written as (a^2 b^2 c^2 + 2pqr) - (a^2 r^2 + b^2 q^2 +
// c^2 p^2); the reverse companion of the corollary.
SlackReport gram_det_identity_slack(const GramParams& g,
                                    double tol = kDefaultTol);

// Cauchy-Schwarz as the z = y specialization of the corollary:
// slack = ||x||^2 ||y||^4 - <x,y>^2 ||y||^2.
SlackReport cauchy_schwarz_slack(const std::vector<double>& x,
                                 const std::vector<double>& y,
                                 double tol = kDefaultTol);

}  // namespace hlawka
