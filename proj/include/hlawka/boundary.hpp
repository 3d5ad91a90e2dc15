#pragma once

#include <vector>

#include "hlawka/gram.hpp"

namespace hlawka {

enum class CaseTag {
  case_i,    // z = lambda x + mu y
  case_ii,   // x = lambda y + mu z
  case_iii,  // y = lambda x + mu z
};

const char* to_string(CaseTag tag);

struct DependenceCase {
  CaseTag tag = CaseTag::case_i;
  double lambda = 0.0;
  double mu = 0.0;
};

// The 2x2 Gram block of the case's spanning pair, i.e. the parameters not
// determined by the substitution: (a^2, b^2, p) for case_i, (b^2, c^2, r)
// for case_ii, (a^2, c^2, q) for case_iii.
struct FreeBlock {
  double nsq_1 = 0.0;
  double nsq_2 = 0.0;
  double inner = 0.0;
};

struct DependenceWitness {
  DependenceCase dep;
  double dependence_residual = 0.0;  // relative error of the linear relation
  double condition_residual = 0.0;   // relative error of the case condition
};

enum class IntervalKind { interval, full_segment, empty, point };

// Admissible range of p given the five other Gram parameters:
// {p : det G(p) >= 0} intersected with the Cauchy-Schwarz segment
// [-ab, ab]. det G(p) is a downward parabola in p with discriminant
// (a^2 c^2 - q^2)(b^2 c^2 - r^2).
struct PInterval {
  IntervalKind kind = IntervalKind::empty;
  double lo = 0.0;
  double hi = 0.0;
};

// Completes the Gram parameters under the case's linear dependence.
// The result has det = 0 (rank <= 2) by construction. Throws
// std::invalid_argument if the free block is not PSD.
GramParams substitute_dependence(const DependenceCase& c, const FreeBlock& f);

// The factored form of xi on the dependence stratum:
//   case_i  : (a^2 b^2 - p^2) (a^2 l(l+1) - b^2 m(m+1))^2
//   case_ii : (b^2 c^2 - r^2) (b^2 l(l+1) + c^2 m(m+1) + 2 l(m+1) r)^2
//   case_iii: (a^2 c^2 - q^2) (a^2 l(l+1) + c^2 m(m+1) + 2 l(m+1) q)^2
// Nonnegative whenever the free block is PSD.
double factored_xi(const DependenceCase& c, const FreeBlock& f);

// |xi_quartic(substitute_dependence(c, f)) - factored_xi(c, f)| relative to
// max(1, scale^4); a randomized identity test of the factored forms.
double identity_residual(const DependenceCase& c, const FreeBlock& f);

PInterval p_interval(double a2, double b2, double c2, double q, double r,
                     double tol = kDefaultTol);

// xi is concave in p (leading coefficient -c^4), so its minimum over the
// admissible interval sits at an endpoint. Checks that `samples` interior
// points never undercut min(xi(lo), xi(hi)) beyond tolerance.
bool endpoint_dominance_check(double a2, double b2, double c2, double q,
                              double r, int samples,
                              double tol = kDefaultTol);

// All equality cases matched by the triple: for each case the dependence
// coefficients are recovered by least squares on the spanning pair (with
// the condition solved in closed form along the null direction when the
// pair is rank-deficient) and a witness is kept when both the relation and
// the case condition hold within tol. A case condition only makes
// xi = L^2 - R^2 vanish; equality additionally requires R >= 0, which is
// checked once per triple. Nonempty exactly when the strong inequality is
// an equality at tolerance.
std::vector<DependenceWitness> classify_equality(const VectorTriple& t,
                                                 double tol = kDefaultTol);

}  // namespace hlawka
