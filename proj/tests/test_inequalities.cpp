#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hlawka/inequalities.hpp"
#include "hlawka/json_io.hpp"
#include "hlawka/rng.hpp"

using namespace hlawka;

namespace {

VectorTriple planar120() {
  const double h = std::sqrt(3.0) / 2.0;
  return {{1.0, 0.0, 0.0}, {0.5, h, 0.0}, {0.5, -h, 0.0}};
}

VectorTriple scaled(const VectorTriple& t, double s) {
  VectorTriple out = t;
  for (auto* v : {&out.x, &out.y, &out.z})
    for (double& c : *v) c *= s;
  return out;
}

VectorTriple random_triple(std::uint64_t seed, std::uint64_t index,
                           std::size_t dim) {
  SampleConfig cfg;
  cfg.strategy = SampleStrategy::ambient_vectors;
  cfg.dim = dim;
  cfg.seed = seed;
  return sample_triple(cfg, index);
}

}  // namespace

TEST_CASE("classical slack on fixed inputs") {
  SUBCASE("equal unit vectors give equality") {
    const VectorTriple t{{1, 0}, {1, 0}, {1, 0}};
    const SlackReport rep = classical_hlawka_slack(t);
    CHECK(rep.lhs == doctest::Approx(6.0));
    CHECK(rep.rhs == doctest::Approx(6.0));
    CHECK(rep.is_equality);
  }
  SUBCASE("orthogonal pair plus their sum") {
    const VectorTriple t{{1, 0}, {0, 1}, {1, 1}};
    const SlackReport rep = classical_hlawka_slack(t);
    // lhs = 2 + 3*sqrt(2), rhs = sqrt(2) + 2*sqrt(5)
    const double expected = 2.0 + 2.0 * std::sqrt(2.0) - 2.0 * std::sqrt(5.0);
    CHECK(rep.slack == doctest::Approx(expected).epsilon(1e-12));
    CHECK(rep.slack == doctest::Approx(0.3562).epsilon(1e-3));
  }
  SUBCASE("zero z collapses to equality") {
    const VectorTriple t{{1.2, -0.3}, {0.4, 2.0}, {0, 0}};
    const SlackReport rep = classical_hlawka_slack(t);
    CHECK(rep.slack == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(rep.is_equality);
  }
}

TEST_CASE("strong slack on fixed inputs") {
  SUBCASE("the x=(1,0), y=(0,1), z=x+y equality point") {
    const VectorTriple t{{1, 0}, {0, 1}, {1, 1}};
    const SlackReport rep = strong_hlawka_slack(t);
    CHECK(rep.lhs == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(rep.rhs == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(rep.is_equality);
  }
  SUBCASE("zero z") {
    const VectorTriple t{{2, 1}, {-1, 3}, {0, 0}};
    const SlackReport rep = strong_hlawka_slack(t);
    CHECK(rep.slack == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(rep.is_equality);
  }
  SUBCASE("planar 120-degree witness") {
    const SlackReport rep = strong_hlawka_slack(planar120());
    CHECK(rep.lhs == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(rep.slack == doctest::Approx(3.0 - std::sqrt(3.0)).epsilon(1e-12));
  }
}

TEST_CASE("cyclic decomposition terms and their sum") {
  SUBCASE("equal unit vectors zero every term") {
    const VectorTriple t{{1, 0}, {1, 0}, {1, 0}};
    for (double term : cyclic_strong_decomposition(t))
      CHECK(term == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("zero z zeroes every term") {
    const VectorTriple t{{1, 2}, {3, -1}, {0, 0}};
    for (double term : cyclic_strong_decomposition(t))
      CHECK(term == doctest::Approx(0.0).epsilon(1e-13));
  }
  SUBCASE("orthonormal triple") {
    const VectorTriple t{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const auto terms = cyclic_strong_decomposition(t);
    const double expected = 1.0 + std::sqrt(3.0) - 2.0;
    for (double term : terms)
      CHECK(term == doctest::Approx(expected).epsilon(1e-12));
    const SlackReport cl = classical_hlawka_slack(t);
    const double half_sq_diff = (cl.lhs * cl.lhs - cl.rhs * cl.rhs) / 2.0;
    CHECK(terms[0] + terms[1] + terms[2] ==
          doctest::Approx(half_sq_diff).epsilon(1e-12));
  }
  SUBCASE("each term is the strong slack of a cyclic relabeling") {
    for (std::uint64_t i = 0; i < 200; ++i) {
      const VectorTriple t = random_triple(31, i, 3);
      const auto terms = cyclic_strong_decomposition(t);
      const VectorTriple t2{t.y, t.z, t.x};
      const VectorTriple t3{t.z, t.x, t.y};
      CHECK(terms[0] ==
            doctest::Approx(strong_hlawka_slack(t).slack).epsilon(1e-10));
      CHECK(terms[1] ==
            doctest::Approx(strong_hlawka_slack(t2).slack).epsilon(1e-10));
      CHECK(terms[2] ==
            doctest::Approx(strong_hlawka_slack(t3).slack).epsilon(1e-10));
    }
  }
  SUBCASE("sum equals half the classical square difference") {
    for (std::uint64_t i = 0; i < 500; ++i) {
      const VectorTriple t = random_triple(32, i, 4);
      const auto terms = cyclic_strong_decomposition(t);
      const SlackReport cl = classical_hlawka_slack(t);
      const double half = (cl.lhs * cl.lhs - cl.rhs * cl.rhs) / 2.0;
      const double s = std::pow(gram_from_vectors(t).scale(), 2);
      CHECK(std::abs(terms[0] + terms[1] + terms[2] - half) <= 1e-11 * s);
    }
  }
}

TEST_CASE("reduced forms on fixed inputs") {
  SUBCASE("orthonormal") {
    const ReducedForms f = reduced_forms({1, 1, 1, 0, 0, 0});
    CHECK(f.L_bold == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(f.R_bold == 0.0);
    CHECK(f.xi == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("all-ones") {
    const ReducedForms f = reduced_forms({1, 1, 1, 1, 1, 1});
    CHECK(f.L_bold == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(f.R_bold == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(f.xi == doctest::Approx(0.0).epsilon(1e-13));
  }
  SUBCASE("the nsq=(1,1,2) equality point") {
    const ReducedForms f = reduced_forms({1, 1, 2, 0, 1, 1});
    CHECK(f.L_bold == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(f.R_bold == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(f.xi == doctest::Approx(0.0).epsilon(1e-13));
  }
  SUBCASE("non-PSD input is rejected") {
    CHECK_THROWS_AS(reduced_forms({1, 1, 1, 1.5, 0, 0}), std::domain_error);
  }
}

TEST_CASE("xi_quartic on fixed inputs") {
  CHECK(xi_quartic({1, 1, 1, 1, 1, 1}) == doctest::Approx(0.0));
  CHECK(xi_quartic({1, 1, 1, 0, 0, 0}) == doctest::Approx(3.0));
  // q = 1 contributes both to the leading sum (2q) and to b^4 q^2:
  // 1*1*1*(3 + 2) - 1 = 4. Cross-checked against the factored form
  // (a^2 b^2 - p^2)(a^2 l(l+1) - b^2 m(m+1))^2 = 1 * (2 - 0)^2 = 4 at
  // l = 1, m = 0.
  CHECK(xi_quartic({1, 1, 1, 0, 1, 0}) == doctest::Approx(4.0));
}

TEST_CASE("quadratic form Q on fixed inputs") {
  CHECK(gram_quadratic_q({1, 1, 1, 0, 0, 0}, {1, 2, 3}) ==
        doctest::Approx(14.0));
  CHECK(gram_quadratic_q({1, 1, 1, 0.5, 0.5, -0.5}, {1, 1, 1}) ==
        doctest::Approx(4.0));
  CHECK(gram_quadratic_q({3, 7, 2, 1, -1, 0.5}, {0, 0, 0}) == 0.0);
}

TEST_CASE("substituted form R on fixed inputs") {
  SUBCASE("planar 120-degree witness at unit weights vanishes") {
    const GramParams g = gram_from_vectors(planar120());
    CHECK(substituted_r(g, {1, 1, 1}) == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("all-ones Gram at weights (1,1,-2) vanishes") {
    CHECK(substituted_r({1, 1, 1, 1, 1, 1}, {1, 1, -2}) ==
          doctest::Approx(0.0));
  }
  SUBCASE("single weight reduces to one square") {
    const GramParams g{2, 3, 5, 0.3, -0.7, 1.1};
    CHECK(substituted_r(g, {1, 0, 0}) ==
          doctest::Approx(g.nsq_x * g.r * g.r));
  }
}

TEST_CASE("corollary slack on fixed inputs") {
  SUBCASE("all-ones Gram: positive branch, equality") {
    const SlackReport rep = corollary_slack({1, 1, 1, 1, 1, 1});
    CHECK(rep.inequality_id == InequalityId::corollary_pos);
    CHECK(rep.lhs == doctest::Approx(3.0));
    CHECK(rep.rhs == doctest::Approx(3.0));
    CHECK(rep.is_equality);
  }
  SUBCASE("planar 120-degree witness: negative branch, equality") {
    const GramParams g = gram_from_vectors(planar120());
    const SlackReport rep = corollary_slack(g);
    CHECK(rep.inequality_id == InequalityId::corollary_neg);
    CHECK(rep.lhs == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(rep.rhs == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(rep.is_equality);
  }
  SUBCASE("orthonormal: vanishing product branch") {
    const SlackReport rep = corollary_slack({1, 1, 1, 0, 0, 0});
    CHECK(rep.inequality_id == InequalityId::corollary_pos);
    CHECK(rep.lhs == 0.0);
    CHECK(rep.rhs == 0.0);
    CHECK(rep.is_equality);
  }
  SUBCASE("non-PSD input is rejected") {
    CHECK_THROWS_AS(corollary_slack({1, 1, 1, 1.5, 0, 0}),
                    std::domain_error);
  }
}

TEST_CASE("determinant identity slack on fixed inputs") {
  CHECK(gram_det_identity_slack({1, 1, 1, 0, 0, 0}).slack ==
        doctest::Approx(1.0));
  CHECK(gram_det_identity_slack({1, 1, 1, 1, 1, 1}).slack ==
        doctest::Approx(0.0));
  const GramParams g120{1, 1, 1, 0.5, 0.5, -0.5};
  CHECK(gram_det_identity_slack(g120).slack == doctest::Approx(0.0));
  for (std::uint64_t i = 0; i < 200; ++i) {
    SampleConfig cfg;
    cfg.strategy = SampleStrategy::factor_3x3;
    cfg.seed = 77;
    const GramParams g = sample_gram_at(cfg, i);
    CHECK(gram_det_identity_slack(g).slack == doctest::Approx(g.det()));
  }
}

TEST_CASE("Cauchy-Schwarz specialization") {
  CHECK(cauchy_schwarz_slack({1, 0}, {0, 1}).slack == doctest::Approx(1.0));
  const SlackReport collinear = cauchy_schwarz_slack({1, 0}, {2, 0});
  CHECK(collinear.slack == doctest::Approx(0.0));
  CHECK(collinear.is_equality);
  CHECK(cauchy_schwarz_slack({1, 1}, {1, 0}).slack == doctest::Approx(1.0));
  CHECK_THROWS_AS(cauchy_schwarz_slack({1, 0}, {1, 0, 0}),
                  std::invalid_argument);

  SUBCASE("matches the corollary route on random pairs") {
    for (std::uint64_t i = 0; i < 500; ++i) {
      const VectorTriple t = random_triple(41, i, 3);
      const SlackReport cs = cauchy_schwarz_slack(t.x, t.y);
      const GramParams g3 = gram_from_vectors({t.x, t.y, t.y});
      const SlackReport cor = corollary_slack(g3);
      const double s = std::pow(g3.scale(), 3);
      CHECK(std::abs(cs.slack - cor.slack) <= 1e-12 * s);
    }
  }
  SUBCASE("near-collinear pairs stay nonnegative") {
    for (std::uint64_t i = 0; i < 5000; ++i) {
      Rng rng(43, i);
      std::vector<double> y = {rng.normal(), rng.normal(), rng.normal()};
      std::vector<double> x = y;
      for (double& c : x) c += 1e-6 * rng.normal();
      const SlackReport rep = cauchy_schwarz_slack(x, y);
      const double s =
          std::max({1.0, x[0] * x[0] + x[1] * x[1] + x[2] * x[2],
                    y[0] * y[0] + y[1] * y[1] + y[2] * y[2]});
      CHECK(rep.slack >= -1e-9 * s * s * s);
    }
  }
}

TEST_CASE("representation consistency between vector and Gram evaluators") {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const VectorTriple t = random_triple(51, i, 5);
    const GramParams g = gram_from_vectors(t);
    const double s2 = std::pow(g.scale(), 2);

    const SlackReport strong = strong_hlawka_slack(t);
    const ReducedForms rf = reduced_forms(g);
    // (lhs^2 - rhs^2)/2 of the strong inequality equals L - R.
    const double half = (strong.lhs * strong.lhs - strong.rhs * strong.rhs) / 2.0;
    CHECK(std::abs(half - (rf.L_bold - rf.R_bold)) <= 1e-10 * s2);
    // Slack signs agree (up to tolerance around zero).
    if (strong.slack > 1e-9 * s2) CHECK(rf.L_bold - rf.R_bold > -1e-10 * s2);

    const double s4 = s2 * s2;
    CHECK(std::abs(xi_quartic(g) - rf.xi) <= 1e-9 * s4);
  }
}

TEST_CASE("substitution identity Q(alpha r, beta q, gamma p) = R") {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    SampleConfig cfg;
    cfg.strategy = SampleStrategy::factor_3x3;
    cfg.seed = 61;
    const GramParams g = sample_gram_at(cfg, i);
    Rng rng(62, i);
    const WeightTriple w{rng.normal(), rng.normal(), rng.normal()};
    const double lhs = substituted_r(g, w);
    const double rhs =
        gram_quadratic_q(g, {w.alpha * g.r, w.beta * g.q, w.gamma * g.p});
    CHECK(std::abs(lhs - rhs) <=
          1e-13 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
  }
}

TEST_CASE("homogeneity degrees under vector scaling") {
  const VectorTriple t = random_triple(71, 3, 3);
  const GramParams g = gram_from_vectors(t);
  const WeightTriple w{0.7, -1.3, 0.4};
  for (double s : {1.0 / 3.0, 1.0, 7.0}) {
    const VectorTriple ts = scaled(t, s);
    const GramParams gs = gram_from_vectors(ts);
    const double s2 = s * s;
    CHECK(strong_hlawka_slack(ts).slack ==
          doctest::Approx(s2 * strong_hlawka_slack(t).slack).epsilon(1e-10));
    CHECK(xi_quartic(gs) ==
          doctest::Approx(std::pow(s, 8) * xi_quartic(g)).epsilon(1e-10));
    CHECK(gram_quadratic_q(gs, w) ==
          doctest::Approx(s2 * gram_quadratic_q(g, w)).epsilon(1e-12));
    CHECK(gram_det_identity_slack(gs).slack ==
          doctest::Approx(std::pow(s, 6) * gram_det_identity_slack(g).slack)
              .epsilon(1e-10));
  }
}

TEST_CASE("nonnegative cyclic terms imply the classical inequality") {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const VectorTriple t = random_triple(81, i, 4);
    const auto terms = cyclic_strong_decomposition(t);
    const double s = gram_from_vectors(t).scale();
    if (terms[0] >= 0.0 && terms[1] >= 0.0 && terms[2] >= 0.0)
      CHECK(classical_hlawka_slack(t).slack >= -1e-9 * s);
  }
}

TEST_CASE("every inequality holds on random samples") {
  SampleConfig cfg;
  cfg.strategy = SampleStrategy::ambient_vectors;
  cfg.dim = 5;
  cfg.seed = 91;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const VectorTriple t = sample_triple(cfg, i);
    const GramParams g = gram_from_vectors(t);
    const double s = g.scale();
    Rng rng(92, i);
    const WeightTriple w{rng.normal(), rng.normal(), rng.normal()};

    CHECK(classical_hlawka_slack(t).slack >= -1e-9 * s);
    CHECK(strong_hlawka_slack(t).slack >= -1e-9 * s * s);
    const ReducedForms rf = reduced_forms(g);
    CHECK(rf.L_bold - rf.R_bold >= -1e-9 * s * s);
    CHECK(rf.L_bold >= 0.0);
    CHECK(xi_quartic(g) >= -1e-9 * s * s * s * s);
    CHECK(gram_quadratic_q(g, w) >= -1e-9 * s);
    CHECK(substituted_r(g, w) >= -1e-9 * s * s * s);
    CHECK(corollary_slack(g).slack >= -1e-9 * s * s * s);
    CHECK(gram_det_identity_slack(g).slack >= -1e-9 * s * s * s);
    CHECK(cauchy_schwarz_slack(t.x, t.y).slack >= -1e-9 * s * s * s);
  }
}

TEST_CASE("slack report JSON uses the contract field names") {
  const SlackReport rep = strong_hlawka_slack({{1, 0}, {0, 1}, {1, 1}});
  const json j(rep);
  CHECK(j.at("inequality_id") == "strong_hlawka");
  CHECK(j.contains("lhs"));
  CHECK(j.contains("rhs"));
  CHECK(j.contains("slack"));
  CHECK(j.contains("is_equality"));

  const GramParams g{1, 2, 3, 0.1, 0.2, 0.3};
  const json gj(g);
  for (const char* key : {"nsq_x", "nsq_y", "nsq_z", "p", "q", "r"})
    CHECK(gj.contains(key));
  const GramParams back = gj.get<GramParams>();
  CHECK(back.nsq_y == 2.0);

  for (InequalityId id : kAllInequalities)
    CHECK(inequality_from_string(to_string(id)) == id);
}
