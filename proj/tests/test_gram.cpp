#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hlawka/gram.hpp"
#include "hlawka/rng.hpp"

using namespace hlawka;

namespace {

VectorTriple planar120() {
  const double h = std::sqrt(3.0) / 2.0;
  return {{1.0, 0.0, 0.0}, {0.5, h, 0.0}, {0.5, -h, 0.0}};
}

bool gram_close(const GramParams& a, const GramParams& b, double tol) {
  const double s = std::max(a.scale(), b.scale());
  return std::abs(a.nsq_x - b.nsq_x) <= tol * s &&
         std::abs(a.nsq_y - b.nsq_y) <= tol * s &&
         std::abs(a.nsq_z - b.nsq_z) <= tol * s &&
         std::abs(a.p - b.p) <= tol * s && std::abs(a.q - b.q) <= tol * s &&
         std::abs(a.r - b.r) <= tol * s;
}

// Random rotation in 3 dimensions via Gram-Schmidt on a normal matrix.
std::array<std::array<double, 3>, 3> random_rotation(Rng& rng) {
  std::array<std::array<double, 3>, 3> m;
  for (auto& row : m)
    for (double& c : row) c = rng.normal();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < i; ++j) {
      double d = 0.0;
      for (int k = 0; k < 3; ++k) d += m[i][k] * m[j][k];
      for (int k = 0; k < 3; ++k) m[i][k] -= d * m[j][k];
    }
    double n = 0.0;
    for (int k = 0; k < 3; ++k) n += m[i][k] * m[i][k];
    n = std::sqrt(n);
    for (int k = 0; k < 3; ++k) m[i][k] /= n;
  }
  return m;
}

std::vector<double> rotate(const std::array<std::array<double, 3>, 3>& m,
                           const std::vector<double>& v) {
  std::vector<double> out(3, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) out[i] += m[i][k] * v[k];
  return out;
}

}  // namespace

TEST_CASE("gram_from_vectors on the planar 120-degree triple") {
  const GramParams g = gram_from_vectors(planar120());
  CHECK(g.nsq_x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.nsq_y == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.nsq_z == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.p == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.q == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.r == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("gram_from_vectors on identical unit vectors") {
  const VectorTriple t{{1, 0}, {1, 0}, {1, 0}};
  const GramParams g = gram_from_vectors(t);
  CHECK(g.nsq_x == 1.0);
  CHECK(g.p == 1.0);
  CHECK(g.q == 1.0);
  CHECK(g.r == 1.0);
}

TEST_CASE("gram_from_vectors on an orthogonal pair plus their sum") {
  const VectorTriple t{{1, 0}, {0, 1}, {1, 1}};
  const GramParams g = gram_from_vectors(t);
  CHECK(g.nsq_x == 1.0);
  CHECK(g.nsq_y == 1.0);
  CHECK(g.nsq_z == 2.0);
  CHECK(g.p == 0.0);
  CHECK(g.q == 1.0);
  CHECK(g.r == 1.0);
}

TEST_CASE("gram_from_vectors rejects mismatched dimensions") {
  const VectorTriple t{{1, 0}, {0, 1, 0}, {1, 1}};
  CHECK_THROWS_AS(gram_from_vectors(t), std::invalid_argument);
}

TEST_CASE("psd_check classifies the textbook cases") {
  SUBCASE("orthonormal: full rank") {
    const PsdReport rep = psd_check({1, 1, 1, 0, 0, 0});
    CHECK(rep.is_psd);
    CHECK(rep.det == doctest::Approx(1.0));
    CHECK(rep.rank_estimate == 3);
  }
  SUBCASE("all-ones: rank one") {
    const PsdReport rep = psd_check({1, 1, 1, 1, 1, 1});
    CHECK(rep.is_psd);
    CHECK(rep.det == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.rank_estimate == 1);
  }
  SUBCASE("p beyond the Cauchy-Schwarz bound") {
    const PsdReport rep = psd_check({1, 1, 1, 1.5, 0, 0});
    CHECK_FALSE(rep.is_psd);
    CHECK(rep.minors_2x2[0] == doctest::Approx(-1.25));
  }
  SUBCASE("all-zero Gram is PSD with rank zero") {
    const PsdReport rep = psd_check({0, 0, 0, 0, 0, 0});
    CHECK(rep.is_psd);
    CHECK(rep.rank_estimate == 0);
  }
  SUBCASE("tol must be positive") {
    CHECK_THROWS_AS(psd_check({1, 1, 1, 0, 0, 0}, 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("realize_vectors reproduces the Gram matrix") {
  SUBCASE("orthonormal triple") {
    const GramParams g{1, 1, 1, 0, 0, 0};
    const VectorTriple t = realize_vectors(g);
    CHECK(t.dim() == 3);
    CHECK(gram_close(gram_from_vectors(t), g, 1e-12));
  }
  SUBCASE("rank-one all-ones Gram gives three equal vectors") {
    const GramParams g{1, 1, 1, 1, 1, 1};
    const VectorTriple t = realize_vectors(g);
    for (int k = 0; k < 3; ++k) {
      CHECK(t.x[k] == doctest::Approx(t.y[k]).epsilon(1e-12));
      CHECK(t.x[k] == doctest::Approx(t.z[k]).epsilon(1e-12));
    }
    CHECK(gram_close(gram_from_vectors(t), g, 1e-12));
  }
  SUBCASE("planar 120-degree Gram roundtrips") {
    const GramParams g{1, 1, 1, 0.5, 0.5, -0.5};
    CHECK(gram_close(gram_from_vectors(realize_vectors(g)), g, 1e-12));
  }
  SUBCASE("non-PSD input is rejected") {
    CHECK_THROWS_AS(realize_vectors({1, 1, 1, 1.5, 0, 0}),
                    std::domain_error);
  }
}

TEST_CASE("roundtrip holds on sampled PSD matrices from all strategies") {
  for (SampleStrategy strat :
       {SampleStrategy::ambient_vectors, SampleStrategy::factor_3x3,
        SampleStrategy::boundary_rank2, SampleStrategy::boundary_rank1}) {
    SampleConfig cfg;
    cfg.strategy = strat;
    cfg.dim = 5;
    cfg.seed = 11;
    for (std::uint64_t i = 0; i < 500; ++i) {
      const GramParams g = sample_gram_at(cfg, i);
      CAPTURE(to_string(strat));
      CAPTURE(i);
      REQUIRE(psd_check(g).is_psd);
      CHECK(gram_close(gram_from_vectors(realize_vectors(g)), g, 1e-9));
    }
  }
}

TEST_CASE("gram is invariant under simultaneous rotations") {
  Rng rng(99, 0);
  SampleConfig cfg;
  cfg.strategy = SampleStrategy::ambient_vectors;
  cfg.dim = 3;
  cfg.seed = 5;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const VectorTriple t = sample_triple(cfg, i);
    const auto rot = random_rotation(rng);
    const VectorTriple tr{rotate(rot, t.x), rotate(rot, t.y),
                          rotate(rot, t.z)};
    CHECK(gram_close(gram_from_vectors(t), gram_from_vectors(tr), 1e-12));
  }
}

TEST_CASE("sampler determinism and dimension laws") {
  SampleConfig cfg;
  cfg.strategy = SampleStrategy::ambient_vectors;
  cfg.dim = 4;
  cfg.seed = 123;

  SUBCASE("same (seed, index) reproduces the sample") {
    const VectorTriple a = sample_triple(cfg, 17);
    const VectorTriple b = sample_triple(cfg, 17);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.z == b.z);
    const VectorTriple c = sample_triple(cfg, 18);
    CHECK(a.x != c.x);
  }

  SUBCASE("dimension 1 forces collinearity") {
    cfg.strategy = SampleStrategy::boundary_rank1;
    for (std::uint64_t i = 0; i < 300; ++i) {
      const GramParams g = sample_gram_at(cfg, i);
      const double ab = std::sqrt(g.nsq_x * g.nsq_y);
      const double ac = std::sqrt(g.nsq_x * g.nsq_z);
      const double bc = std::sqrt(g.nsq_y * g.nsq_z);
      const double s = g.scale();
      CHECK(std::abs(std::abs(g.p) - ab) <= 1e-12 * s);
      CHECK(std::abs(std::abs(g.q) - ac) <= 1e-12 * s);
      CHECK(std::abs(std::abs(g.r) - bc) <= 1e-12 * s);
    }
  }

  SUBCASE("rank-2 boundary samples have vanishing determinant") {
    cfg.strategy = SampleStrategy::boundary_rank2;
    for (std::uint64_t i = 0; i < 300; ++i) {
      const GramParams g = sample_gram_at(cfg, i);
      const double s = g.scale();
      CHECK(std::abs(g.det()) <= kDefaultTol * s * s * s);
    }
  }

  SUBCASE("factor-3x3 samples are always PSD") {
    cfg.strategy = SampleStrategy::factor_3x3;
    cfg.count = 10000;
    for (const GramParams& g : sample_gram(cfg)) CHECK(psd_check(g).is_psd);
  }

  SUBCASE("determinant sign by ambient dimension") {
    for (std::size_t d : {1ul, 2ul, 3ul, 5ul}) {
      cfg.strategy = SampleStrategy::ambient_vectors;
      cfg.dim = d;
      for (std::uint64_t i = 0; i < 300; ++i) {
        const GramParams g = sample_gram_at(cfg, i);
        const double bound = kDefaultTol * std::pow(g.scale(), 3);
        if (d >= 3)
          CHECK(g.det() >= -bound);
        else
          CHECK(std::abs(g.det()) <= bound);
      }
    }
  }

  SUBCASE("heavy-tail law produces finite samples") {
    cfg.scale_law = ScaleLaw::heavy_tail;
    for (std::uint64_t i = 0; i < 300; ++i) {
      const VectorTriple t = sample_triple(cfg, i);
      CHECK_NOTHROW(t.validate());
    }
  }
}

TEST_CASE("minor-based PSD verdict agrees with the eigenvalue route") {
  // Independent check: all eigenvalues >= -tol*scale versus the principal
  // minor test. Draws mix PSD-by-construction samples with uniform noise;
  // borderline draws inside ten tolerance bands are skipped.
  const double tol = kDefaultTol;
  std::uint64_t checked = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    Rng rng(321, i);
    GramParams g;
    if (i % 2 == 0) {
      SampleConfig cfg;
      cfg.strategy = SampleStrategy::factor_3x3;
      cfg.seed = 321;
      g = sample_gram_at(cfg, i);
    } else {
      g = GramParams{rng.uniform(0.0, 2.0),  rng.uniform(0.0, 2.0),
                     rng.uniform(0.0, 2.0),  rng.uniform(-2.0, 2.0),
                     rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    }
    const PsdReport rep = psd_check(g, tol);
    const double s = g.scale();

    const Sym3Eigen eig = sym3_eigen(g.matrix());
    const double lam_min = eig.values[2];
    const bool eig_psd = lam_min >= -tol * s;

    const bool borderline =
        std::abs(lam_min) <= 10 * tol * s ||
        std::abs(rep.det) <= 10 * tol * s * s * s ||
        std::abs(rep.minors_2x2[0]) <= 10 * tol * s * s ||
        std::abs(rep.minors_2x2[1]) <= 10 * tol * s * s ||
        std::abs(rep.minors_2x2[2]) <= 10 * tol * s * s;
    if (borderline && i % 2 == 1) continue;

    ++checked;
    CAPTURE(i);
    CHECK(rep.is_psd == eig_psd);
  }
  CHECK(checked > 5000);  // the filter must not eat the test
}

TEST_CASE("rank estimate matches construction rank") {
  SampleConfig cfg;
  cfg.seed = 8;
  cfg.strategy = SampleStrategy::boundary_rank1;
  for (std::uint64_t i = 0; i < 200; ++i)
    CHECK(psd_check(sample_gram_at(cfg, i)).rank_estimate <= 1);
  cfg.strategy = SampleStrategy::boundary_rank2;
  for (std::uint64_t i = 0; i < 200; ++i)
    CHECK(psd_check(sample_gram_at(cfg, i)).rank_estimate <= 2);
  cfg.strategy = SampleStrategy::ambient_vectors;
  cfg.dim = 5;
  for (std::uint64_t i = 0; i < 200; ++i)
    CHECK(psd_check(sample_gram_at(cfg, i)).rank_estimate == 3);
}
