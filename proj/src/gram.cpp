#include "hlawka/gram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hlawka/rng.hpp"

namespace hlawka {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double draw_coord(Rng& rng, ScaleLaw law) {
  return law == ScaleLaw::standard_normal ? rng.normal() : rng.heavy_tail();
}

std::vector<double> draw_vector(Rng& rng, std::size_t dim, ScaleLaw law) {
  std::vector<double> v(dim);
  for (auto& c : v) c = draw_coord(rng, law);
  return v;
}

}  // namespace

void VectorTriple::validate() const {
  const std::size_t d = x.size();
  if (d == 0) throw std::invalid_argument("VectorTriple: dimension must be >= 1");
  if (y.size() != d || z.size() != d)
    throw std::invalid_argument("VectorTriple: dimension mismatch among x, y, z");
  for (const auto* v : {&x, &y, &z})
    for (double c : *v)
      if (!std::isfinite(c))
        throw std::invalid_argument("VectorTriple: non-finite coordinate");
}

double GramParams::scale() const {
  return std::max({1.0, nsq_x, nsq_y, nsq_z});
}

double GramParams::det() const {
  return (nsq_x * nsq_y * nsq_z + 2.0 * p * q * r) -
         (nsq_x * r * r + nsq_y * q * q + nsq_z * p * p);
}

std::array<double, 3> GramParams::minors2x2() const {
  return {nsq_x * nsq_y - p * p, nsq_x * nsq_z - q * q,
          nsq_y * nsq_z - r * r};
}

Mat3x3 GramParams::matrix() const {
  return {{{nsq_x, p, q}, {p, nsq_y, r}, {q, r, nsq_z}}};
}

GramParams gram_from_vectors(const VectorTriple& t) {
  t.validate();
  GramParams g;
  g.nsq_x = dot(t.x, t.x);
  g.nsq_y = dot(t.y, t.y);
  g.nsq_z = dot(t.z, t.z);
  g.p = dot(t.x, t.y);
  g.q = dot(t.x, t.z);
  g.r = dot(t.y, t.z);
  return g;
}

PsdReport psd_check(const GramParams& g, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("psd_check: tol must be > 0");
  PsdReport rep;
  rep.minors_2x2 = g.minors2x2();
  rep.det = g.det();

  const double s = g.scale();
  const bool diag_ok = g.nsq_x >= -tol * s && g.nsq_y >= -tol * s &&
                       g.nsq_z >= -tol * s;
  const bool minors_ok = rep.minors_2x2[0] >= -tol * s * s &&
                         rep.minors_2x2[1] >= -tol * s * s &&
                         rep.minors_2x2[2] >= -tol * s * s;
  const bool det_ok = rep.det >= -tol * s * s * s;
  rep.is_psd = diag_ok && minors_ok && det_ok;

  const double trace = g.nsq_x + g.nsq_y + g.nsq_z;
  const Sym3Eigen eig = sym3_eigen(g.matrix());
  rep.rank_estimate = 0;
  for (double ev : eig.values)
    if (ev > tol * trace) ++rep.rank_estimate;
  return rep;
}

VectorTriple realize_vectors(const GramParams& g, double tol) {
  const PsdReport rep = psd_check(g, tol);
  if (!rep.is_psd)
    throw std::domain_error("realize_vectors: input fails the PSD check");

  const Sym3Eigen eig = sym3_eigen(g.matrix());
  const double trace = g.nsq_x + g.nsq_y + g.nsq_z;
  // Eigenvalues at or below the rank threshold are flattened to zero so the
  // factor lands exactly inside the estimated-rank subspace.
  std::array<double, 3> root = {0.0, 0.0, 0.0};
  for (int k = 0; k < 3; ++k)
    if (eig.values[k] > tol * trace) root[k] = std::sqrt(eig.values[k]);

  // Rows of V * sqrt(Lambda): row i reproduces vector i, G = X X^T.
  VectorTriple t;
  t.x.resize(3);
  t.y.resize(3);
  t.z.resize(3);
  for (int k = 0; k < 3; ++k) {
    t.x[k] = eig.vectors[k][0] * root[k];
    t.y[k] = eig.vectors[k][1] * root[k];
    t.z[k] = eig.vectors[k][2] * root[k];
  }
  return t;
}

VectorTriple sample_triple(const SampleConfig& cfg, std::uint64_t index) {
  Rng rng(cfg.seed, index);
  std::size_t dim = 0;
  switch (cfg.strategy) {
    case SampleStrategy::ambient_vectors:
      if (cfg.dim == 0)
        throw std::invalid_argument("sample_triple: dim must be >= 1");
      dim = cfg.dim;
      break;
    case SampleStrategy::factor_3x3:
      dim = 3;
      break;
    case SampleStrategy::boundary_rank2:
      dim = 2;
      break;
    case SampleStrategy::boundary_rank1:
      dim = 1;
      break;
  }
  VectorTriple t;
  t.x = draw_vector(rng, dim, cfg.scale_law);
  t.y = draw_vector(rng, dim, cfg.scale_law);
  t.z = draw_vector(rng, dim, cfg.scale_law);
  return t;
}

GramParams sample_gram_at(const SampleConfig& cfg, std::uint64_t index) {
  return gram_from_vectors(sample_triple(cfg, index));
}

std::vector<GramParams> sample_gram(const SampleConfig& cfg) {
  if (cfg.count == 0)
    throw std::invalid_argument("sample_gram: count must be >= 1");
  std::vector<GramParams> out;
  out.reserve(cfg.count);
  for (std::uint64_t i = 0; i < cfg.count; ++i)
    out.push_back(sample_gram_at(cfg, i));
  return out;
}

const char* to_string(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::ambient_vectors: return "ambient-vectors";
    case SampleStrategy::factor_3x3: return "factor-3x3";
    case SampleStrategy::boundary_rank2: return "boundary-rank2";
    case SampleStrategy::boundary_rank1: return "boundary-rank1";
  }
  return "?";
}

const char* to_string(ScaleLaw s) {
  return s == ScaleLaw::standard_normal ? "standard-normal" : "heavy-tail";
}

SampleStrategy strategy_from_string(const std::string& s) {
  if (s == "ambient-vectors") return SampleStrategy::ambient_vectors;
  if (s == "factor-3x3") return SampleStrategy::factor_3x3;
  if (s == "boundary-rank2") return SampleStrategy::boundary_rank2;
  if (s == "boundary-rank1") return SampleStrategy::boundary_rank1;
  throw std::invalid_argument("unknown sampling strategy: " + s);
}

ScaleLaw scale_law_from_string(const std::string& s) {
  if (s == "standard-normal" || s == "normal") return ScaleLaw::standard_normal;
  if (s == "heavy-tail" || s == "heavy") return ScaleLaw::heavy_tail;
  throw std::invalid_argument("unknown scale law: " + s);
}

}  // namespace hlawka
