#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hlawka/sym3.hpp"

namespace hlawka {

// Default relative tolerance. All compared quantities are homogeneous
// polynomials in the vectors, so tolerances are always scaled by
// max(1, largest squared norm) raised to the degree of the quantity.
inline constexpr double kDefaultTol = 1e-9;

// Three vectors of a common finite dimension. The ground-truth
// representation every inequality can be evaluated against.
struct VectorTriple {
  std::vector<double> x, y, z;

  std::size_t dim() const { return x.size(); }
  // Throws std::invalid_argument on dimension mismatch, empty vectors,
  // or non-finite coordinates.
  void validate() const;
};

// The six scalars of the 3x3 Gram matrix of (x, y, z):
// squared norms on the diagonal, inner products p = <x,y>, q = <x,z>,
// r = <y,z> off it. The reduced representation all scalar forms consume.
struct GramParams {
  double nsq_x = 0.0, nsq_y = 0.0, nsq_z = 0.0;
  double p = 0.0, q = 0.0, r = 0.0;

  // Natural scale for relative tolerances: max(1, nsq_x, nsq_y, nsq_z).
  double scale() const;
  // det G = nsq_x*nsq_y*nsq_z + 2pqr - nsq_x r^2 - nsq_y q^2 - nsq_z p^2.
  double det() const;
  // Principal 2x2 minors {nsq_x*nsq_y - p^2, nsq_x*nsq_z - q^2,
  // nsq_y*nsq_z - r^2}.
  std::array<double, 3> minors2x2() const;
  Mat3x3 matrix() const;
};

struct PsdReport {
  std::array<double, 3> minors_2x2{};
  double det = 0.0;
  bool is_psd = false;
  int rank_estimate = 0;
};

enum class ScaleLaw { standard_normal, heavy_tail };

enum class SampleStrategy {
  ambient_vectors,  // three d-dimensional coordinate vectors
  factor_3x3,       // Gram parameters of B^T B for a random 3x3 B
  boundary_rank2,   // vectors in dimension 2: det G = 0 by construction
  boundary_rank1,   // vectors in dimension 1: rank <= 1 by construction
};

struct SampleConfig {
  SampleStrategy strategy = SampleStrategy::ambient_vectors;
  std::size_t dim = 3;  // ambient_vectors only
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
  ScaleLaw scale_law = ScaleLaw::standard_normal;
};

// The six pairwise inner products / squared norms, by summing coordinate
// products. Throws std::invalid_argument on dimension mismatch.
GramParams gram_from_vectors(const VectorTriple& t);

// Positive semidefiniteness via principal minors: all diagonal entries,
// all three 2x2 principal minors and det G nonnegative up to the scaled
// tolerance. rank_estimate counts eigenvalues above tol * trace(G)
// (independent Jacobi eigendecomposition). Throws if tol <= 0.
PsdReport psd_check(const GramParams& g, double tol = kDefaultTol);

// Factors a PSD Gram matrix back into three vectors of dimension 3 via a
// symmetric eigendecomposition, so rank-deficient boundary points come out
// inside a subspace of the estimated rank instead of tripping a pivot.
// Throws std::domain_error if g fails psd_check at tol.
VectorTriple realize_vectors(const GramParams& g, double tol = kDefaultTol);

// Deterministic sample streams: the value at (cfg, index) never depends on
// evaluation order, so index ranges can be split across workers freely.
VectorTriple sample_triple(const SampleConfig& cfg, std::uint64_t index);
GramParams sample_gram_at(const SampleConfig& cfg, std::uint64_t index);
std::vector<GramParams> sample_gram(const SampleConfig& cfg);

const char* to_string(SampleStrategy s);
const char* to_string(ScaleLaw s);
SampleStrategy strategy_from_string(const std::string& s);
ScaleLaw scale_law_from_string(const std::string& s);

}  // namespace hlawka
