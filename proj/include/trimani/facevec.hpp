#pragma once

// Exact face-number algebra for triangulated d-manifolds: f-, h- and
// g-vectors, the surgery deltas of the S/H/# operations, and the closed-form
// vertex and g2 bounds.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "trimani/complex.hpp"

namespace trimani {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxAlgebraDimension = 10;

/// (f_{-1} = 1, f_0, ..., f_d).
struct FaceVector {
  int d = 3;
  std::vector<Integer> counts;

  /// f_i for -1 <= i <= d.
  const Integer& f(int i) const { return counts.at(static_cast<std::size_t>(i + 1)); }
  friend bool operator==(const FaceVector&, const FaceVector&) = default;
};

/// (h_0, ..., h_{d+1}).
struct HVector {
  std::vector<Integer> entries;
  friend bool operator==(const HVector&, const HVector&) = default;
};

/// (g_0, ..., g_{floor((d+1)/2)}).
struct GVector {
  std::vector<Integer> entries;
  const Integer& operator[](std::size_t i) const { return entries.at(i); }
  friend bool operator==(const GVector&, const GVector&) = default;
};

/// Builds a face vector from (f_0, ..., f_d); f_{-1} = 1 is prepended.
FaceVector make_face_vector(int d, std::vector<Integer> f0_to_fd);

/// The complete 3-dimensional f-vector (f0, f1, 2f1-2f0, f1-f0).
FaceVector f_from_pair(const Integer& f0, const Integer& f1);
FaceVector f_from_complex(const Complex& k);

HVector h_vector(const FaceVector& f);
GVector g_vector(const FaceVector& f);

/// Convenience for the d = 3 g-vector of a complex: (1, f0-5, f1-4f0+10).
GVector g_vector(const Complex& k);

enum class SurgeryOp { Subdivide, Handle, ConnectedSum };

struct SurgeryPrediction {
  FaceVector f;
  GVector g;
  /// g(result) minus g(first operand), entry by entry.
  std::vector<Integer> g_delta;
};

/// Face and g-vector of SK, HK or K1 # K2 from the operands' f-vectors.
SurgeryPrediction predict_surgery(const FaceVector& f, SurgeryOp op, const std::optional<FaceVector>& other = {});

/// binom(d+2, 2) * beta1, the lower bound on g2 for K-orientable manifolds.
Integer g2_lower_bound(int d, const Integer& beta1);

/// ceil(((2d+3) + sqrt(1 + 4(d+1)(d+2) beta1)) / 2).
Integer min_vertices(int d, const Integer& beta1);

/// ceil((7 + sqrt(49 - 24 chi)) / 2) for a surface of Euler characteristic chi.
Integer heawood_min_vertices(const Integer& chi);

struct TightNeighborlyRow {
  Integer f0;
  Integer k;
  friend bool operator==(const TightNeighborlyRow&, const TightNeighborlyRow&) = default;
};

/// The four parameter families for m = 0..m_max, dropping rows with f0 < 5.
std::vector<TightNeighborlyRow> tight_neighborly_rows(int m_max);

/// f1 - (9/2) f0; a g2-irreducible triangulation has mu > 1/2.
Rational mu_statistic(const FaceVector& f);
bool passes_mu_filter(const FaceVector& f);

/// Integer pairs (f0, f1) with f1 > 9/2 f0 + 1/2, f1 - 4 f0 + 10 <= cap and
/// f1 <= binom(f0, 2), in increasing order.
std::vector<std::pair<std::int64_t, std::int64_t>> admissible_pairs(std::int64_t g2_cap);

Integer binomial(std::int64_t n, std::int64_t k);
/// Floor square root, verified so that r^2 <= x < (r+1)^2.
Integer isqrt(const Integer& x);

}  // namespace trimani
