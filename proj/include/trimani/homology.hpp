#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trimani/complex.hpp"
#include "trimani/facevec.hpp"

namespace trimani {

/// Sparse integer matrix in row-major triplet form. Scalar is any exact
/// integer type (machine or arbitrary precision).
template <class Scalar>
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// rows[r] holds (column, value) pairs, sorted by column, no zero values.
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> entries;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r) {}

  /// Appends or overwrites a single entry.
  void set(std::size_t r, std::size_t c, Scalar value);
  Scalar get(std::size_t r, std::size_t c) const;
  std::size_t nonzeros() const;
};

using IntegerMatrix = SparseMatrix<Integer>;

struct SmithResult {
  /// Positive diagonal d1 | d2 | ... | d_rank.
  std::vector<Integer> diagonal;
  std::size_t rank = 0;
};

/// Smith normal form diagonal. Unit pivots are eliminated sparsely first; the
/// remaining block (usually tiny) is reduced densely with minimal-absolute-value
/// pivoting.
template <class Scalar>
SmithResult smith_normal_form(SparseMatrix<Scalar> m);

extern template SmithResult smith_normal_form<Integer>(SparseMatrix<Integer>);
extern template SmithResult smith_normal_form<std::int64_t>(SparseMatrix<std::int64_t>);

/// Matrix of the simplicial boundary map from k-faces (columns) to
/// (k-1)-faces (rows), both bases sorted lexicographically, 1 <= k <= 3.
IntegerMatrix boundary_matrix(const Complex& k, int dim);

struct HomologyGroup {
  std::int64_t betti = 0;
  /// Invariant factors >= 2, each dividing the next.
  std::vector<Integer> torsion;

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyProfile {
  std::array<HomologyGroup, 4> groups;

  /// e.g. "Z, Z_2, 0, Z"; repeated factors print as Z^2 or Z_2^2.
  std::string to_string(std::string_view separator = ", ") const;
  /// Compact form used as a ledger key, e.g. "Z,Z_2,0,Z".
  std::string key() const { return to_string(","); }
  static HomologyProfile parse(std::string_view text);

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

HomologyProfile integral_homology(const Complex& k);

/// Betti numbers with Z_p coefficients, dimensions 0..3.
std::array<std::int64_t, 4> betti_mod_p(const Complex& k, int p);

/// Coherent facet orientation by propagation across shared triangles.
bool orientable(const Complex& k);

bool is_prime(std::int64_t p);

}  // namespace trimani
