#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trimani/error.hpp"

namespace trimani {

/// 1-based vertex label.
using Vertex = std::uint32_t;
using Edge = std::array<Vertex, 2>;
using Triangle = std::array<Vertex, 3>;
using Facet = std::array<Vertex, 4>;

/// A face of a 3-dimensional complex: 1 to 4 distinct labels kept sorted.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<Vertex> vs);
  explicit Simplex(std::span<const Vertex> vs);
  template <std::size_t N>
  explicit Simplex(const std::array<Vertex, N>& vs) : Simplex(std::span<const Vertex>(vs)) {}

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  Vertex operator[](std::size_t i) const noexcept { return v_[i]; }
  const Vertex* begin() const noexcept { return v_.data(); }
  const Vertex* end() const noexcept { return v_.data() + size_; }
  bool contains(Vertex x) const noexcept;

  /// The simplex with `x` removed (no-op when absent).
  Simplex without(Vertex x) const;
  Facet as_facet() const;
  std::string to_string() const;

  friend bool operator==(const Simplex& a, const Simplex& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept;

 private:
  std::array<Vertex, 4> v_{};
  std::uint8_t size_ = 0;
};

/// A pure lower-dimensional complex returned by link queries.
struct SubComplex {
  int dimension = -1;
  std::vector<Simplex> facets;

  std::vector<Vertex> vertices() const;
};

struct ValidationReport {
  bool is_pure = false;
  bool is_closed_pseudomanifold = false;
  bool is_connected = false;
  bool all_links_spheres = false;
  std::optional<std::string> first_violation;

  bool is_manifold() const noexcept {
    return is_pure && is_closed_pseudomanifold && is_connected && all_links_spheres;
  }
};

using FVector3 = std::array<std::int64_t, 4>;

/// Closed 3-dimensional simplicial complex stored as a sorted set of facets on
/// the labels 1..f0. Instances are immutable; incidence indices are built on
/// first use and shared between copies.
class Complex {
 public:
  Complex() = default;

  /// Builds a complex from raw facets. With `relabel` the used labels are
  /// compacted to 1..f0 preserving their order; otherwise every label 1..max
  /// must occur.
  static Complex from_facets(std::span<const Facet> facets, bool relabel = false);

  Vertex vertex_count() const noexcept { return vertex_count_; }
  std::size_t facet_count() const noexcept { return facets_.size(); }
  std::span<const Facet> facets() const noexcept { return facets_; }

  bool has_facet(const Facet& f) const;
  bool has_face(const Simplex& s) const;
  bool has_edge(Vertex a, Vertex b) const;
  bool has_triangle(Vertex a, Vertex b, Vertex c) const;

  std::vector<Edge> edges() const;
  std::vector<Triangle> triangles() const;
  FVector3 f_vector() const;

  /// Sorted neighbours of `v` in the 1-skeleton.
  std::span<const Vertex> neighbors(Vertex v) const;
  /// Indices into facets() of the facets containing `v`.
  std::span<const std::uint32_t> star(Vertex v) const;
  /// Facets containing the triangle (0, 1 or 2 of them).
  std::vector<Facet> facets_containing(const Triangle& t) const;

  SubComplex link(const Simplex& s) const;
  std::int64_t vertex_degree(Vertex v) const;
  std::int64_t edge_degree(Vertex a, Vertex b) const;

  /// Breadth-first distances in the 1-skeleton from `v` (index 0 unused,
  /// unreachable vertices get -1).
  std::vector<int> distances_from(Vertex v) const;

  friend bool operator==(const Complex& a, const Complex& b) noexcept {
    return a.vertex_count_ == b.vertex_count_ && a.facets_ == b.facets_;
  }

 private:
  struct Index;
  friend struct IndexCache;
  const Index& index() const;

  Vertex vertex_count_ = 0;
  std::vector<Facet> facets_;
  std::shared_ptr<struct IndexCache> cache_;
};

/// Validating constructor for the public API: rejects empty input, facets
/// with repeated labels and duplicate facets.
Complex build_complex(std::span<const Facet> facets, bool relabel = false);

ValidationReport validate(const Complex& k);

/// Throws ResultNotManifold (with the first violation) unless `k` is a
/// connected closed 3-manifold triangulation.
void require_manifold(const Complex& k, std::string_view context);

struct CanonicalForm {
  std::vector<Facet> facets;
  /// 16 hex digits of FNV-1a over the canonical facet list.
  std::string digest;
};

/// Isomorphism-invariant relabeling. Two strongly connected complexes are
/// isomorphic iff their canonical facet lists coincide.
CanonicalForm canonicalize(const Complex& k);
std::string digest_of(std::span<const Facet> canonical_facets);

/// Applies `perm` (perm[old] = new, index 0 unused) to every facet.
Complex relabel(const Complex& k, std::span<const Vertex> perm);

Complex barycentric_subdivide(const Complex& k);

/// The boundary of the 4-simplex on labels 1..5.
Complex boundary_of_4simplex();

std::uint64_t pack_edge(Vertex a, Vertex b) noexcept;
std::uint64_t pack_triangle(Vertex a, Vertex b, Vertex c) noexcept;
Facet sorted_facet(Facet f) noexcept;

}  // namespace trimani
