#pragma once

// Lexicographic facet-by-facet enumeration of closed 3-manifolds with a
// prescribed number of vertices and edge range, pruned by Walkup's local
// conditions for g2-irreducible triangulations.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "trimani/complex.hpp"
#include "trimani/facevec.hpp"
#include "trimani/homology.hpp"
#include "trimani/link_types.hpp"

namespace trimani {

enum class Rule : unsigned {
  L10_1 = 1U << 0,     // edge links have at least 4 vertices
  L10_2 = 1U << 1,     // Lk u ∩ Lk v − Lk(u,v) is nonempty
  L10_4 = 1U << 2,     // vertex links have no empty triangles
  L11_1 = 1U << 3,     // single-vertex W(u,v) forces deg(u,w) >= deg(u,v)
  L10_7 = 1U << 4,     // reduced-link types and degree floors
  F1_BOUND = 1U << 5,  // backtrack when the f1 lower bound exceeds the range
};

class RuleSet {
 public:
  constexpr RuleSet() = default;
  constexpr explicit RuleSet(unsigned bits) : bits_(bits) {}
  static constexpr RuleSet all() { return RuleSet(0x3FU); }
  static constexpr RuleSet none() { return RuleSet(0U); }

  constexpr bool has(Rule r) const { return (bits_ & static_cast<unsigned>(r)) != 0; }
  constexpr RuleSet with(Rule r) const { return RuleSet(bits_ | static_cast<unsigned>(r)); }
  constexpr RuleSet without(Rule r) const { return RuleSet(bits_ & ~static_cast<unsigned>(r)); }
  constexpr unsigned bits() const { return bits_; }

  /// Comma-separated names, e.g. "L10_1,L10_2"; "all" and "none" accepted.
  static RuleSet parse(std::string_view text);
  std::string to_string() const;

  friend constexpr bool operator==(RuleSet, RuleSet) = default;

 private:
  unsigned bits_ = 0;
};

/// How Lk u ∩ Lk v − Lk(u,v) is read: as a set of simplices (the literal
/// statement) or as the set of its vertices only.
enum class IntersectionReading { Simplices, Vertices };

struct EnumerationTask {
  int f0 = 0;
  std::int64_t f1_lo = 0;
  std::int64_t f1_hi = 0;
  std::optional<std::int64_t> g2_cap;
  RuleSet rules = RuleSet::all();
  IntersectionReading reading = IntersectionReading::Simplices;
  /// Partial facet list: the complete star of vertex 1 followed by facets in
  /// the order the search adds them.
  std::optional<std::vector<Facet>> prefix;

  /// Stable textual identifier used as provenance.
  std::string id() const;
};

struct CensusRecord {
  std::vector<Facet> facets;  // canonical
  std::string digest;
  FVector3 f{};
  GVector g;
  HomologyProfile homology;
  std::size_t missing_facet_count = 0;
  std::optional<std::string> manifold_name;
  std::string provenance;

  Complex complex() const { return Complex::from_facets(facets); }
};

struct EnumerationStats {
  std::uint64_t nodes = 0;
  std::size_t records = 0;
  std::size_t records_without_missing_facets = 0;
};

struct EnumerationResult {
  /// Sorted by digest, pairwise non-isomorphic.
  std::vector<CensusRecord> records;
  EnumerationStats stats;
};

/// The effective edge range after intersecting with binom(f0,2), the g2 cap
/// and (when a cap is set) the mu filter; throws InfeasibleTask when empty.
std::pair<std::int64_t, std::int64_t> effective_f1_range(const EnumerationTask& task);

EnumerationResult enumerate(const EnumerationTask& task);

/// Streams raw (canonical, possibly repeated) facet lists as they are found.
/// Returns the number of search nodes visited.
std::uint64_t enumerate_raw(const EnumerationTask& task,
                            const std::function<void(const std::vector<Facet>&)>& sink);

/// Frontier prefixes after `depth` facets beyond the star of vertex 1; the
/// subtasks over these prefixes partition the search of `task`.
std::vector<std::vector<Facet>> split_prefixes(const EnumerationTask& task, int depth);

/// Runs the subtasks of split_prefixes on `jobs` threads and merges them.
EnumerationResult enumerate_parallel(const EnumerationTask& task, int jobs, int split_depth);

/// Builds a census record (canonical form, vectors, homology, missing facets).
CensusRecord make_record(const Complex& k, std::string provenance);

// ---------------------------------------------------------------------------
// Rule predicates on partial complexes. Each returns true to keep and false
// to prune; a rule whose preconditions are not yet decidable keeps.

/// A facet list that need not be closed. A vertex is finished when every
/// triangle through it lies in two facets; an edge likewise.
class PartialComplex {
 public:
  explicit PartialComplex(std::span<const Facet> facets);
  static PartialComplex from(const Complex& k) { return PartialComplex(k.facets()); }

  Vertex max_label() const { return max_label_; }
  bool vertex_finished(Vertex v) const;
  bool edge_finished(Vertex a, Vertex b) const;
  bool has_edge(Vertex a, Vertex b) const;
  bool has_triangle(Vertex a, Vertex b, Vertex c) const;
  bool has_facet(Facet f) const;
  std::vector<Vertex> neighbors(Vertex v) const;
  /// Number of vertices currently in the link of v (resp. of the edge).
  int vertex_degree(Vertex v) const;
  int edge_degree(Vertex a, Vertex b) const;
  std::size_t edge_count() const { return edge_facets_.size(); }

 private:
  Vertex max_label_ = 0;
  std::set<Facet> facets_;
  std::map<std::uint64_t, int> triangle_count_;
  std::map<std::uint64_t, int> edge_facets_;
  std::vector<std::set<Vertex>> neighbors_;
  std::map<std::uint64_t, std::set<Vertex>> edge_links_;
};

bool prune_edge_link(const PartialComplex& k, Edge e);
bool prune_link_intersection(const PartialComplex& k, Edge e,
                             IntersectionReading reading = IntersectionReading::Simplices);
bool prune_empty_triangle_in_link(const PartialComplex& k, Vertex u);
bool prune_unique_w(const PartialComplex& k, Edge e, IntersectionReading reading = IntersectionReading::Simplices);

/// Catalogue type of L_v u; requires deg(u) in 6..9 (DegreeOutOfRange
/// otherwise) and a finished u.
std::optional<LinkType> classify_reduced_link(const PartialComplex& k, Vertex u, Vertex v);

/// Largest lower bound on deg(v) implied by the finished vertex u.
int degree_floor(const PartialComplex& k, Vertex u, Vertex v);

/// ceil(sum of degree lower bounds / 2) over labels 1..f0: finished vertices
/// count their degree, others max(current degree, base_floor, floors
/// imposed by finished neighbours).
std::int64_t f1_floor(const PartialComplex& k, int f0, int base_floor);

/// Triangulated 2-spheres on labels 1..m with every vertex degree >= min_degree,
/// optionally without empty triangles, one per isomorphism class, sorted.
const std::vector<std::vector<Triangle>>& sphere_catalog(int m, int min_degree, bool forbid_empty_triangles);

}  // namespace trimani
