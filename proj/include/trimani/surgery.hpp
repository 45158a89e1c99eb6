#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "trimani/complex.hpp"

namespace trimani {

/// Identification of facet_a with facet_b: facet_a[i] is glued to pairing[i],
/// a vertex of facet_b. The orientation tag is carried as metadata only.
struct FacetMatching {
  Facet facet_a{};
  Facet facet_b{};
  std::array<Vertex, 4> pairing{};
  int orientation_tag = +1;

  /// The pairing facet_a[i] <-> facet_b[i] of the sorted facets.
  static FacetMatching identity(const Facet& a, const Facet& b, int orientation_tag = +1);
  /// The identity pairing with the last two vertices of facet_b swapped.
  static FacetMatching reversed(const Facet& a, const Facet& b);
};

/// Replaces `facet` by the cone from the new vertex f0+1 over its boundary.
Complex subdivide(const Complex& k, const Facet& facet);

/// K1 # K2: K2's vertices are renamed into K1's label space (matched vertices
/// take the facet_a labels, the rest follow f0(K1) in increasing order), the
/// identified facet is dropped from both sides.
Complex connected_sum(const Complex& k1, const Complex& k2, const FacetMatching& matching);

/// Identifies two vertex-disjoint facets of one complex, removes both, and
/// compacts the labels. Every paired vertex couple must lie at 1-skeleton
/// distance >= 3.
Complex add_handle(const Complex& k, const FacetMatching& matching);

/// Facet pairs all of whose cross vertex pairs are at distance >= min_distance,
/// so that every pairing is admissible; capped at `limit` results.
std::vector<std::pair<Facet, Facet>> far_facet_pairs(const Complex& k, int min_distance = 3, std::size_t limit = 16);

/// All 4-sets of vertices that are not facets although all their triangles are.
std::vector<Facet> missing_facets(const Complex& k);

struct SplitResult {
  /// True when the boundary of the missing facet separates the complex.
  bool separating = false;
  /// The two capped pieces when separating; empty otherwise (a handle).
  std::vector<Complex> pieces;
};

/// Cuts along the boundary sphere of a missing facet and caps both sides.
SplitResult split_at_missing_facet(const Complex& k, const Facet& sigma);

}  // namespace trimani
