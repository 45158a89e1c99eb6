#pragma once

// Reduced vertex links: the 1-skeleton of Lk u with a neighbour v and its
// incident edges removed. For vertices of degree 6..9 in a g2-irreducible
// triangulation this graph is one of twenty catalogued disks.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trimani {

/// Simple graph on at most 32 vertices stored as adjacency bitmasks.
struct SmallGraph {
  int n = 0;
  std::array<std::uint32_t, 32> adj{};

  void add_edge(int a, int b) {
    adj[a] |= 1U << b;
    adj[b] |= 1U << a;
  }
  bool has_edge(int a, int b) const { return (adj[a] >> b) & 1U; }
  int degree(int a) const { return __builtin_popcount(adj[a]); }
  int edge_count() const;
};

bool isomorphic(const SmallGraph& a, const SmallGraph& b);

struct LinkType {
  std::string name;
  /// Number of boundary vertices, which equals the degree of the removed edge.
  int boundary = 0;
  SmallGraph graph;
};

/// The catalogue, parsed once from the embedded data file.
std::span<const LinkType> link_type_catalog();

/// Parses catalogue text: `name nverts nboundary a-b a-b ...` per line.
std::vector<LinkType> parse_link_types(std::string_view text);

/// Index into link_type_catalog() of the type isomorphic to `reduced`, if any.
std::optional<std::size_t> classify_graph(const SmallGraph& reduced);

/// Lower bound on deg(v) implied by a reduced link of the given type.
int type_degree_floor(std::string_view type_name);

/// Lower bound on deg(v) from the edge-degree rules, given deg(u) and deg(u,v).
int edge_degree_floor(int degree_u, int edge_degree_uv);

}  // namespace trimani
