#include "trimani/complex.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace trimani {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NonPureInput: return "NonPureInput";
    case Errc::DuplicateFacet: return "DuplicateFacet";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::NotAFace: return "NotAFace";
    case Errc::NotAFacet: return "NotAFacet";
    case Errc::ParseError: return "ParseError";
    case Errc::IllegalMove: return "IllegalMove";
    case Errc::InvalidWeights: return "InvalidWeights";
    case Errc::FacetsShareVertices: return "FacetsShareVertices";
    case Errc::DistanceTooSmall: return "DistanceTooSmall";
    case Errc::ResultNotManifold: return "ResultNotManifold";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::InvalidEuler: return "InvalidEuler";
    case Errc::NotPrime: return "NotPrime";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::InfeasibleTask: return "InfeasibleTask";
    case Errc::InvalidPrefix: return "InvalidPrefix";
    case Errc::PathInvalid: return "PathInvalid";
    case Errc::EndpointNotCertified: return "EndpointNotCertified";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Simplex

Simplex::Simplex(std::initializer_list<Vertex> vs) : Simplex(std::span<const Vertex>(vs.begin(), vs.size())) {}

Simplex::Simplex(std::span<const Vertex> vs) {
  if (vs.empty() || vs.size() > 4) {
    throw Error(Errc::InvalidArgument, "a simplex has 1 to 4 vertices");
  }
  std::copy(vs.begin(), vs.end(), v_.begin());
  size_ = static_cast<std::uint8_t>(vs.size());
  std::sort(v_.begin(), v_.begin() + size_);
  if (std::adjacent_find(v_.begin(), v_.begin() + size_) != v_.begin() + size_) {
    throw Error(Errc::NonPureInput, "repeated vertex in simplex");
  }
  if (v_[0] == 0) throw Error(Errc::InvalidLabel, "vertex labels are 1-based");
}

bool Simplex::contains(Vertex x) const noexcept { return std::find(begin(), end(), x) != end(); }

Simplex Simplex::without(Vertex x) const {
  Simplex out;
  for (Vertex v : *this) {
    if (v != x) out.v_[out.size_++] = v;
  }
  return out;
}

Facet Simplex::as_facet() const {
  if (size_ != 4) throw Error(Errc::NotAFacet, "simplex " + to_string() + " is not 4-element");
  return {v_[0], v_[1], v_[2], v_[3]};
}

std::string Simplex::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) out += ',';
    out += std::to_string(v_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Vertex> SubComplex::vertices() const {
  std::vector<Vertex> out;
  for (const auto& s : facets) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Packing helpers

std::uint64_t pack_edge(Vertex a, Vertex b) noexcept {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 21) | b;
}

std::uint64_t pack_triangle(Vertex a, Vertex b, Vertex c) noexcept {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 42) | (std::uint64_t{b} << 21) | c;
}

Facet sorted_facet(Facet f) noexcept {
  std::sort(f.begin(), f.end());
  return f;
}

// ---------------------------------------------------------------------------
// Index

struct Complex::Index {
  std::vector<std::vector<Vertex>> neighbors;
  std::vector<std::vector<std::uint32_t>> star;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_facets;
  std::unordered_map<std::uint64_t, std::array<std::int32_t, 2>> triangle_facets;
  std::size_t triangle_overflow = 0;  // triangles in more than two facets
};

struct IndexCache {
  std::once_flag once;
  std::unique_ptr<Complex::Index> index;
};

const Complex::Index& Complex::index() const {
  if (!cache_) {
    static const Index empty_index{};
    return empty_index;
  }
  std::call_once(cache_->once, [this] {
    auto idx = std::make_unique<Index>();
    idx->neighbors.resize(vertex_count_ + 1);
    idx->star.resize(vertex_count_ + 1);
    idx->edge_facets.reserve(facets_.size() * 3);
    idx->triangle_facets.reserve(facets_.size() * 3);
    for (std::uint32_t i = 0; i < facets_.size(); ++i) {
      const Facet& f = facets_[i];
      for (int a = 0; a < 4; ++a) {
        idx->star[f[a]].push_back(i);
        for (int b = a + 1; b < 4; ++b) {
          ++idx->edge_facets[pack_edge(f[a], f[b])];
          idx->neighbors[f[a]].push_back(f[b]);
          idx->neighbors[f[b]].push_back(f[a]);
        }
      }
      for (int skip = 0; skip < 4; ++skip) {
        Triangle t{};
        int n = 0;
        for (int a = 0; a < 4; ++a) {
          if (a != skip) t[n++] = f[a];
        }
        auto [it, inserted] = idx->triangle_facets.try_emplace(pack_triangle(t[0], t[1], t[2]),
                                                               std::array<std::int32_t, 2>{-1, -1});
        if (it->second[0] < 0) {
          it->second[0] = static_cast<std::int32_t>(i);
        } else if (it->second[1] < 0) {
          it->second[1] = static_cast<std::int32_t>(i);
        } else {
          ++idx->triangle_overflow;
        }
      }
    }
    for (auto& nb : idx->neighbors) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    cache_->index = std::move(idx);
  });
  return *cache_->index;
}

// ---------------------------------------------------------------------------
// Construction

Complex Complex::from_facets(std::span<const Facet> facets, bool relabel_labels) {
  Complex k;
  k.facets_.reserve(facets.size());
  Vertex max_label = 0;
  for (Facet f : facets) {
    f = sorted_facet(f);
    if (f[0] == 0) throw Error(Errc::InvalidLabel, "vertex labels are 1-based");
    for (int i = 0; i < 3; ++i) {
      if (f[i] == f[i + 1]) throw Error(Errc::NonPureInput, "facet with repeated vertex");
    }
    max_label = std::max(max_label, f[3]);
    k.facets_.push_back(f);
  }
  std::vector<char> used(max_label + 1, 0);
  for (const Facet& f : k.facets_) {
    for (Vertex v : f) used[v] = 1;
  }
  Vertex count = 0;
  std::vector<Vertex> map(max_label + 1, 0);
  for (Vertex v = 1; v <= max_label; ++v) {
    if (used[v]) map[v] = ++count;
  }
  if (count != max_label) {
    if (!relabel_labels) {
      throw Error(Errc::InvalidLabel, "labels must form the contiguous range 1.." + std::to_string(max_label));
    }
    for (Facet& f : k.facets_) {
      for (Vertex& v : f) v = map[v];
    }
  }
  std::sort(k.facets_.begin(), k.facets_.end());
  if (auto dup = std::adjacent_find(k.facets_.begin(), k.facets_.end()); dup != k.facets_.end()) {
    throw Error(Errc::DuplicateFacet, "facet " + Simplex(*dup).to_string() + " listed twice");
  }
  k.vertex_count_ = count;
  k.cache_ = std::make_shared<IndexCache>();
  return k;
}

Complex build_complex(std::span<const Facet> facets, bool relabel_labels) {
  if (facets.empty()) throw Error(Errc::EmptyInput, "no facets given");
  return Complex::from_facets(facets, relabel_labels);
}

Complex boundary_of_4simplex() {
  const std::vector<Facet> f{{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}};
  return Complex::from_facets(f);
}

Complex relabel(const Complex& k, std::span<const Vertex> perm) {
  std::vector<Facet> out;
  out.reserve(k.facet_count());
  for (const Facet& f : k.facets()) out.push_back({perm[f[0]], perm[f[1]], perm[f[2]], perm[f[3]]});
  return Complex::from_facets(out);
}

// ---------------------------------------------------------------------------
// Queries

bool Complex::has_facet(const Facet& f) const {
  return std::binary_search(facets_.begin(), facets_.end(), sorted_facet(f));
}

bool Complex::has_edge(Vertex a, Vertex b) const {
  if (a == b) return false;
  return index().edge_facets.contains(pack_edge(a, b));
}

bool Complex::has_triangle(Vertex a, Vertex b, Vertex c) const {
  return index().triangle_facets.contains(pack_triangle(a, b, c));
}

bool Complex::has_face(const Simplex& s) const {
  switch (s.size()) {
    case 1: return s[0] >= 1 && s[0] <= vertex_count_;
    case 2: return has_edge(s[0], s[1]);
    case 3: return has_triangle(s[0], s[1], s[2]);
    case 4: return has_facet(s.as_facet());
    default: return false;
  }
}

std::vector<Edge> Complex::edges() const {
  std::vector<Edge> out;
  const auto& nb = index().neighbors;
  for (Vertex v = 1; v <= vertex_count_; ++v) {
    for (Vertex w : nb[v]) {
      if (w > v) out.push_back({v, w});
    }
  }
  return out;
}

std::vector<Triangle> Complex::triangles() const {
  std::vector<Triangle> out;
  out.reserve(index().triangle_facets.size());
  for (const auto& [key, _] : index().triangle_facets) {
    constexpr std::uint64_t mask = (1u << 21) - 1;
    out.push_back({static_cast<Vertex>(key >> 42), static_cast<Vertex>((key >> 21) & mask),
                   static_cast<Vertex>(key & mask)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

FVector3 Complex::f_vector() const {
  const auto& idx = index();
  return {static_cast<std::int64_t>(vertex_count_), static_cast<std::int64_t>(idx.edge_facets.size()),
          static_cast<std::int64_t>(idx.triangle_facets.size()), static_cast<std::int64_t>(facets_.size())};
}

std::span<const Vertex> Complex::neighbors(Vertex v) const {
  if (v == 0 || v > vertex_count_) throw Error(Errc::NotAFace, "vertex " + std::to_string(v));
  return index().neighbors[v];
}

std::span<const std::uint32_t> Complex::star(Vertex v) const {
  if (v == 0 || v > vertex_count_) throw Error(Errc::NotAFace, "vertex " + std::to_string(v));
  return index().star[v];
}

std::vector<Facet> Complex::facets_containing(const Triangle& t) const {
  std::vector<Facet> out;
  const auto& tf = index().triangle_facets;
  if (auto it = tf.find(pack_triangle(t[0], t[1], t[2])); it != tf.end()) {
    for (std::int32_t i : it->second) {
      if (i >= 0) out.push_back(facets_[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

SubComplex Complex::link(const Simplex& s) const {
  if (s.empty() || !has_face(s)) throw Error(Errc::NotAFace, s.to_string());
  SubComplex out;
  out.dimension = 3 - static_cast<int>(s.size());
  for (std::uint32_t fi : index().star[s[0]]) {
    const Facet& f = facets_[fi];
    if (!std::includes(f.begin(), f.end(), s.begin(), s.end())) continue;
    if (s.size() == 4) {
      continue;  // the link of a facet is the empty complex
    }
    std::array<Vertex, 4> rest{};
    std::size_t n = 0;
    for (Vertex v : f) {
      if (!s.contains(v)) rest[n++] = v;
    }
    out.facets.emplace_back(std::span<const Vertex>(rest.data(), n));
  }
  std::sort(out.facets.begin(), out.facets.end());
  return out;
}

std::int64_t Complex::vertex_degree(Vertex v) const {
  return static_cast<std::int64_t>(neighbors(v).size());
}

std::int64_t Complex::edge_degree(Vertex a, Vertex b) const {
  const auto& ef = index().edge_facets;
  auto it = a == b ? ef.end() : ef.find(pack_edge(a, b));
  if (it == ef.end()) throw Error(Errc::NotAFace, "edge " + std::to_string(a) + "," + std::to_string(b));
  // In a closed pseudomanifold the link of an edge is a cycle with as many
  // vertices as facets around the edge.
  return it->second;
}

std::vector<int> Complex::distances_from(Vertex v) const {
  std::vector<int> dist(vertex_count_ + 1, -1);
  const auto& nb = index().neighbors;
  std::vector<Vertex> queue{v};
  dist[v] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    for (Vertex y : nb[x]) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// A graph given as an edge list is one cycle through all of its vertices.
bool is_single_cycle(std::span<const std::array<Vertex, 2>> edges) {
  if (edges.size() < 3) return false;
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const auto& e : edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (const auto& [v, nb] : adj) {
    if (nb.size() != 2) return false;
  }
  if (adj.size() != edges.size()) return false;
  Vertex start = adj.begin()->first;
  Vertex prev = start;
  Vertex cur = adj[start][0];
  std::size_t steps = 1;
  while (cur != start) {
    const auto& nb = adj[cur];
    Vertex next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
    ++steps;
  }
  return steps == adj.size();
}

}  // namespace

ValidationReport validate(const Complex& k) {
  ValidationReport r;
  auto violate = [&r](std::string msg) {
    if (!r.first_violation) r.first_violation = std::move(msg);
  };
  if (k.facet_count() == 0) {
    violate("empty complex");
    return r;
  }
  r.is_pure = true;
  for (const Facet& f : k.facets()) {
    if (f[0] == f[1] || f[1] == f[2] || f[2] == f[3]) {
      r.is_pure = false;
      violate("facet with repeated vertex");
    }
  }

  r.is_closed_pseudomanifold = true;
  for (const Facet& f : k.facets()) {
    for (int skip = 0; skip < 4 && r.is_closed_pseudomanifold; ++skip) {
      Triangle t{};
      int n = 0;
      for (int a = 0; a < 4; ++a) {
        if (a != skip) t[n++] = f[a];
      }
      auto count = k.facets_containing(t).size();
      // facets_containing caps at two; count overflow by scanning the star
      std::size_t full = 0;
      for (std::uint32_t fi : k.star(t[0])) {
        const Facet& g = k.facets()[fi];
        if (std::includes(g.begin(), g.end(), t.begin(), t.end())) ++full;
      }
      if (count != 2 || full != 2) {
        r.is_closed_pseudomanifold = false;
        violate("triangle " + Simplex(t).to_string() + " lies in " + std::to_string(full) + " facets");
      }
    }
  }

  auto dist = k.distances_from(1);
  r.is_connected = std::none_of(dist.begin() + 1, dist.end(), [](int d) { return d < 0; });
  if (!r.is_connected) violate("complex is disconnected");

  if (!r.is_closed_pseudomanifold) return r;

  r.all_links_spheres = true;
  for (const Edge& e : k.edges()) {
    std::vector<std::array<Vertex, 2>> cycle;
    for (const Simplex& s : k.link(Simplex(e)).facets) cycle.push_back({s[0], s[1]});
    if (!is_single_cycle(cycle)) {
      r.all_links_spheres = false;
      violate("link of edge " + Simplex(e).to_string() + " is not a cycle");
      return r;
    }
  }
  for (Vertex v = 1; v <= k.vertex_count(); ++v) {
    SubComplex lk = k.link(Simplex{v});
    std::vector<Vertex> verts = lk.vertices();
    std::map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = i;
    std::vector<std::size_t> parent(verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::set<std::uint64_t> link_edges;
    for (const Simplex& t : lk.facets) {
      for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
          link_edges.insert(pack_edge(t[a], t[b]));
          parent[find(pos[t[a]])] = find(pos[t[b]]);
        }
      }
    }
    std::size_t components = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) components += find(i) == i;
    auto euler = static_cast<std::int64_t>(verts.size()) - static_cast<std::int64_t>(link_edges.size()) +
                 static_cast<std::int64_t>(lk.facets.size());
    if (components != 1 || euler != 2) {
      r.all_links_spheres = false;
      violate("link of vertex " + std::to_string(v) + " is not a 2-sphere (components " +
              std::to_string(components) + ", euler characteristic " + std::to_string(euler) + ")");
      return r;
    }
  }
  return r;
}

void require_manifold(const Complex& k, std::string_view context) {
  auto report = validate(k);
  if (!report.is_manifold()) {
    throw Error(Errc::ResultNotManifold,
                std::string(context) + ": " + report.first_violation.value_or("not a closed 3-manifold"));
  }
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Vertex colours from two rounds of degree refinement; equal colours for
// vertices in the same automorphism orbit.
std::vector<std::uint32_t> vertex_colors(const Complex& k) {
  const Vertex n = k.vertex_count();
  std::vector<std::uint32_t> color(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) color[v] = static_cast<std::uint32_t>(k.neighbors(v).size());
  for (int round = 0; round < 2; ++round) {
    std::vector<std::vector<std::uint32_t>> signature(n + 1);
    for (Vertex v = 1; v <= n; ++v) {
      auto& sig = signature[v];
      sig.push_back(color[v]);
      std::vector<std::uint32_t> nb;
      for (Vertex w : k.neighbors(v)) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      sig.insert(sig.end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<std::uint32_t>> distinct(signature.begin() + 1, signature.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (Vertex v = 1; v <= n; ++v) {
      color[v] = static_cast<std::uint32_t>(
          std::lower_bound(distinct.begin(), distinct.end(), signature[v]) - distinct.begin());
    }
  }
  return color;
}

}  // namespace

std::string digest_of(std::span<const Facet> canonical_facets) {
  std::uint64_t h = 1469598103934665603ull;
  for (const Facet& f : canonical_facets) {
    std::string line = std::to_string(f[0]) + ' ' + std::to_string(f[1]) + ' ' + std::to_string(f[2]) + ' ' +
                       std::to_string(f[3]) + '\n';
    h = fnv1a(line, h);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CanonicalForm canonicalize(const Complex& k) {
  const auto facets = k.facets();
  const std::size_t nf = facets.size();
  if (nf == 0) throw Error(Errc::EmptyInput, "cannot canonicalize an empty complex");

  // adjacency[i][j]: facet across the triangle of facet i omitting position j
  std::vector<std::array<std::int32_t, 4>> adjacency(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    for (int j = 0; j < 4; ++j) {
      Triangle t{};
      int n = 0;
      for (int a = 0; a < 4; ++a) {
        if (a != j) t[n++] = facets[i][a];
      }
      adjacency[i][j] = -1;
      for (const Facet& g : k.facets_containing(t)) {
        if (g != facets[i]) {
          adjacency[i][j] = static_cast<std::int32_t>(
              std::lower_bound(facets.begin(), facets.end(), g) - facets.begin());
        }
      }
    }
  }

  const auto color = vertex_colors(k);
  // Starting flags: orderings of a facet whose colour tuple is maximal.
  std::array<std::uint32_t, 4> best_key{};
  std::vector<std::pair<std::size_t, Facet>> flags;
  for (std::size_t i = 0; i < nf; ++i) {
    Facet order = facets[i];
    std::sort(order.begin(), order.end());
    do {
      std::array<std::uint32_t, 4> key{color[order[0]], color[order[1]], color[order[2]], color[order[3]]};
      if (flags.empty() || key > best_key) {
        best_key = key;
        flags.clear();
      }
      if (key == best_key) flags.emplace_back(i, order);
    } while (std::next_permutation(order.begin(), order.end()));
  }

  const Vertex n = k.vertex_count();
  std::vector<Facet> best;
  std::vector<Facet> candidate(nf);
  std::vector<Vertex> label(n + 1);
  std::vector<char> visited(nf);
  std::vector<std::size_t> queue;
  queue.reserve(nf);
  for (const auto& [start, order] : flags) {
    std::fill(label.begin(), label.end(), 0);
    std::fill(visited.begin(), visited.end(), 0);
    queue.clear();
    Vertex next = 1;
    for (Vertex v : order) label[v] = next++;
    visited[start] = 1;
    queue.push_back(start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t g = queue[head];
      const Facet& fg = facets[g];
      // visit ridges starting with the one omitting the largest new label
      std::array<int, 4> pos{0, 1, 2, 3};
      std::sort(pos.begin(), pos.end(), [&](int a, int b) { return label[fg[a]] > label[fg[b]]; });
      for (int p : pos) {
        const std::int32_t h = adjacency[g][p];
        if (h < 0) throw Error(Errc::InvalidArgument, "canonicalize needs a closed pseudomanifold");
        if (visited[h]) continue;
        visited[h] = 1;
        for (Vertex v : facets[h]) {
          if (!label[v]) label[v] = next++;
        }
        queue.push_back(static_cast<std::size_t>(h));
      }
    }
    if (queue.size() != nf) throw Error(Errc::InvalidArgument, "canonicalize needs a strongly connected complex");
    for (std::size_t i = 0; i < nf; ++i) {
      candidate[i] = sorted_facet({label[facets[i][0]], label[facets[i][1]], label[facets[i][2]], label[facets[i][3]]});
    }
    std::sort(candidate.begin(), candidate.end());
    if (best.empty() || candidate < best) best = candidate;
  }
  CanonicalForm out;
  out.digest = digest_of(best);
  out.facets = std::move(best);
  return out;
}

// ---------------------------------------------------------------------------
// Barycentric subdivision

Complex barycentric_subdivide(const Complex& k) {
  // one new vertex per face; labels ordered by (dimension, lexicographic face)
  std::map<std::vector<Vertex>, Vertex> face_label;
  std::vector<std::vector<Vertex>> faces;
  for (const Facet& f : k.facets()) {
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::vector<Vertex> face;
      for (int a = 0; a < 4; ++a) {
        if (mask & (1u << a)) face.push_back(f[a]);
      }
      faces.push_back(std::move(face));
    }
  }
  std::sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  Vertex next = 1;
  for (const auto& face : faces) face_label.emplace(face, next++);

  std::vector<Facet> out;
  out.reserve(k.facet_count() * 24);
  for (const Facet& f : k.facets()) {
    Facet order = f;
    do {
      Facet chain{};
      std::vector<Vertex> face;
      for (int a = 0; a < 4; ++a) {
        face.push_back(order[a]);
        std::vector<Vertex> sorted = face;
        std::sort(sorted.begin(), sorted.end());
        chain[a] = face_label.at(sorted);
      }
      out.push_back(chain);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return Complex::from_facets(out);
}

}  // namespace trimani
