#include "trimani/surgery.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace trimani {

namespace {

void require_facet(const Complex& k, const Facet& f, const char* which) {
  if (!k.has_facet(sorted_facet(f))) {
    throw Error(Errc::NotAFacet, std::string(which) + " " + Simplex(f).to_string() + " is not a facet");
  }
}

void require_bijection(const FacetMatching& m) {
  auto a = sorted_facet(m.facet_b);
  auto b = m.pairing;
  std::sort(b.begin(), b.end());
  if (a != b) throw Error(Errc::InvalidArgument, "pairing is not a bijection onto facet_b");
}

std::array<Triangle, 4> boundary_triangles(const Facet& f) {
  return {{{f[1], f[2], f[3]}, {f[0], f[2], f[3]}, {f[0], f[1], f[3]}, {f[0], f[1], f[2]}}};
}

}  // namespace

FacetMatching FacetMatching::identity(const Facet& a, const Facet& b, int tag) {
  FacetMatching m;
  m.facet_a = sorted_facet(a);
  m.facet_b = sorted_facet(b);
  m.pairing = m.facet_b;
  m.orientation_tag = tag;
  return m;
}

FacetMatching FacetMatching::reversed(const Facet& a, const Facet& b) {
  FacetMatching m = identity(a, b, -1);
  std::swap(m.pairing[2], m.pairing[3]);
  return m;
}

Complex subdivide(const Complex& k, const Facet& facet) {
  const Facet f = sorted_facet(facet);
  require_facet(k, f, "facet");
  const Vertex x = k.vertex_count() + 1;
  std::vector<Facet> out;
  out.reserve(k.facet_count() + 3);
  for (const auto& g : k.facets()) {
    if (g != f) out.push_back(g);
  }
  for (const auto& t : boundary_triangles(f)) out.push_back({t[0], t[1], t[2], x});
  return Complex::from_facets(out);
}

Complex connected_sum(const Complex& k1, const Complex& k2, const FacetMatching& m) {
  require_facet(k1, m.facet_a, "facet_a");
  require_facet(k2, m.facet_b, "facet_b");
  require_bijection(m);
  const Facet a = sorted_facet(m.facet_a);
  std::vector<Vertex> rename(k2.vertex_count() + 1, 0);
  for (int i = 0; i < 4; ++i) rename[m.pairing[i]] = m.facet_a[i];
  Vertex next = k1.vertex_count() + 1;
  for (Vertex v = 1; v <= k2.vertex_count(); ++v) {
    if (rename[v] == 0) rename[v] = next++;
  }
  std::vector<Facet> out;
  out.reserve(k1.facet_count() + k2.facet_count() - 2);
  for (const auto& f : k1.facets()) {
    if (f != a) out.push_back(f);
  }
  const Facet b = sorted_facet(m.facet_b);
  for (const auto& f : k2.facets()) {
    if (f == b) continue;
    out.push_back(sorted_facet({rename[f[0]], rename[f[1]], rename[f[2]], rename[f[3]]}));
  }
  Complex result = build_complex(out);
  require_manifold(result, "connected sum");
  return result;
}

Complex add_handle(const Complex& k, const FacetMatching& m) {
  require_facet(k, m.facet_a, "facet_a");
  require_facet(k, m.facet_b, "facet_b");
  require_bijection(m);
  for (Vertex x : m.facet_a) {
    if (std::find(m.facet_b.begin(), m.facet_b.end(), x) != m.facet_b.end()) {
      throw Error(Errc::FacetsShareVertices, "facets share vertex " + std::to_string(x));
    }
  }
  for (int i = 0; i < 4; ++i) {
    const auto dist = k.distances_from(m.facet_a[i]);
    const int d = dist[m.pairing[i]];
    if (d >= 0 && d < 3) {
      throw Error(Errc::DistanceTooSmall, "paired vertices " + std::to_string(m.facet_a[i]) + " and " +
                                              std::to_string(m.pairing[i]) + " are at distance " +
                                              std::to_string(d));
    }
  }
  std::vector<Vertex> rename(k.vertex_count() + 1, 0);
  for (Vertex v = 1; v <= k.vertex_count(); ++v) rename[v] = v;
  for (int i = 0; i < 4; ++i) rename[m.pairing[i]] = m.facet_a[i];
  const Facet a = sorted_facet(m.facet_a);
  const Facet b = sorted_facet(m.facet_b);
  std::vector<Facet> out;
  for (const auto& f : k.facets()) {
    if (f == a || f == b) continue;
    Facet g{rename[f[0]], rename[f[1]], rename[f[2]], rename[f[3]]};
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end()) {
      throw Error(Errc::ResultNotManifold, "identification collapses facet " + Simplex(f).to_string());
    }
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(Errc::ResultNotManifold, "identification creates a duplicate facet");
  }
  Complex result = Complex::from_facets(out, true);
  require_manifold(result, "handle addition");
  return result;
}

std::vector<std::pair<Facet, Facet>> far_facet_pairs(const Complex& k, int min_distance, std::size_t limit) {
  std::vector<std::vector<int>> dist(k.vertex_count() + 1);
  for (Vertex v = 1; v <= k.vertex_count(); ++v) dist[v] = k.distances_from(v);
  std::vector<std::pair<Facet, Facet>> out;
  const auto facets = k.facets();
  for (std::size_t i = 0; i < facets.size() && out.size() < limit; ++i) {
    for (std::size_t j = i + 1; j < facets.size() && out.size() < limit; ++j) {
      bool ok = true;
      for (int s = 0; s < 16 && ok; ++s) {
        const int d = dist[facets[i][s / 4]][facets[j][s % 4]];
        ok = d < 0 || d >= min_distance;
      }
      if (ok) out.emplace_back(facets[i], facets[j]);
    }
  }
  return out;
}

std::vector<Facet> missing_facets(const Complex& k) {
  std::vector<Facet> out;
  for (const auto& t : k.triangles()) {
    for (Vertex d : k.neighbors(t[2])) {
      if (d <= t[2]) continue;
      if (k.has_triangle(t[0], t[1], d) && k.has_triangle(t[0], t[2], d) && k.has_triangle(t[1], t[2], d) &&
          !k.has_facet({t[0], t[1], t[2], d})) {
        out.push_back({t[0], t[1], t[2], d});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SplitResult split_at_missing_facet(const Complex& k, const Facet& sigma_in) {
  const Facet sigma = sorted_facet(sigma_in);
  const auto missing = missing_facets(k);
  if (!std::binary_search(missing.begin(), missing.end(), sigma)) {
    throw Error(Errc::InvalidArgument, Simplex(sigma).to_string() + " is not a missing facet");
  }
  std::set<std::uint64_t> cut;
  for (const auto& t : boundary_triangles(sigma)) cut.insert(pack_triangle(t[0], t[1], t[2]));

  const auto facets = k.facets();
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_triangle;
  for (std::uint32_t i = 0; i < facets.size(); ++i) {
    for (const auto& t : boundary_triangles(facets[i])) by_triangle[pack_triangle(t[0], t[1], t[2])].push_back(i);
  }
  std::vector<int> component(facets.size(), -1);
  int count = 0;
  for (std::uint32_t s = 0; s < facets.size(); ++s) {
    if (component[s] >= 0) continue;
    component[s] = count;
    std::deque<std::uint32_t> queue{s};
    while (!queue.empty()) {
      const auto i = queue.front();
      queue.pop_front();
      for (const auto& t : boundary_triangles(facets[i])) {
        const auto key = pack_triangle(t[0], t[1], t[2]);
        if (cut.contains(key)) continue;
        for (auto j : by_triangle[key]) {
          if (component[j] < 0) {
            component[j] = count;
            queue.push_back(j);
          }
        }
      }
    }
    ++count;
  }
  SplitResult result;
  if (count < 2) return result;
  result.separating = true;
  for (int c = 0; c < count; ++c) {
    std::vector<Facet> piece{sigma};
    for (std::uint32_t i = 0; i < facets.size(); ++i) {
      if (component[i] == c) piece.push_back(facets[i]);
    }
    Complex p = Complex::from_facets(piece, true);
    require_manifold(p, "split piece");
    result.pieces.push_back(std::move(p));
  }
  return result;
}

}  // namespace trimani
