#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "trimani/enumerator.hpp"

namespace trimani {

namespace {

using Surface = std::vector<Triangle>;

Triangle sorted_triangle(Vertex a, Vertex b, Vertex c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

// Flag-based canonical form of a closed connected surface: every ordered
// triangle with the smallest degree triple seeds a breadth-first relabeling,
// and the smallest sorted list wins.
Surface canonical_surface(const Surface& s, int m) {
  const int nt = static_cast<int>(s.size());
  std::vector<int> degree(m + 1, 0);
  std::vector<std::vector<int>> by_edge((m + 1) * (m + 1));
  auto edge_slot = [m](Vertex a, Vertex b) { return std::min(a, b) * (m + 1) + std::max(a, b); };
  for (int i = 0; i < nt; ++i) {
    const auto& t = s[i];
    by_edge[edge_slot(t[0], t[1])].push_back(i);
    by_edge[edge_slot(t[0], t[2])].push_back(i);
    by_edge[edge_slot(t[1], t[2])].push_back(i);
  }
  for (Vertex a = 1; a <= static_cast<Vertex>(m); ++a) {
    for (Vertex b = a + 1; b <= static_cast<Vertex>(m); ++b) {
      if (!by_edge[edge_slot(a, b)].empty()) {
        ++degree[a];
        ++degree[b];
      }
    }
  }
  std::vector<std::pair<int, std::array<Vertex, 3>>> seeds;
  std::array<int, 3> best_key{1 << 30, 0, 0};
  for (int i = 0; i < nt; ++i) {
    std::array<Vertex, 3> order{s[i][0], s[i][1], s[i][2]};
    do {
      const std::array<int, 3> key{degree[order[0]], degree[order[1]], degree[order[2]]};
      if (key < best_key) {
        best_key = key;
        seeds.clear();
      }
      if (key == best_key) seeds.emplace_back(i, order);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  Surface best;
  std::vector<Vertex> label(m + 1);
  std::vector<char> seen(nt);
  std::vector<int> queue(nt);
  for (const auto& [first, order] : seeds) {
    std::fill(label.begin(), label.end(), 0);
    std::fill(seen.begin(), seen.end(), 0);
    Vertex next = 1;
    for (Vertex v : order) label[v] = next++;
    int head = 0;
    int tail = 0;
    seen[first] = 1;
    queue[tail++] = first;
    Surface out;
    out.reserve(nt);
    while (head < tail) {
      const auto& t = s[queue[head++]];
      std::array<Vertex, 3> tv{t[0], t[1], t[2]};
      std::sort(tv.begin(), tv.end(), [&](Vertex a, Vertex b) { return label[a] < label[b]; });
      out.push_back(sorted_triangle(label[tv[0]], label[tv[1]], label[tv[2]]));
      const std::array<std::pair<Vertex, Vertex>, 3> sides{{{tv[0], tv[1]}, {tv[0], tv[2]}, {tv[1], tv[2]}}};
      for (auto [a, b] : sides) {
        for (int j : by_edge[edge_slot(a, b)]) {
          if (seen[j]) continue;
          seen[j] = 1;
          for (Vertex x : s[j]) {
            if (label[x] == 0) label[x] = next++;
          }
          queue[tail++] = j;
        }
      }
    }
    std::sort(out.begin(), out.end());
    if (best.empty() || out < best) best = std::move(out);
  }
  return best;
}

// Link cycle of v in a closed surface, as a cyclic vertex sequence.
std::vector<Vertex> link_cycle(const Surface& s, Vertex v) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const auto& t : s) {
    if (std::find(t.begin(), t.end(), v) == t.end()) continue;
    Vertex o[2];
    int k = 0;
    for (Vertex x : t) {
      if (x != v) o[k++] = x;
    }
    adj[o[0]].push_back(o[1]);
    adj[o[1]].push_back(o[0]);
  }
  std::vector<Vertex> cycle{adj.begin()->first};
  Vertex prev = 0;
  while (true) {
    const auto& a = adj[cycle.back()];
    const Vertex next = a[0] != prev ? a[0] : a[1];
    if (next == cycle.front()) break;
    prev = cycle.back();
    cycle.push_back(next);
  }
  return cycle;
}

// Every simplicial 2-sphere other than the tetrahedron has a contractible
// edge, so splitting vertices of the (m-1)-vertex spheres yields them all.
std::vector<Surface> split_all(const std::vector<Surface>& smaller, int m) {
  std::set<Surface> found;
  const auto w = static_cast<Vertex>(m);
  for (const auto& s : smaller) {
    for (Vertex v = 1; v < w; ++v) {
      const auto cycle = link_cycle(s, v);
      const int k = static_cast<int>(cycle.size());
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          // w takes the arc cycle[i..j], v keeps cycle[j..i]
          Surface out;
          for (const auto& t : s) {
            if (std::find(t.begin(), t.end(), v) == t.end()) {
              out.push_back(t);
              continue;
            }
            Vertex o[2];
            int n = 0;
            for (Vertex x : t) {
              if (x != v) o[n++] = x;
            }
            // the link edges on the arc i..j go to w
            bool on_arc = false;
            for (int x = i; x < j; ++x) {
              const Vertex p = cycle[x];
              const Vertex q = cycle[x + 1];
              if ((o[0] == p && o[1] == q) || (o[0] == q && o[1] == p)) on_arc = true;
            }
            out.push_back(sorted_triangle(on_arc ? w : v, o[0], o[1]));
          }
          out.push_back(sorted_triangle(v, w, cycle[i]));
          out.push_back(sorted_triangle(v, w, cycle[j]));
          found.insert(canonical_surface(out, m));
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

const std::vector<Surface>& all_spheres(int m) {
  static std::map<int, std::vector<Surface>> levels;
  if (auto it = levels.find(m); it != levels.end()) return it->second;
  std::vector<Surface> out;
  if (m == 4) {
    out.push_back({{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
  } else {
    out = split_all(all_spheres(m - 1), m);
  }
  return levels.emplace(m, std::move(out)).first->second;
}

bool admissible(const Surface& s, int m, int min_degree, bool forbid_empty) {
  std::vector<std::vector<char>> adj(m + 1, std::vector<char>(m + 1, 0));
  for (const auto& t : s) {
    adj[t[0]][t[1]] = adj[t[1]][t[0]] = 1;
    adj[t[0]][t[2]] = adj[t[2]][t[0]] = 1;
    adj[t[1]][t[2]] = adj[t[2]][t[1]] = 1;
  }
  for (int v = 1; v <= m; ++v) {
    int d = 0;
    for (int w = 1; w <= m; ++w) d += adj[v][w];
    if (d < min_degree) return false;
  }
  if (!forbid_empty) return true;
  const std::set<Triangle> present(s.begin(), s.end());
  for (int a = 1; a <= m; ++a) {
    for (int b = a + 1; b <= m; ++b) {
      if (!adj[a][b]) continue;
      for (int c = b + 1; c <= m; ++c) {
        if (adj[a][c] && adj[b][c] &&
            !present.contains({static_cast<Vertex>(a), static_cast<Vertex>(b), static_cast<Vertex>(c)})) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

const std::vector<std::vector<Triangle>>& sphere_catalog(int m, int min_degree, bool forbid_empty_triangles) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, bool>, std::vector<Surface>> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(m, min_degree, forbid_empty_triangles);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (m < 4 || m > 24) throw Error(Errc::InvalidArgument, "sphere catalog supports 4..24 vertices");
  std::vector<Surface> out;
  for (const auto& s : all_spheres(m)) {
    if (admissible(s, m, min_degree, forbid_empty_triangles)) out.push_back(s);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace trimani
