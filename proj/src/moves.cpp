#include "trimani/moves.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

namespace trimani {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "empty sampling range");
  // 2^64 mod n values at the bottom are rejected so that x mod n is uniform
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t x = next();
  while (x < threshold) x = next();
  return x % n;
}

Weight Weight::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "∞") return infinity();
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::InvalidWeights, "bad weight '" + std::string(text) + "'");
  }
  return {v, false};
}

std::string Weight::to_string() const { return infinite ? "inf" : std::to_string(value); }

MoveWeights parse_weights(std::string_view text) {
  MoveWeights w{};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const auto comma = text.find(',', pos);
    if ((i < 3) == (comma == std::string_view::npos)) throw Error(Errc::InvalidWeights, "expected four weights");
    w[i] = Weight::parse(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    pos = comma + 1;
  }
  return w;
}

std::string MoveDescriptor::to_string() const {
  return std::to_string(kind) + "-move " + face_a.to_string() + " -> " + replacement_b.to_string();
}

namespace {

constexpr Vertex kMaxLabel = 0xFFFF;

std::uint64_t key(std::span<const Vertex> v) {
  std::uint64_t k = 0;
  for (Vertex x : v) k = (k << 16) | x;
  return k;
}
std::uint64_t key(Vertex a, Vertex b) {
  return a < b ? (static_cast<std::uint64_t>(a) << 16) | b : (static_cast<std::uint64_t>(b) << 16) | a;
}
std::uint64_t key(Vertex a, Vertex b, Vertex c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return key(t);
}
Facet unpack_facet(std::uint64_t k) {
  return {static_cast<Vertex>(k >> 48), static_cast<Vertex>((k >> 32) & 0xFFFF),
          static_cast<Vertex>((k >> 16) & 0xFFFF), static_cast<Vertex>(k & 0xFFFF)};
}
Triangle unpack_triangle(std::uint64_t k) {
  return {static_cast<Vertex>(k >> 32), static_cast<Vertex>((k >> 16) & 0xFFFF), static_cast<Vertex>(k & 0xFFFF)};
}
Edge unpack_edge(std::uint64_t k) { return {static_cast<Vertex>(k >> 16), static_cast<Vertex>(k & 0xFFFF)}; }

class IndexedSet {
 public:
  void insert(std::uint64_t k) {
    if (pos_.emplace(k, items_.size()).second) items_.push_back(k);
  }
  void erase(std::uint64_t k) {
    auto it = pos_.find(k);
    if (it == pos_.end()) return;
    const std::size_t i = it->second;
    pos_.erase(it);
    if (i + 1 != items_.size()) {
      items_[i] = items_.back();
      pos_[items_[i]] = i;
    }
    items_.pop_back();
  }
  bool contains(std::uint64_t k) const { return pos_.contains(k); }
  std::size_t size() const { return items_.size(); }
  std::uint64_t at(std::size_t i) const { return items_[i]; }
  const std::vector<std::uint64_t>& items() const { return items_; }

 private:
  std::vector<std::uint64_t> items_;
  std::unordered_map<std::uint64_t, std::size_t> pos_;
};

// Kind choice shared by the pure sampler and the engine.
std::optional<int> choose_kind(const std::array<std::size_t, 4>& count, const MoveWeights& w, Rng& rng) {
  bool any = false;
  for (const auto& x : w) any = any || x.infinite || x.value > 0;
  if (!any) throw Error(Errc::InvalidWeights, "all move weights are zero");
  std::uint64_t infinite_total = 0;
  for (int i = 0; i < 4; ++i) {
    if (w[i].infinite) infinite_total += count[i];
  }
  if (infinite_total > 0) {
    std::uint64_t r = rng.below(infinite_total);
    for (int i = 0; i < 4; ++i) {
      if (!w[i].infinite) continue;
      if (r < count[i]) return i;
      r -= count[i];
    }
  }
  std::uint64_t total = 0;
  for (int i = 0; i < 4; ++i) {
    if (!w[i].infinite) total += w[i].value * count[i];
  }
  if (total == 0) return std::nullopt;
  std::uint64_t r = rng.below(total);
  for (int i = 0; i < 4; ++i) {
    if (w[i].infinite) continue;
    const std::uint64_t share = w[i].value * count[i];
    if (r < share) return i;
    r -= share;
  }
  return std::nullopt;
}

template <class V>
void erase_value(std::vector<V>& v, const V& x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it != v.end()) {
    *it = v.back();
    v.pop_back();
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Engine

struct FlipEngine::State {
  Vertex n = 0;
  IndexedSet facets;  // also the 0-move candidates
  std::unordered_map<std::uint64_t, std::array<Vertex, 2>> triangles;  // opposite vertices, 0 = free slot
  std::unordered_map<std::uint64_t, int> edges;                        // facets per edge
  std::vector<std::vector<std::uint64_t>> star;                        // facets per vertex

  IndexedSet cand[4];
  // registrations of candidates on the face whose absence makes them legal
  std::unordered_map<std::uint64_t, std::uint64_t> tri_pair;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> pair_tris;
  std::unordered_map<std::uint64_t, std::uint64_t> edge_linktri;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> linktri_edges;
  std::unordered_map<Vertex, std::uint64_t> vertex_linkfacet;
  std::unordered_map<std::uint64_t, std::vector<Vertex>> linkfacet_vertices;

  std::vector<std::uint64_t> dirty_tris;
  std::vector<std::uint64_t> dirty_edges;
  std::vector<Vertex> dirty_vertices;

  void add_facet(Facet f) {
    std::sort(f.begin(), f.end());
    const std::uint64_t fk = key(f);
    facets.insert(fk);
    if (auto it = linkfacet_vertices.find(fk); it != linkfacet_vertices.end()) {
      dirty_vertices.insert(dirty_vertices.end(), it->second.begin(), it->second.end());
    }
    for (int skip = 0; skip < 4; ++skip) {
      const Triangle t = drop(f, skip);
      const std::uint64_t tk = key(t);
      auto [it, fresh] = triangles.try_emplace(tk, std::array<Vertex, 2>{0, 0});
      auto& slots = it->second;
      if (slots[0] == 0) {
        slots[0] = f[skip];
      } else {
        slots[1] = f[skip];
      }
      if (fresh) {
        if (auto e = linktri_edges.find(tk); e != linktri_edges.end()) {
          dirty_edges.insert(dirty_edges.end(), e->second.begin(), e->second.end());
        }
      }
      dirty_tris.push_back(tk);
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const std::uint64_t ek = key(f[i], f[j]);
        if (++edges[ek] == 1) {
          if (auto t = pair_tris.find(ek); t != pair_tris.end()) {
            dirty_tris.insert(dirty_tris.end(), t->second.begin(), t->second.end());
          }
        }
        dirty_edges.push_back(ek);
      }
    }
    for (Vertex v : f) {
      star[v].push_back(fk);
      dirty_vertices.push_back(v);
    }
  }

  void remove_facet(Facet f) {
    std::sort(f.begin(), f.end());
    const std::uint64_t fk = key(f);
    facets.erase(fk);
    if (auto it = linkfacet_vertices.find(fk); it != linkfacet_vertices.end()) {
      dirty_vertices.insert(dirty_vertices.end(), it->second.begin(), it->second.end());
    }
    for (int skip = 0; skip < 4; ++skip) {
      const std::uint64_t tk = key(drop(f, skip));
      auto it = triangles.find(tk);
      auto& slots = it->second;
      if (slots[0] == f[skip]) {
        slots[0] = slots[1];
      }
      slots[1] = 0;
      if (slots[0] == 0) {
        triangles.erase(it);
        if (auto e = linktri_edges.find(tk); e != linktri_edges.end()) {
          dirty_edges.insert(dirty_edges.end(), e->second.begin(), e->second.end());
        }
      }
      dirty_tris.push_back(tk);
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const std::uint64_t ek = key(f[i], f[j]);
        auto it = edges.find(ek);
        if (--it->second == 0) {
          edges.erase(it);
          if (auto t = pair_tris.find(ek); t != pair_tris.end()) {
            dirty_tris.insert(dirty_tris.end(), t->second.begin(), t->second.end());
          }
        }
        dirty_edges.push_back(ek);
      }
    }
    for (Vertex v : f) {
      erase_value(star[v], fk);
      dirty_vertices.push_back(v);
    }
  }

  static Triangle drop(const Facet& f, int skip) {
    Triangle t{};
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) t[k++] = f[i];
    }
    return t;
  }

  // Link vertices of an edge from the star of its smaller-star endpoint.
  std::vector<Vertex> edge_link(Vertex a, Vertex b) const {
    const auto& s = star[a].size() <= star[b].size() ? star[a] : star[b];
    std::vector<Vertex> out;
    for (auto fk : s) {
      const Facet f = unpack_facet(fk);
      if (std::find(f.begin(), f.end(), a) == f.end() || std::find(f.begin(), f.end(), b) == f.end()) continue;
      for (Vertex x : f) {
        if (x != a && x != b && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Vertex> vertex_link(Vertex v) const {
    std::vector<Vertex> out;
    for (auto fk : star[v]) {
      for (Vertex x : unpack_facet(fk)) {
        if (x != v && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void refresh_triangle(std::uint64_t tk) {
    if (auto it = tri_pair.find(tk); it != tri_pair.end()) {
      auto& v = pair_tris[it->second];
      erase_value(v, tk);
      if (v.empty()) pair_tris.erase(it->second);
      tri_pair.erase(it);
      cand[1].erase(tk);
    }
    auto it = triangles.find(tk);
    if (it == triangles.end() || it->second[1] == 0) return;
    const std::uint64_t pk = key(it->second[0], it->second[1]);
    tri_pair[tk] = pk;
    pair_tris[pk].push_back(tk);
    if (!edges.contains(pk)) cand[1].insert(tk);
  }

  void refresh_edge(std::uint64_t ek) {
    if (auto it = edge_linktri.find(ek); it != edge_linktri.end()) {
      auto& v = linktri_edges[it->second];
      erase_value(v, ek);
      if (v.empty()) linktri_edges.erase(it->second);
      edge_linktri.erase(it);
      cand[2].erase(ek);
    }
    auto it = edges.find(ek);
    if (it == edges.end() || it->second != 3) return;
    const Edge e = unpack_edge(ek);
    const auto link = edge_link(e[0], e[1]);
    if (link.size() != 3) return;
    const std::uint64_t tk = key(link[0], link[1], link[2]);
    edge_linktri[ek] = tk;
    linktri_edges[tk].push_back(ek);
    if (!triangles.contains(tk)) cand[2].insert(ek);
  }

  void refresh_vertex(Vertex v) {
    if (v > n) return;
    if (auto it = vertex_linkfacet.find(v); it != vertex_linkfacet.end()) {
      auto& vs = linkfacet_vertices[it->second];
      erase_value(vs, v);
      if (vs.empty()) linkfacet_vertices.erase(it->second);
      vertex_linkfacet.erase(it);
      cand[3].erase(v);
    }
    if (star[v].size() != 4) return;
    const auto link = vertex_link(v);
    if (link.size() != 4) return;
    const std::uint64_t fk = key(link);
    vertex_linkfacet[v] = fk;
    linkfacet_vertices[fk].push_back(v);
    if (!facets.contains(fk)) cand[3].insert(v);
  }

  void flush() {
    auto dedupe = [](auto& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(dirty_tris);
    dedupe(dirty_edges);
    dedupe(dirty_vertices);
    for (auto t : dirty_tris) refresh_triangle(t);
    for (auto e : dirty_edges) refresh_edge(e);
    for (auto v : dirty_vertices) refresh_vertex(v);
    dirty_tris.clear();
    dirty_edges.clear();
    dirty_vertices.clear();
  }

  bool legal(const MoveDescriptor& m, std::string* reason) const {
    auto fail = [&](const char* why) {
      if (reason) *reason = why;
      return false;
    };
    if (m.face_a.size() + m.replacement_b.size() != 5 || static_cast<int>(m.face_a.size()) != 4 - m.kind) {
      return fail("face sizes do not match the move kind");
    }
    const Simplex& a = m.face_a;
    const Simplex& b = m.replacement_b;
    switch (m.kind) {
      case 0:
        if (!facets.contains(key(std::span<const Vertex>(a.begin(), a.end())))) return fail("A is not a facet");
        if (b[0] != n + 1) return fail("B must be the fresh vertex f0+1");
        return true;
      case 1: {
        auto it = triangles.find(key(a[0], a[1], a[2]));
        if (it == triangles.end()) return fail("A is not a face");
        Edge link{std::min(it->second[0], it->second[1]), std::max(it->second[0], it->second[1])};
        if (link[0] != b[0] || link[1] != b[1]) return fail("link mismatch");
        if (edges.contains(key(b[0], b[1]))) return fail("B is a face");
        return true;
      }
      case 2: {
        if (!edges.contains(key(a[0], a[1]))) return fail("A is not a face");
        const auto link = edge_link(a[0], a[1]);
        if (link.size() != 3 || link[0] != b[0] || link[1] != b[1] || link[2] != b[2]) return fail("link mismatch");
        if (triangles.contains(key(b[0], b[1], b[2]))) return fail("B is a face");
        return true;
      }
      case 3: {
        if (a[0] < 1 || a[0] > n) return fail("A is not a face");
        const auto link = vertex_link(a[0]);
        if (star[a[0]].size() != 4 || link.size() != 4 || !std::equal(link.begin(), link.end(), b.begin())) {
          return fail("link mismatch");
        }
        if (facets.contains(key(link))) return fail("B is a face");
        return true;
      }
      default:
        return fail("move kind must be 0..3");
    }
  }

  void relabel_vertex(Vertex from, Vertex to) {
    const auto old = star[from];
    for (auto fk : old) remove_facet(unpack_facet(fk));
    for (auto fk : old) {
      Facet f = unpack_facet(fk);
      for (Vertex& x : f) {
        if (x == from) x = to;
      }
      add_facet(f);
    }
  }
};

FlipEngine::FlipEngine(const Complex& k) : s_(std::make_unique<State>()) {
  if (k.vertex_count() >= kMaxLabel) throw Error(Errc::InvalidArgument, "too many vertices for the flip engine");
  s_->n = k.vertex_count();
  s_->star.resize(s_->n + 2);
  for (const auto& f : k.facets()) s_->add_facet(f);
  s_->flush();
}

FlipEngine::~FlipEngine() = default;
FlipEngine::FlipEngine(FlipEngine&&) noexcept = default;
FlipEngine& FlipEngine::operator=(FlipEngine&&) noexcept = default;

Vertex FlipEngine::vertex_count() const { return s_->n; }

FVector3 FlipEngine::f_vector() const {
  return {static_cast<std::int64_t>(s_->n), static_cast<std::int64_t>(s_->edges.size()),
          static_cast<std::int64_t>(s_->triangles.size()), static_cast<std::int64_t>(s_->facets.size())};
}

std::array<std::size_t, 4> FlipEngine::available() const {
  return {s_->facets.size(), s_->cand[1].size(), s_->cand[2].size(), s_->cand[3].size()};
}

namespace {

MoveDescriptor describe(int kind, std::uint64_t item, Vertex n, const std::array<Vertex, 2>* tri_opp,
                        const std::vector<Vertex>* link) {
  MoveDescriptor m;
  m.kind = kind;
  switch (kind) {
    case 0:
      m.face_a = Simplex(unpack_facet(item));
      m.replacement_b = Simplex({n + 1});
      break;
    case 1:
      m.face_a = Simplex(unpack_triangle(item));
      m.replacement_b = Simplex({(*tri_opp)[0], (*tri_opp)[1]});
      break;
    case 2:
      m.face_a = Simplex(unpack_edge(item));
      m.replacement_b = Simplex(std::span<const Vertex>(*link));
      break;
    default:
      m.face_a = Simplex({static_cast<Vertex>(item)});
      m.replacement_b = Simplex(std::span<const Vertex>(*link));
  }
  return m;
}

}  // namespace

std::optional<MoveDescriptor> FlipEngine::sample(const MoveWeights& weights, Rng& rng) const {
  const auto kind = choose_kind(available(), weights, rng);
  if (!kind) return std::nullopt;
  const auto& set = *kind == 0 ? s_->facets : s_->cand[*kind];
  const std::uint64_t item = set.at(rng.below(set.size()));
  switch (*kind) {
    case 0:
      return describe(0, item, s_->n, nullptr, nullptr);
    case 1:
      return describe(1, item, s_->n, &s_->triangles.at(item), nullptr);
    case 2: {
      const Edge e = unpack_edge(item);
      const auto link = s_->edge_link(e[0], e[1]);
      return describe(2, item, s_->n, nullptr, &link);
    }
    default: {
      const auto link = s_->vertex_link(static_cast<Vertex>(item));
      return describe(3, item, s_->n, nullptr, &link);
    }
  }
}

bool FlipEngine::is_legal(const MoveDescriptor& m) const { return s_->legal(m, nullptr); }

void FlipEngine::apply(const MoveDescriptor& m) {
  std::string reason;
  if (!s_->legal(m, &reason)) throw Error(Errc::IllegalMove, m.to_string() + ": " + reason);
  const Simplex& a = m.face_a;
  const Simplex& b = m.replacement_b;
  if (m.kind == 0) {
    if (s_->n + 1 >= kMaxLabel) throw Error(Errc::InvalidArgument, "too many vertices for the flip engine");
    ++s_->n;
    s_->star.resize(s_->n + 2);
  }
  // remove A * ∂B, add ∂A * B
  std::vector<Facet> removed;
  std::vector<Facet> added;
  if (b.size() == 1) {
    removed.push_back(a.as_facet());
  } else {
    for (Vertex x : b) {
      std::vector<Vertex> f(a.begin(), a.end());
      for (Vertex y : b) {
        if (y != x) f.push_back(y);
      }
      removed.push_back(sorted_facet({f[0], f[1], f[2], f[3]}));
    }
  }
  if (a.size() == 1) {
    added.push_back(b.as_facet());
  } else {
    for (Vertex y : a) {
      std::vector<Vertex> f(b.begin(), b.end());
      for (Vertex x : a) {
        if (x != y) f.push_back(x);
      }
      added.push_back(sorted_facet({f[0], f[1], f[2], f[3]}));
    }
  }
  for (const auto& f : removed) s_->remove_facet(f);
  for (const auto& f : added) s_->add_facet(f);
  if (m.kind == 3) {
    const Vertex v = a[0];
    const Vertex last = s_->n;
    if (v != last) s_->relabel_vertex(last, v);
    // the vanished label drops out of every index
    s_->dirty_vertices.push_back(last);
    s_->flush();
    --s_->n;
    s_->star.resize(s_->n + 2);
    s_->flush();
    return;
  }
  s_->flush();
}

Complex FlipEngine::snapshot() const {
  std::vector<Facet> out;
  out.reserve(s_->facets.size());
  for (auto fk : s_->facets.items()) out.push_back(unpack_facet(fk));
  return Complex::from_facets(out);
}

bool FlipEngine::consistent() const {
  const Complex k = snapshot();
  std::array<std::size_t, 4> counts{};
  for (const auto& m : legal_moves(k)) {
    ++counts[m.kind];
    if (!is_legal(m)) return false;
  }
  return counts == available() && f_vector() == k.f_vector();
}

// ---------------------------------------------------------------------------
// Pure functions

std::vector<MoveDescriptor> legal_moves(const Complex& k) {
  std::vector<MoveDescriptor> out;
  const Vertex n = k.vertex_count();
  for (const auto& f : k.facets()) out.push_back({0, Simplex(f), Simplex({n + 1})});
  for (const auto& t : k.triangles()) {
    const auto around = k.facets_containing(t);
    if (around.size() != 2) continue;
    Vertex o[2] = {0, 0};
    for (int i = 0; i < 2; ++i) {
      for (Vertex x : around[i]) {
        if (x != t[0] && x != t[1] && x != t[2]) o[i] = x;
      }
    }
    if (!k.has_edge(o[0], o[1])) out.push_back({1, Simplex(t), Simplex({o[0], o[1]})});
  }
  for (const auto& e : k.edges()) {
    if (k.edge_degree(e[0], e[1]) != 3) continue;
    const auto link = k.link(Simplex(e)).vertices();
    if (link.size() == 3 && !k.has_triangle(link[0], link[1], link[2])) {
      out.push_back({2, Simplex(e), Simplex(std::span<const Vertex>(link))});
    }
  }
  for (Vertex v = 1; v <= n; ++v) {
    if (k.vertex_degree(v) != 4) continue;
    const auto link = k.link(Simplex({v})).vertices();
    if (!k.has_facet({link[0], link[1], link[2], link[3]})) {
      out.push_back({3, Simplex({v}), Simplex(std::span<const Vertex>(link))});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_legal(const Complex& k, const MoveDescriptor& m) {
  // apply reports the reason
  FlipEngine(k).apply(m);
}

Complex apply(const Complex& k, const MoveDescriptor& m) {
  FlipEngine e(k);
  e.apply(m);
  return e.snapshot();
}

MoveDescriptor inverse(const Complex& k, const MoveDescriptor& m) {
  check_legal(k, m);
  switch (m.kind) {
    case 0:
      return {3, m.replacement_b, m.face_a};
    case 1:
      return {2, m.replacement_b, m.face_a};
    case 2:
      return {1, m.replacement_b, m.face_a};
    default: {
      // vertex f0 takes the removed label
      const Vertex v = m.face_a[0];
      const Vertex last = k.vertex_count();
      std::vector<Vertex> b(m.replacement_b.begin(), m.replacement_b.end());
      for (Vertex& x : b) {
        if (x == last) x = v;
      }
      std::sort(b.begin(), b.end());
      return {0, Simplex(std::span<const Vertex>(b)), Simplex({last})};
    }
  }
}

std::optional<MoveDescriptor> weighted_random_move(const Complex& k, const MoveWeights& weights, Rng& rng) {
  const auto moves = legal_moves(k);
  std::array<std::size_t, 4> count{};
  for (const auto& m : moves) ++count[m.kind];
  const auto kind = choose_kind(count, weights, rng);
  if (!kind) return std::nullopt;
  std::size_t offset = 0;
  for (int i = 0; i < *kind; ++i) offset += count[i];
  return moves[offset + rng.below(count[*kind])];
}

}  // namespace trimani
