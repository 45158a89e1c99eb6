#include "trimani/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "trimani/surgery.hpp"

namespace trimani {

// ---------------------------------------------------------------------------
// Rule sets and tasks

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 6> kRuleNames{{
    {Rule::L10_1, "L10_1"},
    {Rule::L10_2, "L10_2"},
    {Rule::L10_4, "L10_4"},
    {Rule::L11_1, "L11_1"},
    {Rule::L10_7, "L10_7"},
    {Rule::F1_BOUND, "F1_BOUND"},
}};

}  // namespace

RuleSet RuleSet::parse(std::string_view text) {
  if (text == "all") return all();
  if (text == "none" || text.empty()) return none();
  RuleSet out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto name = text.substr(pos, comma - pos);
    bool found = false;
    for (const auto& [rule, rname] : kRuleNames) {
      if (rname == name) {
        out = out.with(rule);
        found = true;
      }
    }
    if (!found) throw Error(Errc::InvalidArgument, "unknown pruning rule '" + std::string(name) + "'");
    pos = comma + 1;
  }
  return out;
}

std::string RuleSet::to_string() const {
  if (*this == all()) return "all";
  std::string out;
  for (const auto& [rule, name] : kRuleNames) {
    if (!has(rule)) continue;
    if (!out.empty()) out += ',';
    out += name;
  }
  return out.empty() ? "none" : out;
}

std::string EnumerationTask::id() const {
  std::ostringstream s;
  s << "f0=" << f0 << ";f1=" << f1_lo << ":" << f1_hi;
  if (g2_cap) s << ";g2cap=" << *g2_cap;
  s << ";rules=" << rules.to_string();
  if (reading == IntersectionReading::Vertices) s << ";reading=vertices";
  if (prefix) s << ";prefix=" << digest_of(*prefix);
  return s.str();
}

std::pair<std::int64_t, std::int64_t> effective_f1_range(const EnumerationTask& task) {
  if (task.f0 < 5 || task.f0 > 24) {
    throw Error(Errc::InfeasibleTask, "f0 must lie in 5..24, got " + std::to_string(task.f0));
  }
  std::int64_t lo = std::max<std::int64_t>(task.f1_lo, 2 * task.f0);
  std::int64_t hi = std::min<std::int64_t>(task.f1_hi, static_cast<std::int64_t>(task.f0) * (task.f0 - 1) / 2);
  if (task.g2_cap) {
    hi = std::min<std::int64_t>(hi, *task.g2_cap + 4 * task.f0 - 10);
    // mu = f1 - 9/2 f0 > 1/2
    lo = std::max<std::int64_t>(lo, (9 * task.f0 + 1) / 2 + 1);
  }
  if (lo > hi) {
    throw Error(Errc::InfeasibleTask, "no admissible edge counts for f0=" + std::to_string(task.f0));
  }
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Search engine

namespace {

struct TrailEntry {
  std::int32_t* slot;
  std::int32_t old;
};

struct WordEntry {
  std::uint64_t* slot;
  std::uint64_t old;
};

class Search {
 public:
  Search(const EnumerationTask& task, std::int64_t lo, std::int64_t hi)
      : rules_(task.rules), reading_(task.reading), n_(task.f0), N_(task.f0 + 1), lo_(lo), hi_(hi) {
    const std::size_t n3 = static_cast<std::size_t>(N_) * N_ * N_;
    tri_count_.assign(n3, 0);
    tri_opp_.assign(2 * n3, 0);
    link_deg_.assign(n3, 0);
    partner_.assign(n3, 0);
    edge_facets_.assign(static_cast<std::size_t>(N_) * N_, 0);
    link_v_.assign(static_cast<std::size_t>(N_) * N_, 0);
    link_e_.assign(static_cast<std::size_t>(N_) * N_, 0);
    edge_closed_.assign(static_cast<std::size_t>(N_) * N_, 0);
    vertex_open_.assign(N_, 0);
    vertex_facets_.assign(N_, 0);
    vertex_deg_.assign(N_, 0);
    vertex_done_.assign(N_, 0);
    floor_.assign(N_, 0);
    // lexicographic ranks of triangles
    tri_rank_.assign(n3, -1);
    for (int a = 1; a <= n_; ++a) {
      for (int b = a + 1; b <= n_; ++b) {
        for (int c = b + 1; c <= n_; ++c) {
          tri_rank_[T(a, b, c)] = static_cast<std::int32_t>(tri_unrank_.size());
          tri_unrank_.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), static_cast<Vertex>(c)});
        }
      }
    }
    open_.assign((tri_unrank_.size() + 63) / 64, 0);
  }

  // Installs the star of vertex 1 as the cone over `sphere` (labels 1..m
  // shifted to 2..m+1). Returns false when the star is already pruned.
  bool install_star(const std::vector<Triangle>& sphere, int m) {
    m_ = m;
    next_ = static_cast<std::int32_t>(m + 2);
    for (const auto& t : sphere) {
      if (!add_facet({1, t[0] + 1, t[1] + 1, t[2] + 1})) return false;
    }
    return vertex_done_[1] != 0;
  }

  // Adds one facet and runs every enabled check; on failure the caller must
  // still undo to its mark.
  bool add_facet(Facet f) {
    ++nodes_;
    std::sort(f.begin(), f.end());
    for (Vertex v : f) {
      if (vertex_done_[v]) return false;
    }
    facets_.push_back(f);
    for (Vertex v : f) {
      if (static_cast<std::int32_t>(v) == next_) set(next_, next_ + 1);
    }
    // triangles
    for (int skip = 0; skip < 4; ++skip) {
      Vertex t[3];
      int k = 0;
      for (int i = 0; i < 4; ++i) {
        if (i != skip) t[k++] = f[i];
      }
      const std::size_t id = T(t[0], t[1], t[2]);
      const std::int32_t c = tri_count_[id];
      if (c >= 2) return false;
      set(tri_count_[id], c + 1);
      set(tri_opp_[2 * id + c], static_cast<std::int32_t>(f[skip]));
      const std::int32_t r = tri_rank_[id];
      if (c == 0) {
        set_bit(r, true);
        for (Vertex v : t) set(vertex_open_[v], vertex_open_[v] + 1);
      } else {
        set_bit(r, false);
        for (Vertex v : t) set(vertex_open_[v], vertex_open_[v] - 1);
      }
    }
    if (rules_.has(Rule::L10_4) && !empty_triangles_ok(f)) return false;
    // edges and their links
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const Vertex a = f[i];
        const Vertex b = f[j];
        Vertex o[2];
        int k = 0;
        for (int x = 0; x < 4; ++x) {
          if (x != i && x != j) o[k++] = f[x];
        }
        const std::size_t e = E(a, b);
        if (edge_closed_[e]) return false;
        if (edge_facets_[e] == 0) {
          set(edges_total_, edges_total_ + 1);
          set(vertex_deg_[a], vertex_deg_[a] + 1);
          set(vertex_deg_[b], vertex_deg_[b] + 1);
          if (edges_total_ > hi_) return false;
        }
        set(edge_facets_[e], edge_facets_[e] + 1);
        if (!add_link_edge(e, o[0], o[1])) return false;
      }
    }
    for (Vertex v : f) set(vertex_facets_[v], vertex_facets_[v] + 1);
    for (Vertex v : f) {
      if (vertex_open_[v] == 0 && !vertex_done_[v]) {
        if (!complete_vertex(v)) return false;
      }
    }
    if (rules_.has(Rule::F1_BOUND) && !f1_bound_ok()) return false;
    return true;
  }

  void undo(std::size_t m, std::size_t wm, std::size_t fm) {
    while (trail_.size() > m) {
      *trail_.back().slot = trail_.back().old;
      trail_.pop_back();
    }
    while (words_.size() > wm) {
      *words_.back().slot = words_.back().old;
      words_.pop_back();
    }
    facets_.resize(fm);
  }

  // Smallest open triangle, or -1 when the complex is closed.
  std::int32_t first_open() const {
    for (std::size_t w = 0; w < open_.size(); ++w) {
      if (open_[w]) return static_cast<std::int32_t>(w * 64 + __builtin_ctzll(open_[w]));
    }
    return -1;
  }

  // Candidate facets closing the smallest open triangle, in search order.
  std::vector<Facet> candidates() const {
    std::vector<Facet> out;
    const std::int32_t r = first_open();
    if (r < 0) return out;
    const auto& t = tri_unrank_[r];
    const std::size_t id = T(t[0], t[1], t[2]);
    const Vertex y = static_cast<Vertex>(tri_opp_[2 * id]);
    const Vertex limit = static_cast<Vertex>(std::min<std::int32_t>(next_, n_));
    for (Vertex x = 1; x <= limit; ++x) {
      if (x == t[0] || x == t[1] || x == t[2] || x == y || vertex_done_[x]) continue;
      if (tri_count_[Ts(t[0], t[1], x)] >= 2 || tri_count_[Ts(t[0], t[2], x)] >= 2 ||
          tri_count_[Ts(t[1], t[2], x)] >= 2) {
        continue;
      }
      out.push_back(sorted_facet({t[0], t[1], t[2], x}));
    }
    return out;
  }

  bool closed_and_complete() const {
    return first_open() < 0 && next_ == n_ + 1 && edges_total_ >= lo_ && edges_total_ <= hi_;
  }

  template <class Sink>
  void dfs(Sink& sink) {
    if (first_open() < 0) {
      if (closed_and_complete()) sink(facets_);
      return;
    }
    for (const auto& f : candidates()) {
      const auto m = trail_.size();
      const auto wm = words_.size();
      const auto fm = facets_.size();
      if (add_facet(f)) dfs(sink);
      undo(m, wm, fm);
    }
  }

  // Frontier of facet sequences `depth` levels below the current node.
  void frontier(int depth, std::vector<std::vector<Facet>>& out) {
    if (depth == 0 || first_open() < 0) {
      if (first_open() >= 0 || closed_and_complete()) out.push_back(facets_);
      return;
    }
    for (const auto& f : candidates()) {
      const auto m = trail_.size();
      const auto wm = words_.size();
      const auto fm = facets_.size();
      if (add_facet(f)) frontier(depth - 1, out);
      undo(m, wm, fm);
    }
  }

  std::uint64_t nodes() const { return nodes_; }
  const std::vector<Facet>& facets() const { return facets_; }

 private:
  std::size_t T(Vertex a, Vertex b, Vertex c) const {
    return (static_cast<std::size_t>(a) * N_ + b) * N_ + c;
  }
  std::size_t Ts(Vertex a, Vertex b, Vertex c) const {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return T(a, b, c);
  }
  std::size_t E(Vertex a, Vertex b) const {
    return a < b ? static_cast<std::size_t>(a) * N_ + b : static_cast<std::size_t>(b) * N_ + a;
  }
  std::size_t L(std::size_t e, Vertex c) const { return e * N_ + c; }

  void set(std::int32_t& slot, std::int32_t value) {
    trail_.push_back({&slot, slot});
    slot = value;
  }
  void set_bit(std::int32_t r, bool on) {
    std::uint64_t& w = open_[r >> 6];
    words_.push_back({&w, w});
    if (on) {
      w |= 1ULL << (r & 63);
    } else {
      w &= ~(1ULL << (r & 63));
    }
  }

  bool facet_present(Vertex a, Vertex b, Vertex c, Vertex d) const {
    const std::size_t id = Ts(a, b, c);
    return tri_opp_[2 * id] == static_cast<std::int32_t>(d) || tri_opp_[2 * id + 1] == static_cast<std::int32_t>(d);
  }

  // Adds the link edge (c,d) to the link of edge e, keeping the path
  // structure; a closing cycle must be the whole link.
  bool add_link_edge(std::size_t e, Vertex c, Vertex d) {
    const std::size_t lc = L(e, c);
    const std::size_t ld = L(e, d);
    const std::int32_t dc = link_deg_[lc];
    const std::int32_t dd = link_deg_[ld];
    if (dc == 0) set(link_v_[e], link_v_[e] + 1);
    if (dd == 0) set(link_v_[e], link_v_[e] + 1);
    set(link_e_[e], link_e_[e] + 1);
    set(link_deg_[lc], dc + 1);
    set(link_deg_[ld], dd + 1);
    if (dc == 0 && dd == 0) {
      set(partner_[lc], static_cast<std::int32_t>(d));
      set(partner_[ld], static_cast<std::int32_t>(c));
    } else if (dc == 1 && dd == 0) {
      const auto p = static_cast<Vertex>(partner_[lc]);
      set(partner_[L(e, p)], static_cast<std::int32_t>(d));
      set(partner_[ld], static_cast<std::int32_t>(p));
    } else if (dc == 0 && dd == 1) {
      const auto p = static_cast<Vertex>(partner_[ld]);
      set(partner_[L(e, p)], static_cast<std::int32_t>(c));
      set(partner_[lc], static_cast<std::int32_t>(p));
    } else {
      if (partner_[lc] == static_cast<std::int32_t>(d)) {
        // the path closes up
        if (link_e_[e] != link_v_[e]) return false;
        if (link_v_[e] < 3) return false;
        if (rules_.has(Rule::L10_1) && link_v_[e] < 4) return false;
        set(edge_closed_[e], 1);
      } else {
        const auto p = static_cast<Vertex>(partner_[lc]);
        const auto q = static_cast<Vertex>(partner_[ld]);
        set(partner_[L(e, p)], static_cast<std::int32_t>(q));
        set(partner_[L(e, q)], static_cast<std::int32_t>(p));
      }
    }
    return true;
  }

  // Triangles uab, uac, ubc span an empty triangle of Lk u unless uabc
  // becomes a facet, which is impossible once one of them is full.
  bool empty_triangles_ok(const Facet& f) const {
    for (int skip = 0; skip < 4; ++skip) {
      Vertex t[3];
      int k = 0;
      for (int i = 0; i < 4; ++i) {
        if (i != skip) t[k++] = f[i];
      }
      for (int i = 0; i < 3; ++i) {
        const Vertex u = t[i];
        const Vertex a = t[(i + 1) % 3];
        const Vertex b = t[(i + 2) % 3];
        const bool full = tri_count_[Ts(u, a, b)] == 2;
        for (Vertex c = 1; c <= static_cast<Vertex>(n_); ++c) {
          if (c == u || c == a || c == b) continue;
          const std::int32_t ca = tri_count_[Ts(u, a, c)];
          if (ca == 0) continue;
          const std::int32_t cb = tri_count_[Ts(u, b, c)];
          if (cb == 0) continue;
          if ((full || ca == 2 || cb == 2) && !facet_present(u, a, b, c)) return false;
        }
      }
    }
    return true;
  }

  bool linked(Vertex u, Vertex a, Vertex b) const { return tri_count_[Ts(u, a, b)] == 2; }

  bool complete_vertex(Vertex u) {
    // every triangle through u is now in two facets
    std::int32_t nb[32];
    int deg = 0;
    std::int32_t tri_sum = 0;
    for (Vertex w = 1; w <= static_cast<Vertex>(n_); ++w) {
      if (w != u && edge_facets_[E(u, w)] > 0) {
        nb[deg++] = static_cast<std::int32_t>(w);
        tri_sum += link_v_[E(u, w)];
      }
    }
    const std::int32_t chi = deg - tri_sum / 2 + vertex_facets_[u];
    if (chi != 2) return false;
    // connected link
    std::uint32_t seen = 1;
    std::int32_t stack[32];
    int sp = 0;
    stack[sp++] = 0;
    while (sp) {
      const int i = stack[--sp];
      for (int j = 0; j < deg; ++j) {
        if (!((seen >> j) & 1U) && linked(u, nb[i], nb[j])) {
          seen |= 1U << j;
          stack[sp++] = j;
        }
      }
    }
    if (seen != (deg == 32 ? 0xFFFFFFFFU : (1U << deg) - 1)) return false;
    if (deg < m_ || deg < floor_[u]) return false;
    set(vertex_done_[u], 1);

    if (rules_.has(Rule::L10_4)) {
      for (int i = 0; i < deg; ++i) {
        for (int j = i + 1; j < deg; ++j) {
          if (!linked(u, nb[i], nb[j])) continue;
          for (int k = j + 1; k < deg; ++k) {
            if (linked(u, nb[i], nb[k]) && linked(u, nb[j], nb[k]) && !facet_present(u, nb[i], nb[j], nb[k])) {
              return false;
            }
          }
        }
      }
    }
    if (rules_.has(Rule::L10_2) || rules_.has(Rule::L11_1)) {
      for (int i = 0; i < deg; ++i) {
        const auto v = static_cast<Vertex>(nb[i]);
        if (!vertex_done_[v]) continue;
        if (!check_pair(u, v)) return false;
      }
    }
    if (rules_.has(Rule::L10_7)) {
      for (int i = 0; i < deg; ++i) {
        const auto v = static_cast<Vertex>(nb[i]);
        int fl = edge_degree_floor(deg, link_v_[E(u, v)]);
        if (deg >= 6 && deg <= 9) {
          SmallGraph g;
          g.n = deg - 1;
          int idx[32];
          int k = 0;
          for (int j = 0; j < deg; ++j) idx[j] = (j == i) ? -1 : k++;
          for (int a = 0; a < deg; ++a) {
            if (a == i) continue;
            for (int b = a + 1; b < deg; ++b) {
              if (b != i && linked(u, nb[a], nb[b])) g.add_edge(idx[a], idx[b]);
            }
          }
          const auto type = classify_cached(g);
          if (type < 0) return false;
          fl = std::max(fl, type);
        }
        if (fl > n_ - 1) return false;
        if (vertex_done_[v]) {
          if (vertex_deg_[v] < fl) return false;
        } else if (floor_[v] < fl) {
          set(floor_[v], fl);
        }
      }
    }
    return true;
  }

  // Returns the type floor of a reduced link, or -1 when unclassified.
  int classify_cached(const SmallGraph& g) {
    const auto type = classify_graph(g);
    if (!type) return -1;
    return type_degree_floor(link_type_catalog()[*type].name);
  }

  // L10_2 and L11_1 for the finished pair (u, v).
  bool check_pair(Vertex u, Vertex v) {
    const std::size_t uv = E(u, v);
    int vertex_count = 0;
    Vertex lone = 0;
    bool higher = false;
    for (Vertex w = 1; w <= static_cast<Vertex>(n_); ++w) {
      if (w == u || w == v) continue;
      if (edge_facets_[E(u, w)] == 0 || edge_facets_[E(v, w)] == 0) continue;
      if (tri_count_[Ts(u, v, w)] == 0) {
        ++vertex_count;
        lone = w;
      }
    }
    if (reading_ == IntersectionReading::Simplices) {
      // common edges ab of both links that are not in Lk(u,v), and common triangles
      for (Vertex a = 1; a <= static_cast<Vertex>(n_) && !higher; ++a) {
        if (a == u || a == v || edge_facets_[E(u, a)] == 0 || edge_facets_[E(v, a)] == 0) continue;
        for (Vertex b = a + 1; b <= static_cast<Vertex>(n_); ++b) {
          if (b == u || b == v) continue;
          if (!linked(u, a, b) || !linked(v, a, b)) continue;
          if (!facet_present(u, v, a, b)) {
            higher = true;
            break;
          }
          // a triangle abc of both links: facets uabc and vabc
          const std::size_t id = Ts(u, a, b);
          for (int side = 0; side < 2; ++side) {
            const auto c = static_cast<Vertex>(tri_opp_[2 * id + side]);
            if (c != v && facet_present(v, a, b, c)) higher = true;
          }
          if (higher) break;
        }
      }
    }
    const bool empty = vertex_count == 0 && !higher;
    if (rules_.has(Rule::L10_2) && empty) return false;
    if (rules_.has(Rule::L11_1) && vertex_count == 1 && !higher) {
      const std::int32_t duv = link_v_[uv];
      if (link_v_[E(u, lone)] < duv) return false;
      if (link_v_[E(v, lone)] < duv) return false;
    }
    return true;
  }

  bool f1_bound_ok() const {
    std::int64_t sum = 0;
    for (int v = 1; v <= n_; ++v) {
      if (vertex_done_[v]) {
        sum += vertex_deg_[v];
      } else {
        sum += std::max({vertex_deg_[v], m_, floor_[v]});
      }
    }
    return (sum + 1) / 2 <= hi_;
  }

  RuleSet rules_;
  IntersectionReading reading_;
  int n_;
  int N_;
  std::int64_t lo_;
  std::int64_t hi_;
  std::int32_t m_ = 0;
  std::int32_t next_ = 2;
  std::int32_t edges_total_ = 0;
  std::uint64_t nodes_ = 0;

  std::vector<std::int32_t> tri_count_;
  std::vector<std::int32_t> tri_opp_;
  std::vector<std::int32_t> link_deg_;
  std::vector<std::int32_t> partner_;
  std::vector<std::int32_t> edge_facets_;
  std::vector<std::int32_t> link_v_;
  std::vector<std::int32_t> link_e_;
  std::vector<std::int32_t> edge_closed_;
  std::vector<std::int32_t> vertex_open_;
  std::vector<std::int32_t> vertex_facets_;
  std::vector<std::int32_t> vertex_deg_;
  std::vector<std::int32_t> vertex_done_;
  std::vector<std::int32_t> floor_;
  std::vector<std::int32_t> tri_rank_;
  std::vector<Triangle> tri_unrank_;
  std::vector<std::uint64_t> open_;

  std::vector<TrailEntry> trail_;
  std::vector<WordEntry> words_;
  std::vector<Facet> facets_;
};

// Minimum vertex degree compatible with the enabled rules: edge links of
// length >= 4 make vertex links 2-spheres of minimum degree 4, and without
// empty triangles such spheres have at least 6 vertices.
int star_min_degree(RuleSet rules) { return rules.has(Rule::L10_1) ? 4 : 3; }

struct StarChoice {
  int m;
  const std::vector<Triangle>* sphere;
};

std::vector<StarChoice> star_choices(const EnumerationTask& task, std::int64_t hi) {
  std::vector<StarChoice> out;
  const int link_min = star_min_degree(task.rules);
  const bool no_empty = task.rules.has(Rule::L10_4);
  for (int m = 4; m <= task.f0 - 1; ++m) {
    // vertex 1 has minimum degree m, so f1 >= f0 * m / 2
    if (static_cast<std::int64_t>(task.f0) * m > 2 * hi) break;
    for (const auto& s : sphere_catalog(m, link_min, no_empty)) out.push_back({m, &s});
  }
  return out;
}

// Replays a prefix; throws InvalidPrefix unless it follows the search order.
void replay_prefix(Search& search, const EnumerationTask& task, std::int64_t hi, const std::vector<Facet>& prefix) {
  std::vector<Facet> star;
  std::size_t i = 0;
  for (; i < prefix.size(); ++i) {
    if (sorted_facet(prefix[i])[0] != 1) break;
    star.push_back(sorted_facet(prefix[i]));
  }
  if (star.empty()) throw Error(Errc::InvalidPrefix, "prefix must start with the star of vertex 1");
  std::sort(star.begin(), star.end());
  bool matched = false;
  for (const auto& choice : star_choices(task, hi)) {
    std::vector<Facet> cone;
    for (const auto& t : *choice.sphere) cone.push_back({1, t[0] + 1, t[1] + 1, t[2] + 1});
    std::sort(cone.begin(), cone.end());
    if (cone == star) {
      if (!search.install_star(*choice.sphere, choice.m)) {
        throw Error(Errc::InvalidPrefix, "the star of vertex 1 is pruned");
      }
      matched = true;
      break;
    }
  }
  if (!matched) throw Error(Errc::InvalidPrefix, "star of vertex 1 is not a catalogued sphere for this task");
  for (; i < prefix.size(); ++i) {
    const auto cands = search.candidates();
    const Facet f = sorted_facet(prefix[i]);
    if (std::find(cands.begin(), cands.end(), f) == cands.end()) {
      throw Error(Errc::InvalidPrefix, "facet " + Simplex(f).to_string() + " is not a search step here");
    }
    if (!search.add_facet(f)) throw Error(Errc::InvalidPrefix, "facet " + Simplex(f).to_string() + " is pruned");
  }
}

}  // namespace

std::uint64_t enumerate_raw(const EnumerationTask& task, const std::function<void(const std::vector<Facet>&)>& sink) {
  const auto [lo, hi] = effective_f1_range(task);
  std::uint64_t nodes = 0;
  auto emit = [&](const std::vector<Facet>& facets) { sink(canonicalize(Complex::from_facets(facets)).facets); };
  if (task.prefix) {
    Search s(task, lo, hi);
    replay_prefix(s, task, hi, *task.prefix);
    s.dfs(emit);
    return s.nodes();
  }
  for (const auto& choice : star_choices(task, hi)) {
    Search s(task, lo, hi);
    if (s.install_star(*choice.sphere, choice.m)) s.dfs(emit);
    nodes += s.nodes();
  }
  return nodes;
}

std::vector<std::vector<Facet>> split_prefixes(const EnumerationTask& task, int depth) {
  const auto [lo, hi] = effective_f1_range(task);
  std::vector<std::vector<Facet>> out;
  if (task.prefix) {
    Search s(task, lo, hi);
    replay_prefix(s, task, hi, *task.prefix);
    s.frontier(depth, out);
    return out;
  }
  for (const auto& choice : star_choices(task, hi)) {
    Search s(task, lo, hi);
    if (s.install_star(*choice.sphere, choice.m)) s.frontier(depth, out);
  }
  return out;
}

CensusRecord make_record(const Complex& k, std::string provenance) {
  CensusRecord r;
  auto canon = canonicalize(k);
  r.facets = std::move(canon.facets);
  r.digest = std::move(canon.digest);
  const Complex c = Complex::from_facets(r.facets);
  r.f = c.f_vector();
  r.g = g_vector(c);
  r.homology = integral_homology(c);
  r.missing_facet_count = missing_facets(c).size();
  r.provenance = std::move(provenance);
  return r;
}

namespace {

EnumerationResult finish(std::set<std::vector<Facet>>& found, const std::string& provenance, std::uint64_t nodes) {
  EnumerationResult result;
  result.stats.nodes = nodes;
  for (const auto& facets : found) {
    const Complex k = Complex::from_facets(facets);
    require_manifold(k, "enumeration output");
    result.records.push_back(make_record(k, provenance));
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const CensusRecord& a, const CensusRecord& b) { return a.digest < b.digest; });
  result.stats.records = result.records.size();
  for (const auto& r : result.records) {
    if (r.missing_facet_count == 0) ++result.stats.records_without_missing_facets;
  }
  return result;
}

}  // namespace

EnumerationResult enumerate(const EnumerationTask& task) {
  std::set<std::vector<Facet>> found;
  const auto nodes = enumerate_raw(task, [&](const std::vector<Facet>& f) { found.insert(f); });
  return finish(found, task.id(), nodes);
}

EnumerationResult enumerate_parallel(const EnumerationTask& task, int jobs, int split_depth) {
  if (jobs <= 1) return enumerate(task);
  const auto prefixes = split_prefixes(task, split_depth);
  std::set<std::vector<Facet>> found;
  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> nodes{0};
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < prefixes.size(); i = next++) {
        EnumerationTask sub = task;
        sub.prefix = prefixes[i];
        std::vector<std::vector<Facet>> local;
        nodes += enumerate_raw(sub, [&](const std::vector<Facet>& f) { local.push_back(f); });
        std::lock_guard lock(mutex);
        found.insert(local.begin(), local.end());
      }
    } catch (...) {
      std::lock_guard lock(mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return finish(found, task.id(), nodes);
}

// ---------------------------------------------------------------------------
// Predicates on partial complexes

PartialComplex::PartialComplex(std::span<const Facet> facets) {
  for (Facet f : facets) {
    f = sorted_facet(f);
    facets_.insert(f);
    max_label_ = std::max(max_label_, f[3]);
  }
  neighbors_.resize(max_label_ + 1);
  for (const auto& f : facets_) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        ++edge_facets_[pack_edge(f[i], f[j])];
        neighbors_[f[i]].insert(f[j]);
        neighbors_[f[j]].insert(f[i]);
        for (int k = 0; k < 4; ++k) {
          if (k != i && k != j) edge_links_[pack_edge(f[i], f[j])].insert(f[k]);
        }
      }
    }
    for (int skip = 0; skip < 4; ++skip) {
      Triangle t{};
      int n = 0;
      for (int i = 0; i < 4; ++i) {
        if (i != skip) t[n++] = f[i];
      }
      ++triangle_count_[pack_triangle(t[0], t[1], t[2])];
    }
  }
}

bool PartialComplex::has_edge(Vertex a, Vertex b) const { return edge_facets_.contains(pack_edge(a, b)); }

bool PartialComplex::has_triangle(Vertex a, Vertex b, Vertex c) const {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return triangle_count_.contains(pack_triangle(t[0], t[1], t[2]));
}

bool PartialComplex::has_facet(Facet f) const { return facets_.contains(sorted_facet(f)); }

std::vector<Vertex> PartialComplex::neighbors(Vertex v) const {
  if (v == 0 || v > max_label_) return {};
  return {neighbors_[v].begin(), neighbors_[v].end()};
}

int PartialComplex::vertex_degree(Vertex v) const {
  if (v == 0 || v > max_label_) return 0;
  return static_cast<int>(neighbors_[v].size());
}

int PartialComplex::edge_degree(Vertex a, Vertex b) const {
  auto it = edge_links_.find(pack_edge(a, b));
  return it == edge_links_.end() ? 0 : static_cast<int>(it->second.size());
}

bool PartialComplex::edge_finished(Vertex a, Vertex b) const {
  auto it = edge_links_.find(pack_edge(a, b));
  if (it == edge_links_.end()) return false;
  for (Vertex c : it->second) {
    Triangle t{a, b, c};
    std::sort(t.begin(), t.end());
    if (triangle_count_.at(pack_triangle(t[0], t[1], t[2])) != 2) return false;
  }
  return true;
}

bool PartialComplex::vertex_finished(Vertex v) const {
  if (v == 0 || v > max_label_ || neighbors_[v].empty()) return false;
  for (Vertex w : neighbors_[v]) {
    if (!edge_finished(v, w)) return false;
  }
  return true;
}

namespace {

struct Intersection {
  std::vector<Vertex> vertices;  // in both links, outside Lk(u,v)
  bool has_higher = false;       // an edge or triangle of both links outside Lk(u,v)
};

Intersection link_intersection(const PartialComplex& k, Vertex u, Vertex v) {
  Intersection out;
  const auto nu = k.neighbors(u);
  std::vector<Vertex> common;
  for (Vertex w : nu) {
    if (w != v && k.has_edge(v, w)) common.push_back(w);
  }
  for (Vertex w : common) {
    if (!k.has_triangle(u, v, w)) out.vertices.push_back(w);
  }
  for (std::size_t i = 0; i < common.size() && !out.has_higher; ++i) {
    for (std::size_t j = i + 1; j < common.size(); ++j) {
      const Vertex a = common[i];
      const Vertex b = common[j];
      if (k.has_triangle(u, a, b) && k.has_triangle(v, a, b) && !k.has_facet({u, v, a, b})) {
        out.has_higher = true;
        break;
      }
      // a triangle abc of both links
      for (std::size_t l = j + 1; l < common.size(); ++l) {
        if (k.has_facet({u, a, b, common[l]}) && k.has_facet({v, a, b, common[l]})) {
          out.has_higher = true;
          break;
        }
      }
      if (out.has_higher) break;
    }
  }
  return out;
}

}  // namespace

bool prune_edge_link(const PartialComplex& k, Edge e) {
  if (!k.edge_finished(e[0], e[1])) return true;
  return k.edge_degree(e[0], e[1]) >= 4;
}

bool prune_link_intersection(const PartialComplex& k, Edge e, IntersectionReading reading) {
  if (!k.vertex_finished(e[0]) || !k.vertex_finished(e[1])) return true;
  const auto x = link_intersection(k, e[0], e[1]);
  if (!x.vertices.empty()) return true;
  return reading == IntersectionReading::Simplices && x.has_higher;
}

bool prune_empty_triangle_in_link(const PartialComplex& k, Vertex u) {
  if (!k.vertex_finished(u)) return true;
  const auto nb = k.neighbors(u);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (!k.has_triangle(u, nb[i], nb[j])) continue;
      for (std::size_t l = j + 1; l < nb.size(); ++l) {
        if (k.has_triangle(u, nb[i], nb[l]) && k.has_triangle(u, nb[j], nb[l]) &&
            !k.has_facet({u, nb[i], nb[j], nb[l]})) {
          return false;
        }
      }
    }
  }
  return true;
}

bool prune_unique_w(const PartialComplex& k, Edge e, IntersectionReading reading) {
  const Vertex u = e[0];
  const Vertex v = e[1];
  if (!k.vertex_finished(u) || !k.vertex_finished(v)) return true;
  const auto x = link_intersection(k, u, v);
  if (x.vertices.size() != 1) return true;
  if (reading == IntersectionReading::Simplices && x.has_higher) return true;
  const Vertex w = x.vertices[0];
  const int duv = k.edge_degree(u, v);
  return k.edge_degree(u, w) >= duv && k.edge_degree(v, w) >= duv;
}

namespace {

SmallGraph reduced_link_graph(const PartialComplex& k, Vertex u, Vertex v) {
  const auto nb = k.neighbors(u);
  std::vector<Vertex> rest;
  for (Vertex w : nb) {
    if (w != v) rest.push_back(w);
  }
  SmallGraph g;
  g.n = static_cast<int>(rest.size());
  for (int a = 0; a < g.n; ++a) {
    for (int b = a + 1; b < g.n; ++b) {
      if (k.has_triangle(u, rest[a], rest[b])) g.add_edge(a, b);
    }
  }
  return g;
}

}  // namespace

std::optional<LinkType> classify_reduced_link(const PartialComplex& k, Vertex u, Vertex v) {
  const int du = k.vertex_degree(u);
  if (du < 6 || du > 9) {
    throw Error(Errc::DegreeOutOfRange, "vertex " + std::to_string(u) + " has degree " + std::to_string(du));
  }
  if (!k.has_edge(u, v)) throw Error(Errc::NotAFace, "edge " + std::to_string(u) + "," + std::to_string(v));
  const auto type = classify_graph(reduced_link_graph(k, u, v));
  if (!type) return std::nullopt;
  return link_type_catalog()[*type];
}

int degree_floor(const PartialComplex& k, Vertex u, Vertex v) {
  if (!k.has_edge(u, v)) throw Error(Errc::NotAFace, "edge " + std::to_string(u) + "," + std::to_string(v));
  const int du = k.vertex_degree(u);
  int floor = edge_degree_floor(du, k.edge_degree(u, v));
  if (du >= 6 && du <= 9) {
    if (const auto type = classify_graph(reduced_link_graph(k, u, v))) {
      floor = std::max(floor, type_degree_floor(link_type_catalog()[*type].name));
    }
  }
  return floor;
}

std::int64_t f1_floor(const PartialComplex& k, int f0, int base_floor) {
  std::vector<int> lb(static_cast<std::size_t>(f0) + 1, base_floor);
  for (Vertex u = 1; u <= static_cast<Vertex>(f0); ++u) {
    if (u <= k.max_label() && k.vertex_finished(u)) {
      for (Vertex v : k.neighbors(u)) {
        if (v <= static_cast<Vertex>(f0) && !k.vertex_finished(v)) lb[v] = std::max(lb[v], degree_floor(k, u, v));
      }
    }
  }
  std::int64_t sum = 0;
  for (Vertex v = 1; v <= static_cast<Vertex>(f0); ++v) {
    if (v <= k.max_label() && k.vertex_finished(v)) {
      sum += k.vertex_degree(v);
    } else {
      sum += std::max(lb[v], k.vertex_degree(v));
    }
  }
  return (sum + 1) / 2;
}

}  // namespace trimani
