#include "trimani/gamma_bounds.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "trimani/homology.hpp"

namespace trimani {

bool is_neighborly(const Complex& k) {
  const std::int64_t n = k.vertex_count();
  return k.f_vector()[1] == n * (n - 1) / 2;
}

namespace {

using Mask = std::uint64_t;

struct HamSearch {
  int n = 0;
  std::vector<Mask> adj;
  std::vector<int> path;
  Mask visited = 0;

  // Every unvisited vertex needs two cycle neighbours among the unvisited
  // vertices and the two open path ends; a vertex with exactly two choices
  // forces both edges, so the path end must then be one of them.
  bool feasible(int end) const {
    const Mask open = ~visited & (n == 64 ? ~Mask{0} : (Mask{1} << n) - 1);
    const Mask ends = (Mask{1} << end) | (Mask{1} << path.front());
    int forced_to_end = 0;
    for (Mask r = open; r; r &= r - 1) {
      const int w = std::countr_zero(r);
      const Mask opts = adj[w] & (open | ends);
      const int c = std::popcount(opts);
      if (c < 2) return false;
      if (c == 2 && (opts >> end & 1) && end != path.front()) ++forced_to_end;
    }
    if (forced_to_end > 1) return false;
    // Unvisited vertices must stay connected to the end.
    Mask seen = Mask{1} << end, frontier = seen;
    const Mask allowed = open | seen;
    while (frontier) {
      Mask next = 0;
      for (Mask r = frontier; r; r &= r - 1) next |= adj[std::countr_zero(r)];
      next &= allowed & ~seen;
      seen |= next;
      frontier = next;
    }
    return (open & ~seen) == 0;
  }

  bool dfs(int end) {
    if (static_cast<int>(path.size()) == n) return adj[end] >> path.front() & 1;
    if (!feasible(end)) return false;
    const Mask open = ~visited;
    Mask cand = adj[end] & open;
    // Neighbours with exactly two remaining options must come next.
    for (Mask r = cand; r; r &= r - 1) {
      const int w = std::countr_zero(r);
      const Mask opts = adj[w] & (open | (Mask{1} << end) | (Mask{1} << path.front()));
      if (std::popcount(opts) == 2) {
        cand = Mask{1} << w;
        break;
      }
    }
    for (; cand; cand &= cand - 1) {
      const int w = std::countr_zero(cand);
      visited |= Mask{1} << w;
      path.push_back(w);
      if (dfs(w)) return true;
      path.pop_back();
      visited &= ~(Mask{1} << w);
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> hamiltonian_cycle(const AdjacencyList& graph) {
  const int n = static_cast<int>(graph.size());
  if (n > 64) throw Error(Errc::InvalidArgument, "Hamiltonian search supports at most 64 vertices");
  if (n < 3) return std::nullopt;
  HamSearch s;
  s.n = n;
  s.adj.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int w : graph[v]) {
      if (w < 0 || w >= n || w == v) throw Error(Errc::InvalidArgument, "bad adjacency entry");
      s.adj[v] |= Mask{1} << w;
      s.adj[w] |= Mask{1} << v;
    }
  }
  // Start at a vertex of minimum degree.
  int start = 0;
  for (int v = 1; v < n; ++v)
    if (std::popcount(s.adj[v]) < std::popcount(s.adj[start])) start = v;
  s.path = {start};
  s.visited = Mask{1} << start;
  if (!s.dfs(start)) return std::nullopt;
  return s.path;
}

std::optional<std::vector<Vertex>> hamiltonian_cycle_in_link(const Complex& k, Vertex v) {
  const auto link = k.link(Simplex{v});
  const auto verts = link.vertices();
  AdjacencyList g(verts.size());
  auto idx = [&](Vertex x) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), x) - verts.begin());
  };
  for (const auto& t : link.facets) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) g[idx(t[i])].push_back(idx(t[j]));
    }
  }
  const auto cycle = hamiltonian_cycle(g);
  if (!cycle) return std::nullopt;
  std::vector<Vertex> out;
  for (int i : *cycle) out.push_back(verts[i]);
  return out;
}

namespace {

bool certified(const Complex& k) {
  if (!is_neighborly(k)) return false;
  for (Vertex v = 1; v <= k.vertex_count(); ++v)
    if (hamiltonian_cycle_in_link(k, v)) return true;
  return false;
}

}  // namespace

std::optional<Integer> gamma_star_upper_direct(const Complex& k) {
  if (!certified(k)) return std::nullopt;
  return g_vector(k)[2];
}

Integer gamma_star_upper_via_path(const Complex& k, std::span<const MoveDescriptor> path) {
  FlipEngine engine(k);
  const auto f0 = engine.vertex_count();
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& m = path[i];
    if (m.kind != 1 && m.kind != 2)
      throw Error(Errc::PathInvalid, "step " + std::to_string(i) + " changes f0: " + m.to_string());
    if (!engine.is_legal(m))
      throw Error(Errc::PathInvalid, "step " + std::to_string(i) + " is not legal: " + m.to_string());
    engine.apply(m);
  }
  if (engine.vertex_count() != f0) throw Error(Errc::PathInvalid, "f0 changed along the path");
  if (!certified(engine.snapshot()))
    throw Error(Errc::EndpointNotCertified, "endpoint is not neighborly with a Hamiltonian vertex link");
  const Integer n = f0;
  const Integer via = (n - 1) * (n - 2) / 2 - 4 * (n - 1) + 11;
  const Integer g2 = g_vector(k)[2];
  return std::max(g2, via);
}

std::optional<std::vector<MoveDescriptor>> find_neighborly_path(const Complex& k, std::uint64_t max_steps,
                                                                 Rng& rng) {
  FlipEngine engine(k);
  const std::int64_t n = engine.vertex_count();
  const std::int64_t target = n * (n - 1) / 2;
  const MoveWeights up{Weight{0}, Weight{1}, Weight{0}, Weight{0}};
  const MoveWeights down{Weight{0}, Weight{0}, Weight{1}, Weight{0}};
  std::vector<MoveDescriptor> path;
  for (std::uint64_t step = 0; step < max_steps; ++step) {
    if (engine.f_vector()[1] == target) return path;
    auto m = engine.sample(up, rng);
    if (!m) m = engine.sample(down, rng);
    if (!m) return std::nullopt;
    engine.apply(*m);
    path.push_back(*m);
  }
  if (engine.f_vector()[1] == target) return path;
  return std::nullopt;
}

Integer gamma_lower(const Integer& beta1) { return g2_lower_bound(3, beta1); }

Integer gamma_lower(const Complex& k, int p) { return gamma_lower(Integer(betti_mod_p(k, p)[1])); }

namespace {

std::string opt_str(const std::optional<Integer>& x) { return x ? x->str() : std::string{}; }

std::optional<Integer> opt_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  try {
    return Integer(std::string(s));
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad integer in journal: " + std::string(s));
  }
}

}  // namespace

std::string GammaUpdate::to_line() const {
  std::string line = "key=" + key + ";name=" + name + ";glo=" + opt_str(gamma_lower) +
                     ";gup=" + opt_str(gamma_upper) + ";gsup=" + opt_str(gamma_star_upper) +
                     ";witness=" + witness;
  if (g) {
    line += ";g=";
    for (std::size_t i = 0; i < g->entries.size(); ++i) line += (i ? "," : "") + g->entries[i].str();
  }
  return line;
}

GammaUpdate GammaUpdate::parse_line(std::string_view line) {
  GammaUpdate u;
  bool has_key = false;
  while (!line.empty()) {
    const auto semi = line.find(';');
    const auto field = line.substr(0, semi);
    line = semi == std::string_view::npos ? std::string_view{} : line.substr(semi + 1);
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::ParseError, "journal field without '=': " + std::string(field));
    const auto name = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (name == "key") {
      u.key = value;
      has_key = true;
    } else if (name == "name") {
      u.name = value;
    } else if (name == "glo") {
      u.gamma_lower = opt_int(value);
    } else if (name == "gup") {
      u.gamma_upper = opt_int(value);
    } else if (name == "gsup") {
      u.gamma_star_upper = opt_int(value);
    } else if (name == "witness") {
      u.witness = value;
    } else if (name == "g") {
      if (value.empty()) continue;
      GVector g;
      std::string_view rest = value;
      while (true) {
        const auto comma = rest.find(',');
        g.entries.push_back(*opt_int(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      u.g = std::move(g);
    } else {
      throw Error(Errc::ParseError, "unknown journal field: " + std::string(name));
    }
  }
  if (!has_key || u.key.empty()) throw Error(Errc::ParseError, "journal line without key");
  return u;
}

GammaUpdate witness_update(const Complex& k, std::string name) {
  GammaUpdate u;
  u.key = integral_homology(k).key();
  u.name = std::move(name);
  const auto g = g_vector(k);
  u.gamma_lower = gamma_lower(k, 2);
  u.gamma_upper = g[2];
  u.gamma_star_upper = gamma_star_upper_direct(k);
  u.witness = canonicalize(k).digest;
  u.g = g;
  return u;
}

namespace {

void keep_min(std::optional<Integer>& slot, const std::optional<Integer>& x) {
  if (x && (!slot || *x < *slot)) slot = x;
}

void keep_max(std::optional<Integer>& slot, const std::optional<Integer>& x) {
  if (x && (!slot || *x > *slot)) slot = x;
}

bool dominates(const GVector& a, const GVector& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (a.entries[i] > b.entries[i]) return false;
  return true;
}

}  // namespace

void GammaLedger::update(const GammaUpdate& u) {
  auto& e = entries_[{u.key, u.name}];
  e.key = u.key;
  e.name = u.name;
  keep_max(e.gamma_lower, u.gamma_lower);
  keep_min(e.gamma_upper, u.gamma_upper);
  keep_min(e.gamma_star_upper, u.gamma_star_upper);
  if (!u.witness.empty() && std::find(e.witnesses.begin(), e.witnesses.end(), u.witness) == e.witnesses.end())
    e.witnesses.push_back(u.witness);
  if (u.g) {
    const bool covered = std::any_of(e.minimal.begin(), e.minimal.end(),
                                     [&](const MinimalWitness& w) { return dominates(w.g, *u.g); });
    if (!covered) {
      std::erase_if(e.minimal, [&](const MinimalWitness& w) { return dominates(*u.g, w.g); });
      e.minimal.push_back({*u.g, u.witness});
    }
  }
}

std::optional<GammaEntry> GammaLedger::query(const std::string& key, const std::string& name) const {
  if (auto it = entries_.find({key, name}); it != entries_.end()) return it->second;
  if (!name.empty()) return std::nullopt;
  // Without a name, a key shared by a single named entry still resolves.
  std::optional<GammaEntry> found;
  for (const auto& [k, e] : entries_) {
    if (k.first != key) continue;
    if (found) return std::nullopt;
    found = e;
  }
  return found;
}

std::vector<GammaEntry> GammaLedger::entries() const {
  std::vector<GammaEntry> out;
  for (const auto& [k, e] : entries_) out.push_back(e);
  return out;
}

GammaLedger GammaLedger::load(std::istream& in) {
  GammaLedger ledger;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    ledger.update(GammaUpdate::parse_line(line));
  }
  return ledger;
}

GammaLedger GammaLedger::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return {};
  return load(in);
}

void GammaLedger::record(const GammaUpdate& u, const std::filesystem::path& journal) {
  update(u);
  std::ofstream out(journal, std::ios::app);
  if (!out) throw Error(Errc::InvalidArgument, "cannot open journal " + journal.string());
  out << u.to_line() << '\n';
}

}  // namespace trimani
