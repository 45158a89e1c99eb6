#include "trimani/link_types.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "trimani/error.hpp"

namespace trimani {

namespace {

constexpr const char* kEmbeddedCatalog =
#include "link_types.inc"
    ;

bool extend(const SmallGraph& a, const SmallGraph& b, std::array<int, 32>& map, std::uint32_t used, int i) {
  if (i == a.n) return true;
  for (int j = 0; j < b.n; ++j) {
    if ((used >> j) & 1U) continue;
    if (a.degree(i) != b.degree(j)) continue;
    bool ok = true;
    for (int k = 0; k < i && ok; ++k) ok = a.has_edge(i, k) == b.has_edge(j, map[k]);
    if (!ok) continue;
    map[i] = j;
    if (extend(a, b, map, used | (1U << j), i + 1)) return true;
  }
  return false;
}

std::vector<int> degree_sequence(const SmallGraph& g) {
  std::vector<int> d(g.n);
  for (int i = 0; i < g.n; ++i) d[i] = g.degree(i);
  std::sort(d.begin(), d.end());
  return d;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error(Errc::ParseError, "bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

int SmallGraph::edge_count() const {
  int e = 0;
  for (int i = 0; i < n; ++i) e += degree(i);
  return e / 2;
}

bool isomorphic(const SmallGraph& a, const SmallGraph& b) {
  if (a.n != b.n || a.edge_count() != b.edge_count()) return false;
  if (degree_sequence(a) != degree_sequence(b)) return false;
  std::array<int, 32> map{};
  return extend(a, b, map, 0, 0);
}

std::vector<LinkType> parse_link_types(std::string_view text) {
  std::vector<LinkType> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    std::string nv;
    std::string nb;
    if (!(ls >> nv >> nb)) throw Error(Errc::ParseError, "link type '" + name + "' lacks sizes");
    LinkType t;
    t.name = name;
    t.graph.n = parse_int(nv);
    t.boundary = parse_int(nb);
    if (t.graph.n < 1 || t.graph.n > 32) throw Error(Errc::ParseError, "link type '" + name + "' has bad size");
    std::string edge;
    while (ls >> edge) {
      const auto dash = edge.find('-');
      if (dash == std::string::npos) throw Error(Errc::ParseError, "bad edge '" + edge + "'");
      const int a = parse_int(std::string_view(edge).substr(0, dash));
      const int b = parse_int(std::string_view(edge).substr(dash + 1));
      if (a < 0 || b < 0 || a >= t.graph.n || b >= t.graph.n || a == b) {
        throw Error(Errc::ParseError, "edge '" + edge + "' out of range in " + name);
      }
      t.graph.add_edge(a, b);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::span<const LinkType> link_type_catalog() {
  static const std::vector<LinkType> catalog = parse_link_types(kEmbeddedCatalog);
  return catalog;
}

std::optional<std::size_t> classify_graph(const SmallGraph& reduced) {
  const auto catalog = link_type_catalog();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (isomorphic(catalog[i].graph, reduced)) return i;
  }
  return std::nullopt;
}

int type_degree_floor(std::string_view name) {
  static const std::unordered_map<std::string_view, int> floors{
      {"9b(4')", 7}, {"9b(4'')", 7}, {"9c(4)", 7},                                          //
      {"8a(4)", 8},  {"8b(4)", 8},   {"9a(4)", 8},  {"9b(4)", 8}, {"9d(4)", 8},              //
      {"7(4)", 9},   {"9d(5)", 9},                                                          //
      {"6(4)", 10},  {"8b(5)", 10},  {"9b(5)", 10}, {"9c(5)", 10}, {"9c(5')", 10},           //
      {"9b(6)", 11}, {"9c(6)", 11},                                                         //
      {"7(5)", 12},                                                                         //
      {"8a(6)", 14},                                                                        //
      {"9a(7)", 16},
  };
  const auto it = floors.find(name);
  if (it == floors.end()) throw Error(Errc::InvalidArgument, "unknown link type '" + std::string(name) + "'");
  return it->second;
}

int edge_degree_floor(int du, int duv) {
  int floor = duv + 2;
  if ((du == 10 || du == 11) && duv == 5) floor = std::max(floor, 8);
  if (du == 10 && duv == 6) floor = std::max(floor, 10);
  if (du >= 11 && du <= 13 && duv == 6) floor = std::max(floor, 9);
  if (du >= 11 && du <= 15 && duv == 7) floor = std::max(floor, 10);
  return floor;
}

}  // namespace trimani
