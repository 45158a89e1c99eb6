#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "trimani/enumerator.hpp"
#include "trimani/surgery.hpp"

using namespace trimani;

namespace {

EnumerationTask task(int f0, std::int64_t lo, std::int64_t hi, RuleSet rules = RuleSet::all()) {
  EnumerationTask t;
  t.f0 = f0;
  t.f1_lo = lo;
  t.f1_hi = hi;
  t.rules = rules;
  return t;
}

std::set<std::string> digests(const EnumerationResult& r) {
  std::set<std::string> out;
  for (const auto& rec : r.records) out.insert(rec.digest);
  return out;
}

const EnumerationResult& census11() {
  static const EnumerationResult r = enumerate(task(11, 51, 54));
  return r;
}

std::vector<Edge> all_edges(const Complex& k) { return k.edges(); }

}  // namespace

TEST(RuleSet, ParseAndPrint) {
  EXPECT_EQ(RuleSet::parse("all"), RuleSet::all());
  EXPECT_EQ(RuleSet::parse("none"), RuleSet::none());
  const auto r = RuleSet::parse("L10_1,L11_1");
  EXPECT_TRUE(r.has(Rule::L10_1));
  EXPECT_TRUE(r.has(Rule::L11_1));
  EXPECT_FALSE(r.has(Rule::L10_7));
  EXPECT_EQ(r.to_string(), "L10_1,L11_1");
  EXPECT_EQ(RuleSet::parse(RuleSet::all().without(Rule::L10_7).to_string()), RuleSet::all().without(Rule::L10_7));
  EXPECT_THROW(RuleSet::parse("L10_9"), Error);
}

TEST(SphereCatalog, CountsOfTriangulatedSpheres) {
  const std::map<int, std::size_t> known{{4, 1}, {5, 1}, {6, 2}, {7, 5}, {8, 14}, {9, 50}, {10, 233}};
  for (const auto& [m, count] : known) EXPECT_EQ(sphere_catalog(m, 3, false).size(), count) << m;
  // minimum degree four: octahedron, then one with 7 vertices, two with 8
  EXPECT_EQ(sphere_catalog(6, 4, false).size(), 1U);
  EXPECT_EQ(sphere_catalog(7, 4, false).size(), 1U);
  EXPECT_EQ(sphere_catalog(8, 4, false).size(), 2U);
  // the icosahedron is the only one with minimum degree five below 13 vertices
  EXPECT_EQ(sphere_catalog(12, 5, false).size(), 1U);
}

TEST(SphereCatalog, EntriesAreSpheres) {
  for (const auto& s : sphere_catalog(9, 3, false)) {
    EXPECT_EQ(s.size(), 14U);
    std::map<std::pair<Vertex, Vertex>, int> edges;
    for (const auto& t : s) {
      ++edges[{t[0], t[1]}];
      ++edges[{t[0], t[2]}];
      ++edges[{t[1], t[2]}];
    }
    EXPECT_EQ(edges.size(), 21U);
    for (const auto& [e, c] : edges) EXPECT_EQ(c, 2);
  }
}

TEST(EffectiveRange, ClipsAndRejects) {
  EXPECT_EQ(effective_f1_range(task(11, 0, 1000)), (std::pair<std::int64_t, std::int64_t>{22, 55}));
  auto t = task(16, 0, 1000);
  t.g2_cap = 20;
  EXPECT_EQ(effective_f1_range(t), (std::pair<std::int64_t, std::int64_t>{73, 74}));
  try {
    enumerate(task(11, 70, 80));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InfeasibleTask);
  }
}

TEST(Enumerate, ElevenVertices) {
  const auto& r = census11();
  ASSERT_EQ(r.records.size(), 2U);
  std::multiset<std::int64_t> f1;
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.homology.to_string(), "Z, Z_2, 0, Z");
    EXPECT_EQ(rec.missing_facet_count, 0U);
    EXPECT_TRUE(validate(rec.complex()).is_manifold());
    f1.insert(rec.f[1]);
  }
  EXPECT_EQ(f1, (std::multiset<std::int64_t>{51, 52}));
  EXPECT_TRUE(std::is_sorted(r.records.begin(), r.records.end(),
                             [](const auto& a, const auto& b) { return a.digest < b.digest; }));
}

TEST(Enumerate, ElevenVertexFixtureIsFound) {
  const auto found = digests(census11());
  EXPECT_TRUE(found.contains(canonicalize(fixtures::load("rp3_11_51.tri")).digest));
  EXPECT_TRUE(found.contains(canonicalize(fixtures::load("rp3_11_52.tri")).digest));
}

TEST(Enumerate, TwelveVertices) {
  const auto r = enumerate(task(12, 55, 66));
  std::map<std::string, int> by_homology;
  std::map<std::string, std::set<std::int64_t>> f1;
  for (const auto& rec : r.records) {
    ++by_homology[rec.homology.to_string()];
    f1[rec.homology.to_string()].insert(rec.f[1]);
  }
  EXPECT_EQ(r.records.size(), 7U);
  EXPECT_EQ(by_homology["Z, Z, Z_2, 0"], 2);
  EXPECT_EQ(by_homology["Z, Z_2, 0, Z"], 4);
  EXPECT_EQ(by_homology["Z, Z_3, 0, Z"], 1);
  EXPECT_EQ(f1["Z, Z, Z_2, 0"], std::set<std::int64_t>{60});
  EXPECT_EQ(f1["Z, Z_2, 0, Z"], std::set<std::int64_t>{60});
  EXPECT_EQ(f1["Z, Z_3, 0, Z"], std::set<std::int64_t>{66});
}

TEST(Enumerate, UnprunedSmallCensus) {
  // all combinatorial 3-manifolds with 6, 7 and 8 vertices are spheres: 2, 5 and 39 of them
  const std::map<int, std::size_t> known{{6, 2}, {7, 5}, {8, 39}};
  for (const auto& [n, count] : known) {
    const auto r = enumerate(task(n, 0, 100, RuleSet::none()));
    EXPECT_EQ(r.records.size(), count) << n;
    for (const auto& rec : r.records) EXPECT_EQ(rec.homology.to_string(), "Z, 0, 0, Z");
  }
}

TEST(Enumerate, Deterministic) {
  const auto a = enumerate(task(11, 51, 54));
  ASSERT_EQ(a.records.size(), census11().records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].facets, census11().records[i].facets);
  EXPECT_EQ(a.stats.nodes, census11().stats.nodes);
}

TEST(Enumerate, PrefixSplitUnionEqualsMonolithicRun) {
  for (int depth : {1, 3}) {
    const auto t = task(11, 51, 54);
    std::set<std::string> merged;
    for (const auto& prefix : split_prefixes(t, depth)) {
      auto sub = t;
      sub.prefix = prefix;
      for (const auto& d : digests(enumerate(sub))) merged.insert(d);
    }
    EXPECT_EQ(merged, digests(census11())) << depth;
  }
  const auto unpruned = task(8, 0, 28, RuleSet::none());
  std::set<std::string> merged;
  for (const auto& prefix : split_prefixes(unpruned, 2)) {
    auto sub = unpruned;
    sub.prefix = prefix;
    for (const auto& d : digests(enumerate(sub))) merged.insert(d);
  }
  EXPECT_EQ(merged, digests(enumerate(unpruned)));
}

TEST(Enumerate, ParallelMatchesSerial) {
  EXPECT_EQ(digests(enumerate_parallel(task(11, 51, 54), 4, 2)), digests(census11()));
}

TEST(Enumerate, DisablingRulesOnlyAddsRecords) {
  const auto base = digests(census11());
  for (Rule r : {Rule::L10_7, Rule::F1_BOUND, Rule::L11_1, Rule::L10_2}) {
    const auto relaxed = digests(enumerate(task(11, 51, 54, RuleSet::all().without(r))));
    EXPECT_TRUE(std::includes(relaxed.begin(), relaxed.end(), base.begin(), base.end()));
  }
}

TEST(Enumerate, VertexReadingAgreesOnElevenVertices) {
  auto t = task(11, 51, 54);
  t.reading = IntersectionReading::Vertices;
  EXPECT_EQ(digests(enumerate(t)), digests(census11()));
}

TEST(Enumerate, InvalidPrefix) {
  auto t = task(11, 51, 54);
  t.prefix = std::vector<Facet>{{2, 3, 4, 5}};
  try {
    enumerate(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidPrefix);
  }
  auto prefix = split_prefixes(task(11, 51, 54), 1).front();
  prefix.push_back({9, 10, 11, 12});
  t.prefix = prefix;
  EXPECT_THROW(enumerate(t), Error);
}

TEST(Enumerate, RecordsSatisfyEveryRulePostHoc) {
  for (const auto& rec : census11().records) {
    const PartialComplex k(rec.facets);
    for (const auto& e : all_edges(rec.complex())) {
      EXPECT_TRUE(prune_edge_link(k, e));
      EXPECT_TRUE(prune_link_intersection(k, e));
      EXPECT_TRUE(prune_unique_w(k, e));
      EXPECT_TRUE(prune_unique_w(k, {e[1], e[0]}));
    }
    for (Vertex v = 1; v <= 11; ++v) EXPECT_TRUE(prune_empty_triangle_in_link(k, v));
  }
}

TEST(PrunePredicates, EdgeLink) {
  const PartialComplex s = PartialComplex::from(boundary_of_4simplex());
  EXPECT_FALSE(prune_edge_link(s, {1, 2}));
  const PartialComplex k = PartialComplex::from(fixtures::load("rp3_11_51.tri"));
  for (const auto& e : fixtures::load("rp3_11_51.tri").edges()) EXPECT_TRUE(prune_edge_link(k, e));
  // an unfinished edge is kept
  const std::vector<Facet> partial{{1, 2, 3, 4}, {1, 2, 3, 5}};
  EXPECT_TRUE(prune_edge_link(PartialComplex(partial), {1, 2}));
}

TEST(PrunePredicates, LinkIntersectionReadings) {
  // in the boundary of the 4-simplex the links of 1 and 2 share the triangle 345,
  // which is not in the link of the edge; as vertex sets the difference is empty
  const PartialComplex s = PartialComplex::from(boundary_of_4simplex());
  EXPECT_TRUE(prune_link_intersection(s, {1, 2}, IntersectionReading::Simplices));
  EXPECT_FALSE(prune_link_intersection(s, {1, 2}, IntersectionReading::Vertices));
  // in the connected sum along 1234 the links of 1 and 2 share the edge 34 outside
  // Lk(1,2), but no vertex; the links of 1 and 5 meet exactly in Lk(1,5)
  const Complex sum = connected_sum(boundary_of_4simplex(), boundary_of_4simplex(),
                                    FacetMatching::identity({1, 2, 3, 4}, {1, 2, 3, 4}));
  const PartialComplex c = PartialComplex::from(sum);
  EXPECT_TRUE(prune_link_intersection(c, {1, 2}, IntersectionReading::Simplices));
  EXPECT_FALSE(prune_link_intersection(c, {1, 2}, IntersectionReading::Vertices));
  EXPECT_FALSE(prune_link_intersection(c, {1, 5}));
  const std::vector<Facet> partial{{1, 2, 3, 4}};
  EXPECT_TRUE(prune_link_intersection(PartialComplex(partial), {1, 2}));
}

TEST(PrunePredicates, EmptyTriangle) {
  const Complex sum = connected_sum(boundary_of_4simplex(), boundary_of_4simplex(),
                                    FacetMatching::identity({1, 2, 3, 4}, {1, 2, 3, 4}));
  const PartialComplex c = PartialComplex::from(sum);
  // the identified facet leaves the empty triangle 234 in the link of 1
  EXPECT_FALSE(prune_empty_triangle_in_link(c, 1));
  EXPECT_TRUE(prune_empty_triangle_in_link(c, 5));
  const PartialComplex x = PartialComplex::from(fixtures::load("rp3_11_51.tri"));
  for (Vertex v = 1; v <= 11; ++v) EXPECT_TRUE(prune_empty_triangle_in_link(x, v));
  // the 9-vertex neighborly bundle is not irreducible in this sense
  const PartialComplex w = PartialComplex::from(fixtures::load("walkup9.tri"));
  bool any_empty = false;
  for (Vertex v = 1; v <= 9; ++v) any_empty = any_empty || !prune_empty_triangle_in_link(w, v);
  EXPECT_TRUE(any_empty);
}

TEST(PrunePredicates, UniqueWMatchesDirectComputation) {
  // every edge of every 8-vertex sphere, checked against links computed by the complex
  std::size_t single = 0;
  std::size_t pruned = 0;
  for (const auto& rec : enumerate(task(8, 0, 28, RuleSet::none())).records) {
    const Complex k = rec.complex();
    const PartialComplex p(rec.facets);
    for (const auto& e : k.edges()) {
      for (const auto& [u, v] : {std::pair{e[0], e[1]}, std::pair{e[1], e[0]}}) {
        const auto lu = k.link(Simplex({u})).vertices();
        const auto lv = k.link(Simplex({v})).vertices();
        const auto luv = k.link(Simplex({u, v})).vertices();
        std::vector<Vertex> w;
        for (Vertex x : lu) {
          if (x != v && std::binary_search(lv.begin(), lv.end(), x) && !std::binary_search(luv.begin(), luv.end(), x)) {
            w.push_back(x);
          }
        }
        bool expected = true;
        if (w.size() == 1) {
          ++single;
          expected = k.edge_degree(u, w[0]) >= k.edge_degree(u, v) && k.edge_degree(v, w[0]) >= k.edge_degree(u, v);
        }
        if (w.size() == 1 && !expected) ++pruned;
        EXPECT_EQ(prune_unique_w(p, {u, v}, IntersectionReading::Vertices), expected);
      }
    }
  }
  EXPECT_GT(single, 0U);
  EXPECT_GT(pruned, 0U);
}

TEST(F1Floor, FinishedComplexIsExact) {
  const PartialComplex s = PartialComplex::from(boundary_of_4simplex());
  EXPECT_EQ(f1_floor(s, 5, 4), 10);
  const PartialComplex k = PartialComplex::from(fixtures::load("rp3_11_51.tri"));
  EXPECT_EQ(f1_floor(k, 11, 4), 51);
}

TEST(F1Floor, MonotoneAndSound) {
  std::mt19937_64 rng(11);
  for (const auto& rec : census11().records) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Facet> facets = rec.facets;
      std::shuffle(facets.begin(), facets.end(), rng);
      std::int64_t last = 0;
      for (std::size_t n = 1; n <= facets.size(); ++n) {
        const PartialComplex p(std::span<const Facet>(facets.data(), n));
        const auto floor = f1_floor(p, 11, 4);
        EXPECT_GE(floor, last);
        EXPECT_LE(floor, rec.f[1]);
        last = floor;
      }
      EXPECT_EQ(last, rec.f[1]);
    }
  }
}
