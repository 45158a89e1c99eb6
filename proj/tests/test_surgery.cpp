#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "trimani/facevec.hpp"
#include "trimani/homology.hpp"
#include "trimani/surgery.hpp"

using namespace trimani;

namespace {

FaceVector fv(const Complex& k) { return f_from_complex(k); }

// Stacked sphere grown along a path: each new vertex subdivides the facet
// holding the three most recent vertices, so the 1-skeleton has a long diameter.
Complex stacked_path(int extra) {
  Complex k = boundary_of_4simplex();
  Facet last{2, 3, 4, 5};
  for (int i = 0; i < extra; ++i) {
    const Vertex x = k.vertex_count() + 1;
    k = subdivide(k, last);
    last = sorted_facet({last[1], last[2], last[3], x});
  }
  return k;
}

}  // namespace

TEST(Subdivide, BoundaryOfSimplex) {
  const Complex s = boundary_of_4simplex();
  for (const auto& f : s.facets()) {
    const Complex k = subdivide(s, f);
    EXPECT_EQ(k.f_vector(), (FVector3{6, 14, 16, 8}));
    EXPECT_TRUE(validate(k).is_manifold());
    EXPECT_EQ(k.facets().size(), 8U);
  }
}

TEST(Subdivide, GVectorDeltas) {
  Complex k = fixtures::load("rp3_11_51.tri");
  const auto g = g_vector(k);
  for (int n = 1; n <= 5; ++n) {
    k = subdivide(k, k.facets()[static_cast<std::size_t>(n) * 7 % k.facet_count()]);
    const auto gn = g_vector(k);
    EXPECT_EQ(gn[1], g[1] + n);
    EXPECT_EQ(gn[2], g[2]);
  }
}

TEST(Subdivide, RejectsNonFacet) {
  try {
    subdivide(boundary_of_4simplex(), {1, 2, 3, 6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAFacet);
  }
}

TEST(ConnectedSum, RP3WithItself) {
  const Complex k = fixtures::load("rp3_11_51.tri");
  const Facet a = k.facets()[0];
  const Facet b = k.facets()[1];
  const Complex s = connected_sum(k, k, FacetMatching::identity(a, b));
  EXPECT_EQ(s.f_vector(), (FVector3{18, 96, 156, 78}));
  EXPECT_EQ(g_vector(s).entries, (std::vector<Integer>{1, 13, 34}));
  EXPECT_EQ(integral_homology(s).to_string(), "Z, Z_2^2, 0, Z");
  const auto predicted = predict_surgery(fv(k), SurgeryOp::ConnectedSum, fv(k));
  EXPECT_EQ(fv(s), predicted.f);
  EXPECT_FALSE(missing_facets(s).empty());
}

TEST(ConnectedSum, WithBoundaryOfSimplexIsSubdivision) {
  const Complex k = fixtures::load("walkup9.tri");
  const Complex s = boundary_of_4simplex();
  const Facet a = k.facets()[3];
  const Complex sum = connected_sum(k, s, FacetMatching::identity(a, s.facets()[0]));
  EXPECT_EQ(sum.vertex_count(), k.vertex_count() + 1);
  EXPECT_EQ(g_vector(sum)[2], g_vector(k)[2]);
  EXPECT_EQ(g_vector(sum)[1], g_vector(k)[1] + g_vector(s)[1] + 1);
  EXPECT_EQ(canonicalize(sum).digest, canonicalize(subdivide(k, a)).digest);
}

TEST(ConnectedSum, MissingFacetContainsIdentifiedFacet) {
  const Complex k = fixtures::load("cyclic10.tri");
  const Facet a = k.facets()[5];
  const Complex sum = connected_sum(k, k, FacetMatching::reversed(a, k.facets()[9]));
  const auto missing = missing_facets(sum);
  EXPECT_NE(std::find(missing.begin(), missing.end(), a), missing.end());
  const auto h = integral_homology(sum);
  EXPECT_EQ(h.groups[1].betti, 2);
}

TEST(ConnectedSum, Rejections) {
  const Complex s = boundary_of_4simplex();
  try {
    connected_sum(s, s, FacetMatching::identity({1, 2, 3, 6}, {1, 2, 3, 4}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAFacet);
  }
}

TEST(AddHandle, BoundaryOfSimplexIsTooSmall) {
  const Complex s = boundary_of_4simplex();
  try {
    add_handle(s, FacetMatching::identity({1, 2, 3, 4}, {1, 2, 3, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FacetsShareVertices);
  }
  const Complex k = subdivide(subdivide(s, {1, 2, 3, 4}), {2, 3, 4, 5});
  const auto facets = k.facets();
  for (const auto& a : facets) {
    for (const auto& b : facets) {
      bool disjoint = true;
      for (Vertex x : a) disjoint = disjoint && std::find(b.begin(), b.end(), x) == b.end();
      if (!disjoint) continue;
      try {
        add_handle(k, FacetMatching::identity(a, b));
        FAIL();
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DistanceTooSmall);
        EXPECT_NE(std::string(e.what()).find("distance"), std::string::npos);
      }
    }
  }
}

TEST(AddHandle, StackedSphere) {
  const Complex k = stacked_path(14);
  const auto pairs = far_facet_pairs(k, 3, 4);
  ASSERT_FALSE(pairs.empty());
  for (const auto& [a, b] : pairs) {
    for (const auto& m : {FacetMatching::identity(a, b), FacetMatching::reversed(a, b)}) {
      const Complex h = add_handle(k, m);
      EXPECT_TRUE(validate(h).is_manifold());
      EXPECT_EQ(h.vertex_count(), k.vertex_count() - 4);
      EXPECT_EQ(g_vector(h)[2], g_vector(k)[2] + 10);
      EXPECT_EQ(fv(h), predict_surgery(fv(k), SurgeryOp::Handle).f);
      const auto hom = integral_homology(h);
      EXPECT_EQ(hom.groups[1].betti, 1);
      EXPECT_TRUE(hom.groups[1].torsion.empty());
    }
  }
}

TEST(AddHandle, BothOrientationsOccur) {
  const Complex k = stacked_path(14);
  const auto [a, b] = far_facet_pairs(k, 3, 1).front();
  bool seen[2] = {false, false};
  std::array<Vertex, 4> perm{0, 1, 2, 3};
  do {
    FacetMatching m = FacetMatching::identity(a, b);
    for (int i = 0; i < 4; ++i) m.pairing[i] = b[perm[i]];
    try {
      seen[orientable(add_handle(k, m)) ? 1 : 0] = true;
    } catch (const Error&) {
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_TRUE(seen[0]);
  EXPECT_TRUE(seen[1]);
}

TEST(MissingFacets, Examples) {
  EXPECT_TRUE(missing_facets(boundary_of_4simplex()).empty());
  EXPECT_TRUE(missing_facets(fixtures::load("rp3_11_51.tri")).empty());
  EXPECT_TRUE(missing_facets(fixtures::load("rp3_11_52.tri")).empty());
}

TEST(MissingFacets, RelabelingEquivariant) {
  const Complex k = fixtures::load("rp3_11_51.tri");
  const Complex s = connected_sum(k, k, FacetMatching::identity(k.facets()[4], k.facets()[20]));
  std::mt19937_64 rng(7);
  std::vector<Vertex> perm(s.vertex_count() + 1);
  std::iota(perm.begin(), perm.end(), 0U);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  const Complex r = relabel(s, perm);
  std::vector<Facet> mapped;
  for (const auto& f : missing_facets(s)) mapped.push_back(sorted_facet({perm[f[0]], perm[f[1]], perm[f[2]], perm[f[3]]}));
  std::sort(mapped.begin(), mapped.end());
  EXPECT_EQ(missing_facets(r), mapped);
}

TEST(SplitAtMissingFacet, UndoesConnectedSum) {
  const Complex k = fixtures::load("rp3_11_51.tri");
  const Facet a = k.facets()[0];
  const Complex s = connected_sum(k, k, FacetMatching::identity(a, k.facets()[30]));
  const auto split = split_at_missing_facet(s, a);
  ASSERT_TRUE(split.separating);
  ASSERT_EQ(split.pieces.size(), 2U);
  for (const auto& p : split.pieces) EXPECT_EQ(canonicalize(p).digest, canonicalize(k).digest);
}

TEST(SplitAtMissingFacet, HandleIsNotSeparating) {
  const Complex k = stacked_path(14);
  const auto [a, b] = far_facet_pairs(k, 3, 1).front();
  const Complex h = add_handle(k, FacetMatching::identity(a, b));
  const auto missing = missing_facets(h);
  ASSERT_FALSE(missing.empty());
  bool any_handle = false;
  for (const auto& m : missing) any_handle = any_handle || !split_at_missing_facet(h, m).separating;
  EXPECT_TRUE(any_handle);
}
