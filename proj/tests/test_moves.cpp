#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "trimani/facevec.hpp"
#include "trimani/homology.hpp"
#include "trimani/moves.hpp"

using namespace trimani;

namespace {

std::array<std::size_t, 4> kind_counts(const std::vector<MoveDescriptor>& moves) {
  std::array<std::size_t, 4> out{};
  for (const auto& m : moves) ++out[m.kind];
  return out;
}

MoveWeights weights(std::initializer_list<Weight> w) {
  MoveWeights out{};
  std::copy(w.begin(), w.end(), out.begin());
  return out;
}

}  // namespace

TEST(Rng, BoundedDrawsAreReproducible) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.below(7);
    EXPECT_LT(x, 7U);
    EXPECT_EQ(x, b.below(7));
  }
  // the first raw output of mt19937_64 with the default seed is fixed by the standard
  std::mt19937_64 reference(5489U);
  Rng c(5489U);
  EXPECT_EQ(c.next(), reference());
  EXPECT_THROW(Rng(1).below(0), Error);
}

TEST(Weights, Parse) {
  const auto w = parse_weights("0,1,250,inf");
  EXPECT_EQ(w[0].value, 0U);
  EXPECT_EQ(w[2].value, 250U);
  EXPECT_TRUE(w[3].infinite);
  EXPECT_THROW(parse_weights("1,2,3"), Error);
  EXPECT_THROW(parse_weights("1,2,3,-4"), Error);
}

TEST(LegalMoves, BoundaryOfSimplex) {
  const auto moves = legal_moves(boundary_of_4simplex());
  EXPECT_EQ(kind_counts(moves), (std::array<std::size_t, 4>{5, 0, 0, 0}));
  for (const auto& m : moves) EXPECT_EQ(m.replacement_b, Simplex({6}));
}

TEST(LegalMoves, InverseOfSubdivisionIsListed) {
  const Complex s = boundary_of_4simplex();
  const MoveDescriptor m{0, Simplex({1, 2, 3, 4}), Simplex({6})};
  const Complex k = apply(s, m);
  EXPECT_EQ(k.f_vector(), (FVector3{6, 14, 16, 8}));
  const auto moves = legal_moves(k);
  const auto inv = inverse(s, m);
  EXPECT_EQ(inv.kind, 3);
  EXPECT_NE(std::find(moves.begin(), moves.end(), inv), moves.end());
  EXPECT_EQ(apply(k, inv), s);
}

TEST(LegalMoves, InvariantUnderRelabeling) {
  const Complex k = fixtures::load("rp3_11_51.tri");
  const auto base = kind_counts(legal_moves(k));
  std::mt19937_64 rng(5);
  for (int r = 0; r < 5; ++r) {
    std::vector<Vertex> perm(k.vertex_count() + 1);
    std::iota(perm.begin(), perm.end(), 0U);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    EXPECT_EQ(kind_counts(legal_moves(relabel(k, perm))), base);
  }
}

TEST(Apply, IllegalMovesAreRejectedWithReason) {
  const Complex s = boundary_of_4simplex();
  auto expect_illegal = [&](const Complex& k, const MoveDescriptor& m, const std::string& reason) {
    try {
      apply(k, m);
      FAIL() << m.to_string();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::IllegalMove);
      EXPECT_NE(std::string(e.what()).find(reason), std::string::npos) << e.what();
    }
  };
  expect_illegal(s, {1, Simplex({1, 2, 3}), Simplex({4, 5})}, "B is a face");
  expect_illegal(s, {1, Simplex({1, 2, 3}), Simplex({4, 6})}, "link mismatch");
  expect_illegal(s, {3, Simplex({1}), Simplex({2, 3, 4, 5})}, "B is a face");
  expect_illegal(s, {0, Simplex({1, 2, 3, 4}), Simplex({9})}, "fresh vertex");
  expect_illegal(s, {0, Simplex({1, 2, 3}), Simplex({6})}, "kind");
}

TEST(Apply, FaceVectorDeltas) {
  const Complex k = fixtures::load("cyclic10.tri");
  const auto g = g_vector(k);
  for (const auto& m : legal_moves(k)) {
    const Complex r = apply(k, m);
    const auto gr = g_vector(r);
    switch (m.kind) {
      case 0:
        EXPECT_EQ(gr[1], g[1] + 1);
        EXPECT_EQ(gr[2], g[2]);
        break;
      case 1:
        EXPECT_EQ(r.f_vector()[1], k.f_vector()[1] + 1);
        EXPECT_EQ(gr[2], g[2] + 1);
        break;
      case 2:
        EXPECT_EQ(gr[2], g[2] - 1);
        break;
      default:
        EXPECT_EQ(gr[1], g[1] - 1);
    }
  }
}

TEST(Apply, InverseRestoresDigest) {
  Complex k = barycentric_subdivide(boundary_of_4simplex());
  Rng rng(9);
  const MoveWeights w = weights({Weight{1}, Weight{3}, Weight{3}, Weight{3}});
  for (int i = 0; i < 60; ++i) {
    const auto m = weighted_random_move(k, w, rng);
    ASSERT_TRUE(m.has_value());
    const Complex r = apply(k, *m);
    const auto inv = inverse(k, *m);
    EXPECT_EQ(canonicalize(apply(r, inv)).digest, canonicalize(k).digest) << m->to_string();
    k = r;
  }
}

TEST(WeightedRandomMove, Examples) {
  Rng rng(1);
  const Complex k = fixtures::load("walkup9.tri");
  for (int i = 0; i < 20; ++i) EXPECT_EQ(weighted_random_move(k, weights({Weight{1}, {}, {}, {}}), rng)->kind, 0);
  const Complex sub = apply(k, {0, Simplex(k.facets()[0]), Simplex({10})});
  const auto cool = weights({Weight{0}, Weight{1}, Weight{250}, Weight::infinity()});
  for (int i = 0; i < 20; ++i) EXPECT_EQ(weighted_random_move(sub, cool, rng)->kind, 3);
  try {
    weighted_random_move(k, weights({{}, {}, {}, {}}), rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidWeights);
  }
  // no 1-, 2- or 3-moves on the boundary of the simplex
  EXPECT_FALSE(weighted_random_move(boundary_of_4simplex(), cool, rng).has_value());
}

TEST(WeightedRandomMove, KindFrequenciesFollowWeights) {
  Complex k = barycentric_subdivide(boundary_of_4simplex());
  Rng walk(2);
  for (int i = 0; i < 20; ++i) k = apply(k, *weighted_random_move(k, weights({Weight{0}, Weight{1}, {}, {}}), walk));
  const auto counts = kind_counts(legal_moves(k));
  ASSERT_GT(counts[1], 0U);
  ASSERT_GT(counts[2], 0U);
  Rng rng(3);
  const auto w = weights({Weight{0}, Weight{1}, Weight{5}, Weight{0}});
  int twos = 0;
  const int trials = 4000;
  for (int i = 0; i < trials; ++i) twos += weighted_random_move(k, w, rng)->kind == 2;
  const double expected = 5.0 * counts[2] / (counts[1] + 5.0 * counts[2]);
  EXPECT_NEAR(static_cast<double>(twos) / trials, expected, 0.03);
}

TEST(FlipEngine, TracksPureFunctions) {
  const Complex start = barycentric_subdivide(fixtures::load("walkup9.tri"));
  FlipEngine engine(start);
  Complex k = start;
  Rng rng(17);
  const auto w = weights({Weight{1}, Weight{2}, Weight{4}, Weight{8}});
  for (int i = 0; i < 150; ++i) {
    const auto m = engine.sample(w, rng);
    ASSERT_TRUE(m.has_value());
    engine.apply(*m);
    k = apply(k, *m);
    ASSERT_EQ(engine.snapshot(), k) << i;
    if (i % 25 == 0) ASSERT_TRUE(engine.consistent()) << i;
  }
  EXPECT_TRUE(engine.consistent());
  EXPECT_EQ(integral_homology(k), integral_homology(start));
}

TEST(FlipEngine, RejectsIllegalMoves) {
  FlipEngine engine(boundary_of_4simplex());
  EXPECT_THROW(engine.apply({3, Simplex({1}), Simplex({2, 3, 4, 5})}), Error);
  EXPECT_EQ(engine.available(), (std::array<std::size_t, 4>{5, 0, 0, 0}));
}

TEST(FlipEngine, RandomWalkPreservesInvariants) {
  const std::vector<Complex> seeds{barycentric_subdivide(boundary_of_4simplex()), fixtures::load("walkup9.tri"),
                                   fixtures::load("cyclic10.tri"), fixtures::load("rp3_11_51.tri")};
  const auto w = weights({Weight{1}, Weight{3}, Weight{3}, Weight{2}});
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    FlipEngine engine(seeds[s]);
    Rng rng(s);
    const auto homology = integral_homology(seeds[s]);
    for (int i = 0; i < 400; ++i) {
      engine.apply(*engine.sample(w, rng));
      const auto f = engine.f_vector();
      ASSERT_EQ(f[2], 2 * f[3]);
      ASSERT_EQ(f[0] - f[1] + f[2] - f[3], 0);
    }
    const Complex k = engine.snapshot();
    EXPECT_TRUE(validate(k).is_manifold());
    EXPECT_EQ(integral_homology(k), homology);
    EXPECT_TRUE(engine.consistent());
  }
}
