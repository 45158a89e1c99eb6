#pragma once

// Bistellar i-moves on closed 3-manifold triangulations, as pure functions on
// Complex values and as an incremental engine for long random walks.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trimani/complex.hpp"

namespace trimani {

/// Φ_A replaces A * ∂B by ∂A * B. For a 0-move B is the fresh vertex f0+1.
struct MoveDescriptor {
  int kind = 0;
  Simplex face_a;
  Simplex replacement_b;

  std::string to_string() const;
  friend bool operator==(const MoveDescriptor&, const MoveDescriptor&) = default;
  friend auto operator<=>(const MoveDescriptor& a, const MoveDescriptor& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.face_a <=> b.face_a; c != 0) return c;
    return a.replacement_b <=> b.replacement_b;
  }
};

/// Seeded generator: std::mt19937_64, and bounded draws by rejection of the
/// top partial range followed by reduction mod n, so sequences are identical
/// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// A kind weight: a nonnegative integer or infinity (priority class).
struct Weight {
  std::uint64_t value = 0;
  bool infinite = false;

  static Weight infinity() { return {0, true}; }
  static Weight parse(std::string_view text);
  std::string to_string() const;
  friend bool operator==(const Weight&, const Weight&) = default;
};

using MoveWeights = std::array<Weight, 4>;

/// Parses "w0,w1,w2,w3" where each entry is an integer or "inf".
MoveWeights parse_weights(std::string_view text);

/// Every legal move, sorted.
std::vector<MoveDescriptor> legal_moves(const Complex& k);

/// Throws IllegalMove naming the reason when m is not legal in k.
void check_legal(const Complex& k, const MoveDescriptor& m);

/// Φ_A(K). A 3-move removes vertex A; the vertex f0 then takes its label.
Complex apply(const Complex& k, const MoveDescriptor& m);

/// The move undoing m on apply(k, m), in the labels of the result.
MoveDescriptor inverse(const Complex& k, const MoveDescriptor& m);

/// Chooses a kind with probability proportional to weight times availability
/// (infinite kinds first), then a move of that kind uniformly. Returns nothing
/// when no weighted kind has a legal move. Throws InvalidWeights when every
/// weight is zero.
std::optional<MoveDescriptor> weighted_random_move(const Complex& k, const MoveWeights& weights, Rng& rng);

/// Mutable triangulation with incrementally maintained move candidates.
/// Labels stay contiguous: a 3-move hands the label of vertex f0 to the
/// removed vertex.
class FlipEngine {
 public:
  explicit FlipEngine(const Complex& k);
  ~FlipEngine();
  FlipEngine(FlipEngine&&) noexcept;
  FlipEngine& operator=(FlipEngine&&) noexcept;

  Vertex vertex_count() const;
  FVector3 f_vector() const;
  /// Number of legal moves of each kind.
  std::array<std::size_t, 4> available() const;

  std::optional<MoveDescriptor> sample(const MoveWeights& weights, Rng& rng) const;
  bool is_legal(const MoveDescriptor& m) const;
  /// Applies a legal move; throws IllegalMove otherwise.
  void apply(const MoveDescriptor& m);

  Complex snapshot() const;
  /// Recomputes every candidate set from scratch and compares (testing aid).
  bool consistent() const;

 private:
  struct State;
  std::unique_ptr<State> s_;
};

}  // namespace trimani
