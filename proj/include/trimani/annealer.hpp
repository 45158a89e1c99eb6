#pragma once

// Three-stage simulated annealing over bistellar moves: heat with 0-moves,
// then alternate mixing and cooling random walks, recording every smaller
// f-vector met along the way.

#include <cstdint>
#include <optional>
#include <vector>

#include "trimani/enumerator.hpp"
#include "trimani/moves.hpp"

namespace trimani {

struct SearchConfig {
  std::uint64_t seed = 0;
  MoveWeights heat_weights{Weight{1}, Weight{0}, Weight{0}, Weight{0}};
  MoveWeights mix_weights{Weight{0}, Weight{1}, Weight{5}, Weight{0}};
  MoveWeights cool_weights{Weight{0}, Weight{1}, Weight{250}, Weight::infinity()};
  std::uint64_t mix_moves = 10000;
  std::uint64_t cool_moves = 1000000;
  int rounds = 10;
  /// Cooling declines 3-moves that would take f0 below best_known_f0 + r.
  std::optional<int> f0_floor_offset;
  /// Defaults to f0 of the start complex.
  std::optional<int> best_known_f0;
};

struct StageTrace {
  FVector3 f_after{};
  std::uint64_t moves = 0;
  bool stalled = false;
};

struct RoundTrace {
  int round = 0;
  StageTrace mix;
  StageTrace cool;
  FVector3 best{};
};

struct SearchResult {
  /// Strictly decreasing in (f0, f1); one entry per stage that improved.
  std::vector<CensusRecord> best;
  StageTrace heat;
  std::vector<RoundTrace> trace;

  /// f-vector of the last record, or of the start complex when none.
  FVector3 best_f(const Complex& start) const {
    return best.empty() ? start.f_vector() : best.back().f;
  }
};

/// Lexicographic comparison on (f0, f1).
bool smaller_f(const FVector3& a, const FVector3& b);

SearchResult anneal(const Complex& start, const SearchConfig& cfg);

}  // namespace trimani
