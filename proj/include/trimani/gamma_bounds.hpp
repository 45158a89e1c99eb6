#pragma once

// Certificates for the bounds Γ(M) <= g2 and Γ*(M): neighborly triangulations
// with a Hamiltonian vertex link, flip paths to such triangulations, the
// 10·β1 lower bound, and a journal of best known bounds per manifold.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trimani/complex.hpp"
#include "trimani/facevec.hpp"
#include "trimani/moves.hpp"

namespace trimani {

bool is_neighborly(const Complex& k);

/// Simple graph given by adjacency lists on vertices 0..n-1.
using AdjacencyList = std::vector<std::vector<int>>;

/// A Hamiltonian cycle as a vertex sequence, or nothing after exhaustive
/// backtracking. Supports up to 64 vertices.
std::optional<std::vector<int>> hamiltonian_cycle(const AdjacencyList& graph);

/// Hamiltonian cycle in the 1-skeleton of Lk v, in vertex labels.
std::optional<std::vector<Vertex>> hamiltonian_cycle_in_link(const Complex& k, Vertex v);

/// g2(K) when K is neighborly and some vertex link has a Hamiltonian cycle.
std::optional<Integer> gamma_star_upper_direct(const Complex& k);

/// max{g2(K), binom(f0-1,2) - 4(f0-1) + 11} for a verified path of legal
/// moves at constant f0 ending in a neighborly, certified triangulation.
/// Throws PathInvalid or EndpointNotCertified.
Integer gamma_star_upper_via_path(const Complex& k, std::span<const MoveDescriptor> path);

/// Random walk of 1-moves (with 2-moves when stuck) towards a neighborly
/// triangulation on the same vertices; no completeness guarantee.
std::optional<std::vector<MoveDescriptor>> find_neighborly_path(const Complex& k, std::uint64_t max_steps, Rng& rng);

/// 10·β1, the d = 3 case of binom(d+2,2)·β1.
Integer gamma_lower(const Integer& beta1);
/// 10·β1 with β1 over Z_p.
Integer gamma_lower(const Complex& k, int p = 2);

/// One journal line: the bounds and witness contributed by one observation.
struct GammaUpdate {
  std::string key;  // HomologyProfile::key()
  std::string name;
  std::optional<Integer> gamma_lower;
  std::optional<Integer> gamma_upper;
  std::optional<Integer> gamma_star_upper;
  std::string witness;      // census digest, may be empty
  std::optional<GVector> g;  // g-vector of the witness

  std::string to_line() const;
  static GammaUpdate parse_line(std::string_view line);
};

struct MinimalWitness {
  GVector g;
  std::string digest;
};

struct GammaEntry {
  std::string key;
  std::string name;
  std::optional<Integer> gamma_lower;
  std::optional<Integer> gamma_upper;
  std::optional<Integer> gamma_star_upper;
  std::vector<std::string> witnesses;
  /// Witness g-vectors not dominated entrywise by another witness.
  std::vector<MinimalWitness> minimal;
};

/// The update a triangulation contributes: its g2 as upper bound, 10·β1
/// (over Z_2) as lower bound, and its direct Γ* certificate if any.
GammaUpdate witness_update(const Complex& k, std::string name = {});

class GammaLedger {
 public:
  /// Upsert: minimum uppers, maximum lowers, witnesses accumulate.
  void update(const GammaUpdate& u);
  std::optional<GammaEntry> query(const std::string& key, const std::string& name = {}) const;
  std::vector<GammaEntry> entries() const;

  /// Replays a journal; blank lines and lines starting with '#' are skipped.
  static GammaLedger load(std::istream& in);
  static GammaLedger load(const std::filesystem::path& path);
  /// Applies the update and appends its line to the journal file.
  void record(const GammaUpdate& u, const std::filesystem::path& journal);

 private:
  std::map<std::pair<std::string, std::string>, GammaEntry> entries_;
};

}  // namespace trimani
