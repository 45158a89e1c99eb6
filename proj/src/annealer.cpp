#include "trimani/annealer.hpp"

#include <limits>
#include <stdexcept>

namespace trimani {

bool smaller_f(const FVector3& a, const FVector3& b) {
  return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
}

namespace {

class Run {
 public:
  Run(const Complex& start, const SearchConfig& cfg) : engine_(start), rng_(cfg.seed), cfg_(cfg) {
    if (cfg.rounds < 1) throw Error(Errc::InvalidArgument, "rounds must be at least 1");
    if (cfg.f0_floor_offset) {
      floor_ = cfg.best_known_f0.value_or(static_cast<int>(start.vertex_count())) + *cfg.f0_floor_offset;
      constexpr auto big = std::numeric_limits<std::int64_t>::max();
      best_ = {big, big, big, big};
    } else {
      best_ = start.f_vector();
    }
  }

  SearchResult run() {
    SearchResult out;
    out.heat = heat();
    for (int r = 1; r <= cfg_.rounds; ++r) {
      RoundTrace t;
      t.round = r;
      t.mix = walk(cfg_.mix_weights, cfg_.mix_moves, false);
      commit(out, r, "mix");
      t.cool = walk(cfg_.cool_weights, cfg_.cool_moves, true);
      commit(out, r, "cool");
      t.best = best_;
      out.trace.push_back(t);
    }
    return out;
  }

 private:
  StageTrace heat() {
    StageTrace s;
    const auto target = (3 * static_cast<std::int64_t>(engine_.vertex_count()) + 1) / 2;
    while (engine_.vertex_count() < target) {
      const auto m = engine_.sample(cfg_.heat_weights, rng_);
      if (!m) {
        s.stalled = true;
        break;
      }
      step(*m);
      ++s.moves;
    }
    check_manifold();
    s.f_after = engine_.f_vector();
    return s;
  }

  StageTrace walk(const MoveWeights& weights, std::uint64_t budget, bool cooling) {
    StageTrace s;
    for (std::uint64_t i = 0; i < budget; ++i) {
      MoveWeights w = weights;
      if (cooling && floor_ > 0 && static_cast<int>(engine_.vertex_count()) - 1 < floor_) w[3] = Weight{0};
      const auto m = engine_.sample(w, rng_);
      if (!m) {
        s.stalled = true;
        break;
      }
      step(*m);
      ++s.moves;
    }
    check_manifold();
    s.f_after = engine_.f_vector();
    return s;
  }

  void step(const MoveDescriptor& m) {
    engine_.apply(m);
    const auto f = engine_.f_vector();
    if (++moves_ % 10000 == 0 && (f[2] != 2 * f[3] || f[0] - f[1] + f[2] - f[3] != 0)) {
      throw std::logic_error("face numbers of the flip engine drifted");
    }
    if (f[0] >= floor_ && smaller_f(f, pending_ ? pending_f_ : best_)) {
      pending_f_ = f;
      pending_ = engine_.snapshot();
    }
  }

  void commit(SearchResult& out, int round, const char* stage) {
    if (!pending_) return;
    out.best.push_back(make_record(*pending_, "anneal seed=" + std::to_string(cfg_.seed) + " round=" +
                                                  std::to_string(round) + " stage=" + stage));
    best_ = pending_f_;
    pending_.reset();
  }

  void check_manifold() {
    if (!validate(engine_.snapshot()).is_manifold()) throw std::logic_error("annealing left the manifold class");
  }

  FlipEngine engine_;
  Rng rng_;
  const SearchConfig& cfg_;
  std::int64_t floor_ = 0;
  FVector3 best_{};
  std::optional<Complex> pending_;
  FVector3 pending_f_{};
  std::uint64_t moves_ = 0;
};

}  // namespace

SearchResult anneal(const Complex& start, const SearchConfig& cfg) { return Run(start, cfg).run(); }

}  // namespace trimani
