#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "voleak/index.hpp"
#include "voleak/rng.hpp"

namespace voleak {

enum class LeakageMode { kExact, kTiered, kAdditiveNoise, kBlockBatched };

struct LeakageConfig {
  LeakageMode mode = LeakageMode::kExact;

  // Tiered padding: powers of tier_base, or an explicit increasing tier
  // list (tier_list wins when non-empty).
  std::uint32_t tier_base = 2;
  std::vector<std::uint64_t> tier_list;

  // Additive noise: per-observation draw in [0, noise_max]. When cumulative,
  // the channel models server-side dummy entries that persist, so the noise
  // total is nondecreasing and each observation adds a fresh increment.
  std::uint64_t noise_max = 0;
  bool noise_cumulative = false;

  std::uint64_t block_size = 1;  // block_batched: results per block

  std::optional<std::uint64_t> pagination_cap;

  void validate() const;  // throws std::invalid_argument
};

struct ObservedCount {
  std::uint64_t value = 0;
};

// Smallest tier >= n; n = 0 pads to the smallest tier (a non-existent
// keyword still produces a response of size 1).
std::uint64_t pad_tier(std::uint64_t n, const LeakageConfig& cfg);

// Largest tier strictly below t, or 0 when t is the smallest tier. For a
// tiered observation t the true count lies in (prev_tier(t), t].
std::uint64_t prev_tier(std::uint64_t t, const LeakageConfig& cfg);

// Pure single observation; noise_draw is the caller-supplied noise value
// (ignored outside additive_noise mode). Pagination applies last.
std::uint64_t observe_once(std::uint64_t n, const LeakageConfig& cfg,
                           std::uint64_t noise_draw);

// Stateful channel owned by one experiment: holds the rng stream and, in
// cumulative-noise mode, the running noise total. An optional scripted
// noise sequence overrides the rng draws (used for adversarial worst-case
// noise in tests and experiments).
class LeakageChannel {
 public:
  LeakageChannel(LeakageConfig cfg, std::uint64_t seed);

  ObservedCount observe(const QueryResult& result);
  ObservedCount observe_count(std::uint64_t true_count);

  void set_scripted_noise(std::vector<std::uint64_t> draws);
  const LeakageConfig& config() const { return cfg_; }

 private:
  std::uint64_t next_noise_draw();

  LeakageConfig cfg_;
  SplitRng rng_;
  std::uint64_t cumulative_noise_ = 0;
  std::deque<std::uint64_t> scripted_;
};

}  // namespace voleak
