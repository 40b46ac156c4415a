#include "voleak/leakage.hpp"

#include <algorithm>
#include <stdexcept>

namespace voleak {

void LeakageConfig::validate() const {
  if (mode == LeakageMode::kTiered) {
    if (tier_list.empty()) {
      if (tier_base < 2)
        throw std::invalid_argument("tiered padding: base must be >= 2");
    } else if (!std::is_sorted(tier_list.begin(), tier_list.end()) ||
               std::adjacent_find(tier_list.begin(), tier_list.end()) !=
                   tier_list.end() ||
               tier_list.front() == 0) {
      throw std::invalid_argument(
          "tiered padding: tier list must be positive and strictly "
          "increasing");
    }
  }
  if (mode == LeakageMode::kBlockBatched && block_size < 1)
    throw std::invalid_argument("block batching: block size must be >= 1");
  if (pagination_cap && *pagination_cap < 1)
    throw std::invalid_argument("pagination cap must be >= 1");
}

std::uint64_t pad_tier(std::uint64_t n, const LeakageConfig& cfg) {
  if (!cfg.tier_list.empty()) {
    for (std::uint64_t t : cfg.tier_list)
      if (t >= n) return t;
    return n;  // above the largest tier: nothing to pad to
  }
  std::uint64_t t = 1;
  while (t < n) t *= cfg.tier_base;
  return t;
}

std::uint64_t prev_tier(std::uint64_t t, const LeakageConfig& cfg) {
  if (!cfg.tier_list.empty()) {
    std::uint64_t prev = 0;
    for (std::uint64_t tier : cfg.tier_list) {
      if (tier >= t) break;
      prev = tier;
    }
    return prev;
  }
  if (t <= 1) return 0;
  return t / cfg.tier_base;
}

std::uint64_t observe_once(std::uint64_t n, const LeakageConfig& cfg,
                           std::uint64_t noise_draw) {
  std::uint64_t value = n;
  switch (cfg.mode) {
    case LeakageMode::kExact:
      break;
    case LeakageMode::kTiered:
      value = pad_tier(n, cfg);
      break;
    case LeakageMode::kAdditiveNoise:
      value = n + noise_draw;
      break;
    case LeakageMode::kBlockBatched:
      value = (n + cfg.block_size - 1) / cfg.block_size;  // blocks reported
      break;
  }
  if (cfg.pagination_cap) value = std::min(value, *cfg.pagination_cap);
  return value;
}

LeakageChannel::LeakageChannel(LeakageConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)), rng_(SplitRng::substream(seed, 0x1eaca6e)) {
  cfg_.validate();
}

void LeakageChannel::set_scripted_noise(std::vector<std::uint64_t> draws) {
  scripted_.assign(draws.begin(), draws.end());
}

std::uint64_t LeakageChannel::next_noise_draw() {
  std::uint64_t draw;
  if (!scripted_.empty()) {
    draw = scripted_.front();
    scripted_.pop_front();
  } else {
    draw = rng_.uniform(0, cfg_.noise_max);
  }
  if (cfg_.noise_cumulative) {
    cumulative_noise_ += draw;
    return cumulative_noise_;
  }
  return draw;
}

ObservedCount LeakageChannel::observe_count(std::uint64_t true_count) {
  std::uint64_t noise = 0;
  if (cfg_.mode == LeakageMode::kAdditiveNoise) noise = next_noise_draw();
  return ObservedCount{observe_once(true_count, cfg_, noise)};
}

ObservedCount LeakageChannel::observe(const QueryResult& result) {
  return observe_count(result.true_count);
}

}  // namespace voleak
