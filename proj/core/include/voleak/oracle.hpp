#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "voleak/appmodel.hpp"
#include "voleak/index.hpp"
#include "voleak/leakage.hpp"

namespace voleak {

// Thrown when the victim application has no replays left to trigger.
struct ReplayBudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CostLedger {
  std::uint64_t replays = 0;
  std::uint64_t files_injected = 0;
  std::uint64_t words_injected = 0;
  std::uint64_t bytes_injected = 0;
};

// One attacker-visible event. Deliberately carries counts only, never file
// ids or contents, so a transcript scan can confirm the attack path saw
// nothing beyond volumes.
struct TranscriptEvent {
  std::string kind;  // victim_query | replay | inject | block
  double time = 0;
  std::uint64_t files = 0;
  std::uint64_t words = 0;
  std::uint64_t bytes = 0;
  std::uint64_t observed = 0;
  bool blocked = false;
};

struct InjectReport {
  std::size_t admitted = 0;
  std::vector<Rejection> rejected;
};

// The attacker's only interface to the victim system. Attack code gets a
// reference to this object and nothing else: it can inject files, toggle
// update blocking, trigger a replay, and read back one number per replay.
class VolumeOracle {
 public:
  VolumeOracle(SecondaryIndex index, LeakageConfig leakage,
               AppProfile profile, std::vector<Keyword> victim_query,
               std::uint64_t seed);

  // Observed count of the victim's initial query (lazy, memoized). Pending
  // injections are allowed to settle first, modeling a pre-positioned
  // attacker (the single-round attack injects before the victim queries).
  std::uint64_t baseline();
  bool baseline_observed() const { return baseline_done_; }

  InjectReport inject(const std::vector<FileDoc>& files,
                      std::uint64_t copies = 1);
  void block_updates(bool blocked);
  // Waits out pending indexing, advances to the application's next
  // scheduled replay and observes the count. Throws ReplayBudgetExhausted.
  std::uint64_t trigger_replay();

  const CostLedger& ledger() const { return ledger_; }
  const std::vector<TranscriptEvent>& transcript() const { return transcript_; }
  nlohmann::json transcript_json() const;  // array of event objects

  FileId fresh_file_id() { return "inj:" + std::to_string(id_serial_++); }
  double now() const { return clock_.now; }
  const AppProfile& profile() const { return profile_; }
  const LeakageConfig& leakage_config() const { return channel_.config(); }

  // Harness-side controls (system behavior, not attacker abilities).
  // Per-replay dummy-entry increments for the victim's keyword, modeling a
  // server that keeps adding matching dummies between rounds.
  void set_db_noise(std::vector<std::uint64_t> per_replay_increments);
  // Adversarial per-observation draws for the additive-noise channel.
  void set_scripted_channel_noise(std::vector<std::uint64_t> draws);

 private:
  std::uint64_t observe_now(const char* kind);

  SecondaryIndex index_;
  LeakageChannel channel_;
  AppProfile profile_;
  std::vector<Keyword> victim_query_;
  Clock clock_;
  ReplaySchedule schedule_;
  InjectionGate gate_;
  SplitRng rng_;
  CostLedger ledger_;
  std::vector<TranscriptEvent> transcript_;
  std::deque<std::uint64_t> db_noise_;
  bool baseline_done_ = false;
  std::uint64_t baseline_value_ = 0;
  std::uint64_t id_serial_ = 0;
};

// Recomputes a ledger from the transcript; must agree with ledger().
CostLedger recount_ledger(const std::vector<TranscriptEvent>& transcript);

}  // namespace voleak
