#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "voleak/corpus.hpp"
#include "voleak/rng.hpp"

namespace voleak {

// Victim-application behavior: how often a dropped query gets replayed, how
// fast injected files reach the index, and what the app lets an attacker
// send. The bundled profiles follow the application survey; only the gmail
// latency law is measured, the rest are placeholders (uniform 5-60 s).
struct AppProfile {
  std::string name;

  double replay_min = 60;  // seconds between automatic replays
  double replay_max = 180;
  std::optional<std::uint64_t> max_replays;  // nullopt = unbounded

  double injection_window = 60;  // seconds
  std::uint64_t max_injections_per_window = 1'000'000;
  std::uint64_t max_file_bytes = 25ull * 1024 * 1024;

  double latency_min = 0;  // uniform indexing delay, send -> indexed
  double latency_max = 0;

  void validate() const;  // throws std::invalid_argument
};

// gmail, facebook, dropbox, gdrive, icloud (replaying); twitter, piazza,
// slack, skype, yahoo, outlook (non-replaying); plus "ideal" (no caps,
// instant indexing) for protocol-level experiments.
const AppProfile& builtin_profile(const std::string& name);
std::vector<std::string> builtin_profile_names();
std::vector<AppProfile> load_profiles(const std::string& path);  // JSON file

struct Clock {
  double now = 0;
  void advance_to(double t);  // monotone; throws if t < now
};

// Lazily generated replay timestamps: strictly increasing, gaps uniform in
// [replay_min, replay_max], at most max_replays of them.
class ReplaySchedule {
 public:
  explicit ReplaySchedule(const AppProfile& profile) : profile_(&profile) {}

  // Next replay timestamp, or nullopt when the budget is exhausted.
  std::optional<double> next(SplitRng& rng);
  std::uint64_t emitted() const { return emitted_; }

 private:
  const AppProfile* profile_;
  double last_ = 0;
  std::uint64_t emitted_ = 0;
};

struct Rejection {
  FileId id;
  std::string reason;
};

struct GateResult {
  std::vector<FileDoc> admitted;
  std::vector<double> indexed_at;  // one per admitted file
  std::vector<Rejection> rejected;
};

// Admission control for injected files: per-file size cap and a sliding
// rate window; each admitted file gets an indexed-at time drawn from the
// profile's latency law.
class InjectionGate {
 public:
  explicit InjectionGate(const AppProfile& profile) : profile_(&profile) {}

  GateResult admit(const Clock& clock, const std::vector<FileDoc>& batch,
                   SplitRng& rng);

 private:
  const AppProfile* profile_;
  std::deque<double> window_;  // admission times within the current window
};

}  // namespace voleak
