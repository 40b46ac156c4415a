#include "voleak/appmodel.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace voleak {

void AppProfile::validate() const {
  if (replay_min < 0 || replay_min > replay_max)
    throw std::invalid_argument(name + ": replay interval must satisfy 0 <= "
                                       "min <= max");
  if (latency_min < 0 || latency_min > latency_max)
    throw std::invalid_argument(name + ": latency law must satisfy 0 <= min "
                                       "<= max");
  if (max_injections_per_window < 1)
    throw std::invalid_argument(name +
                                ": max_injections_per_window must be >= 1");
  if (max_file_bytes < 1)
    throw std::invalid_argument(name + ": max_file_bytes must be >= 1");
  if (injection_window <= 0)
    throw std::invalid_argument(name + ": injection window must be positive");
}

namespace {

std::vector<AppProfile> make_builtin_profiles() {
  std::vector<AppProfile> profiles;

  AppProfile ideal;
  ideal.name = "ideal";
  ideal.replay_min = 1;
  ideal.replay_max = 1;
  ideal.injection_window = 1;
  ideal.max_injections_per_window = UINT64_MAX;
  ideal.max_file_bytes = UINT64_MAX;
  profiles.push_back(ideal);

  // Gmail: replays every 1-3 minutes until the attack finishes; about 36 of
  // 40 injected emails are indexed within 60 s, hence the [6, 66] latency
  // law (P[latency <= 60] = 0.9).
  AppProfile gmail;
  gmail.name = "gmail";
  gmail.replay_min = 60;
  gmail.replay_max = 180;
  gmail.injection_window = 60;
  gmail.max_injections_per_window = 36;
  gmail.max_file_bytes = 25ull * 1024 * 1024;
  gmail.latency_min = 6;
  gmail.latency_max = 66;
  profiles.push_back(gmail);

  AppProfile facebook = gmail;
  facebook.name = "facebook";
  facebook.replay_min = 120;  // ~4 replays in 10 minutes
  facebook.replay_max = 180;
  facebook.latency_min = 5;
  facebook.latency_max = 60;
  profiles.push_back(facebook);

  auto single_replay = [](const std::string& name) {
    AppProfile p;
    p.name = name;
    p.replay_min = 30;
    p.replay_max = 120;
    p.max_replays = 1;
    p.injection_window = 60;
    p.max_injections_per_window = 100;
    p.latency_min = 5;
    p.latency_max = 60;
    return p;
  };
  profiles.push_back(single_replay("dropbox"));
  profiles.push_back(single_replay("gdrive"));
  profiles.push_back(single_replay("icloud"));

  auto no_replay = [](const std::string& name) {
    AppProfile p;
    p.name = name;
    p.max_replays = 0;
    p.injection_window = 60;
    p.max_injections_per_window = 100;
    p.latency_min = 5;
    p.latency_max = 60;
    return p;
  };
  profiles.push_back(no_replay("twitter"));
  profiles.push_back(no_replay("piazza"));
  profiles.push_back(no_replay("slack"));
  profiles.push_back(no_replay("skype"));
  profiles.push_back(no_replay("yahoo"));
  profiles.push_back(no_replay("outlook"));

  for (const auto& p : profiles) p.validate();
  return profiles;
}

const std::vector<AppProfile>& builtin_profiles() {
  static const std::vector<AppProfile> profiles = make_builtin_profiles();
  return profiles;
}

}  // namespace

const AppProfile& builtin_profile(const std::string& name) {
  for (const auto& p : builtin_profiles())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown application profile: " + name);
}

std::vector<std::string> builtin_profile_names() {
  std::vector<std::string> names;
  for (const auto& p : builtin_profiles()) names.push_back(p.name);
  return names;
}

std::vector<AppProfile> load_profiles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<AppProfile> profiles;
  for (const auto& item : doc) {
    AppProfile p;
    p.name = item.at("name").get<std::string>();
    p.replay_min = item.value("replay_min", p.replay_min);
    p.replay_max = item.value("replay_max", p.replay_max);
    if (item.contains("max_replays") && !item.at("max_replays").is_null())
      p.max_replays = item.at("max_replays").get<std::uint64_t>();
    p.injection_window = item.value("injection_window", p.injection_window);
    p.max_injections_per_window =
        item.value("max_injections_per_window", p.max_injections_per_window);
    p.max_file_bytes = item.value("max_file_bytes", p.max_file_bytes);
    p.latency_min = item.value("latency_min", p.latency_min);
    p.latency_max = item.value("latency_max", p.latency_max);
    p.validate();
    profiles.push_back(std::move(p));
  }
  return profiles;
}

void Clock::advance_to(double t) {
  if (t < now) throw std::invalid_argument("clock may not move backwards");
  now = t;
}

std::optional<double> ReplaySchedule::next(SplitRng& rng) {
  if (profile_->max_replays && emitted_ >= *profile_->max_replays)
    return std::nullopt;
  last_ += rng.uniform_real(profile_->replay_min, profile_->replay_max);
  emitted_++;
  return last_;
}

GateResult InjectionGate::admit(const Clock& clock,
                                const std::vector<FileDoc>& batch,
                                SplitRng& rng) {
  GateResult result;
  const double now = clock.now;
  while (!window_.empty() && window_.front() <= now - profile_->injection_window)
    window_.pop_front();
  for (const auto& doc : batch) {
    if (doc.byte_size > profile_->max_file_bytes) {
      result.rejected.push_back({doc.id, "file exceeds size cap"});
      continue;
    }
    if (window_.size() >= profile_->max_injections_per_window) {
      result.rejected.push_back({doc.id, "injection rate limit"});
      continue;
    }
    window_.push_back(now);
    result.admitted.push_back(doc);
    result.indexed_at.push_back(
        now + rng.uniform_real(profile_->latency_min, profile_->latency_max));
  }
  return result;
}

}  // namespace voleak
