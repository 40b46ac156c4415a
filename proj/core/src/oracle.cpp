#include "voleak/oracle.hpp"

namespace voleak {

VolumeOracle::VolumeOracle(SecondaryIndex index, LeakageConfig leakage,
                           AppProfile profile,
                           std::vector<Keyword> victim_query,
                           std::uint64_t seed)
    : index_(std::move(index)),
      channel_(std::move(leakage), seed),
      profile_(std::move(profile)),
      victim_query_(std::move(victim_query)),
      schedule_(profile_),
      gate_(profile_),
      rng_(SplitRng::substream(seed, 0x0ac1e)) {
  profile_.validate();
  if (victim_query_.empty())
    throw std::invalid_argument("victim query must contain a keyword");
  clock_.now = index_.now();
}

std::uint64_t VolumeOracle::observe_now(const char* kind) {
  QueryResult result = victim_query_.size() == 1
                           ? index_.query(victim_query_.front())
                           : index_.query_conj(victim_query_);
  std::uint64_t observed = channel_.observe(result).value;
  TranscriptEvent ev;
  ev.kind = kind;
  ev.time = clock_.now;
  ev.observed = observed;
  transcript_.push_back(ev);
  return observed;
}

std::uint64_t VolumeOracle::baseline() {
  if (baseline_done_) return baseline_value_;
  // Pre-positioned injections settle before the victim's first query.
  double t = std::max(clock_.now, index_.latest_pending_time());
  clock_.advance_to(t);
  index_.advance_to(t);
  baseline_value_ = observe_now("victim_query");
  baseline_done_ = true;
  return baseline_value_;
}

InjectReport VolumeOracle::inject(const std::vector<FileDoc>& files,
                                  std::uint64_t copies) {
  if (copies < 1) throw std::invalid_argument("copies must be >= 1");
  std::vector<FileDoc> batch = files;
  for (auto& doc : batch)
    if (doc.byte_size == 0) doc.byte_size = word_bytes(doc.keywords);
  GateResult gated = gate_.admit(clock_, batch, rng_);
  index_.inject(gated.admitted, gated.indexed_at, copies);

  TranscriptEvent ev;
  ev.kind = "inject";
  ev.time = clock_.now;
  for (const auto& doc : gated.admitted) {
    ev.files += copies;
    ev.words += doc.keywords.size() * copies;
    ev.bytes += doc.byte_size * copies;
  }
  ledger_.files_injected += ev.files;
  ledger_.words_injected += ev.words;
  ledger_.bytes_injected += ev.bytes;
  transcript_.push_back(ev);

  InjectReport report;
  report.admitted = gated.admitted.size();
  report.rejected = std::move(gated.rejected);
  return report;
}

void VolumeOracle::block_updates(bool blocked) {
  index_.set_update_block(blocked);
  TranscriptEvent ev;
  ev.kind = "block";
  ev.time = clock_.now;
  ev.blocked = blocked;
  transcript_.push_back(ev);
}

std::uint64_t VolumeOracle::trigger_replay() {
  // Let outstanding injections reach the index (unless blocked), then wait
  // for the app's next scheduled replay after that point.
  double ready = std::max(clock_.now, index_.latest_pending_time());
  std::optional<double> at;
  do {
    at = schedule_.next(rng_);
    if (!at) throw ReplayBudgetExhausted("no replays left: " + profile_.name);
  } while (*at < ready);
  clock_.advance_to(*at);
  index_.advance_to(*at);
  if (!db_noise_.empty()) {
    index_.add_noise_entries(victim_query_.front(), db_noise_.front());
    db_noise_.pop_front();
  }
  ledger_.replays++;
  return observe_now("replay");
}

void VolumeOracle::set_db_noise(std::vector<std::uint64_t> increments) {
  db_noise_.assign(increments.begin(), increments.end());
}

void VolumeOracle::set_scripted_channel_noise(
    std::vector<std::uint64_t> draws) {
  channel_.set_scripted_noise(std::move(draws));
}

nlohmann::json VolumeOracle::transcript_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& ev : transcript_) {
    nlohmann::json item{{"kind", ev.kind}, {"time", ev.time}};
    if (ev.kind == "inject") {
      item["files"] = ev.files;
      item["words"] = ev.words;
      item["bytes"] = ev.bytes;
    } else if (ev.kind == "block") {
      item["blocked"] = ev.blocked;
    } else {
      item["observed"] = ev.observed;
    }
    out.push_back(std::move(item));
  }
  return out;
}

CostLedger recount_ledger(const std::vector<TranscriptEvent>& transcript) {
  CostLedger ledger;
  for (const auto& ev : transcript) {
    if (ev.kind == "replay") ledger.replays++;
    ledger.files_injected += ev.files;
    ledger.words_injected += ev.words;
    ledger.bytes_injected += ev.bytes;
  }
  return ledger;
}

}  // namespace voleak
