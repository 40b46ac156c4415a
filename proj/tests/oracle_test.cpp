#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "voleak/oracle.hpp"

using namespace voleak;

namespace {

VolumeOracle make_oracle(const std::string& profile,
                         std::vector<FileDoc> corpus = {},
                         LeakageConfig leakage = {}) {
  return VolumeOracle(SecondaryIndex::build(corpus), leakage,
                      builtin_profile(profile), {"target"}, 77);
}

}  // namespace

TEST_CASE("baseline is lazy and memoized") {
  auto oracle = make_oracle("ideal", {{"f1", {"target"}, 0},
                                      {"f2", {"target", "other"}, 0},
                                      {"f3", {"other"}, 0}});
  CHECK(!oracle.baseline_observed());
  CHECK(oracle.baseline() == 2);
  CHECK(oracle.baseline_observed());
  oracle.inject({{"f4", {"target"}, 0}});
  CHECK(oracle.baseline() == 2);  // memoized, not re-queried
  CHECK(oracle.ledger().replays == 0);
}

TEST_CASE("pre-positioned injections settle before the victim query") {
  auto oracle = make_oracle("gmail");
  FileDoc doc{"inj", {"target"}, 10};
  auto report = oracle.inject({doc});
  CHECK(report.admitted == 1);
  CHECK(oracle.baseline() == 1);  // waited out the indexing latency
}

TEST_CASE("replays advance time and observe the current count") {
  auto oracle = make_oracle("gmail");
  CHECK(oracle.baseline() == 0);
  oracle.inject({{"a", {"target"}, 10}, {"b", {"target"}, 10}});
  const double before = oracle.now();
  CHECK(oracle.trigger_replay() == 2);
  CHECK(oracle.now() >= before + 60);  // gmail replays at >= 1 minute gaps
  CHECK(oracle.ledger().replays == 1);
}

TEST_CASE("replay budget exhaustion throws") {
  auto oracle = make_oracle("twitter");
  CHECK_THROWS_AS(oracle.trigger_replay(), ReplayBudgetExhausted);
  auto single = make_oracle("dropbox");
  single.trigger_replay();
  CHECK_THROWS_AS(single.trigger_replay(), ReplayBudgetExhausted);
}

TEST_CASE("ledger accounts copies and matches the transcript recount") {
  auto oracle = make_oracle("ideal");
  oracle.inject({{"a", {"target", "pad"}, 0}}, 8);
  oracle.inject({{"b", {"pad"}, 0}});
  oracle.trigger_replay();
  const auto& ledger = oracle.ledger();
  CHECK(ledger.files_injected == 9);
  CHECK(ledger.words_injected == 8 * 2 + 1);
  CHECK(ledger.bytes_injected == 8 * 11 + 4);  // word bytes, copy-weighted
  CHECK(ledger.replays == 1);
  const auto recount = recount_ledger(oracle.transcript());
  CHECK(recount.replays == ledger.replays);
  CHECK(recount.files_injected == ledger.files_injected);
  CHECK(recount.words_injected == ledger.words_injected);
  CHECK(recount.bytes_injected == ledger.bytes_injected);
}

TEST_CASE("update blocking defers injected files until unblocked") {
  auto oracle = make_oracle("ideal");
  CHECK(oracle.baseline() == 0);
  oracle.block_updates(true);
  oracle.inject({{"a", {"target"}, 0}});
  CHECK(oracle.trigger_replay() == 0);
  oracle.block_updates(false);
  CHECK(oracle.trigger_replay() == 1);
}

TEST_CASE("scripted server-side noise grows the victim count") {
  auto oracle = make_oracle("ideal");
  CHECK(oracle.baseline() == 0);
  oracle.set_db_noise({3, 0, 2});
  CHECK(oracle.trigger_replay() == 3);
  CHECK(oracle.trigger_replay() == 3);
  CHECK(oracle.trigger_replay() == 5);
  CHECK(oracle.trigger_replay() == 5);  // script exhausted
}

TEST_CASE("transcript carries counts only") {
  auto oracle = make_oracle("ideal");
  oracle.baseline();
  oracle.inject({{"secret-name", {"target"}, 0}});
  oracle.block_updates(true);
  oracle.block_updates(false);
  oracle.trigger_replay();
  const auto transcript = oracle.transcript_json();
  CHECK(transcript.size() == 5);
  const std::string dump = transcript.dump();
  CHECK(dump.find("secret-name") == std::string::npos);
  CHECK(dump.find("target") == std::string::npos);
}

TEST_CASE("conjunctive victim queries count full matches only") {
  VolumeOracle oracle(
      SecondaryIndex::build({{"f1", {"alpha", "beta"}, 0},
                             {"f2", {"alpha"}, 0}}),
      LeakageConfig{}, builtin_profile("ideal"), {"alpha", "beta"}, 3);
  CHECK(oracle.baseline() == 1);
  oracle.inject({{"f3", {"alpha", "beta", "gamma"}, 0}});
  CHECK(oracle.trigger_replay() == 2);
}

TEST_CASE("empty victim query is rejected") {
  CHECK_THROWS_AS(VolumeOracle(SecondaryIndex::build({}), LeakageConfig{},
                               builtin_profile("ideal"), {}, 1),
                  std::invalid_argument);
}

TEST_CASE("oversized files never reach the index") {
  auto oracle = make_oracle("gmail");
  FileDoc big{"big", {"target"}, 30ull * 1024 * 1024};
  auto report = oracle.inject({big});
  CHECK(report.admitted == 0);
  REQUIRE(report.rejected.size() == 1);
  CHECK(report.rejected[0].reason == "file exceeds size cap");
  CHECK(oracle.baseline() == 0);
  CHECK(oracle.ledger().files_injected == 0);
}
