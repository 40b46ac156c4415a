#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "voleak/harness.hpp"

using namespace voleak;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.seed = 99;
  cfg.trials = 16;
  cfg.corpus.synthetic.n_files = 40;
  cfg.corpus.synthetic.universe_size = 50;
  cfg.corpus.synthetic.law = FreqLaw::kZipf;
  cfg.dict_size = 50;
  cfg.attack.variant = AttackVariant::kBase;
  cfg.attack.k = 5;
  return cfg;
}

}  // namespace

TEST_CASE("variant names round trip") {
  for (const char* name : {"base", "single", "padded", "noisy", "conj-single",
                           "conj-adaptive"})
    CHECK(variant_name(parse_variant(name)) == name);
  CHECK_THROWS_AS(parse_variant("unknown"), std::invalid_argument);
}

TEST_CASE("config json round trip preserves the hash") {
  auto cfg = small_config();
  auto doc = config_to_json(cfg);
  auto back = config_from_json(doc);
  CHECK(config_hash(back) == config_hash(cfg));
  CHECK(config_to_json(back) == doc);

  doc["attack"]["variant"] = "noisy";
  CHECK(config_hash(config_from_json(doc)) != config_hash(cfg));
}

TEST_CASE("config validation catches bad settings") {
  auto doc = config_to_json(small_config());
  doc["trials"] = 0;
  CHECK_THROWS_AS(config_from_json(doc), std::invalid_argument);
  doc = config_to_json(small_config());
  doc["attack"]["k"] = 1;
  CHECK_THROWS_AS(config_from_json(doc), std::invalid_argument);
  doc = config_to_json(small_config());
  doc["attack"]["variant"] = "padded";  // requires tiered leakage
  CHECK_THROWS_AS(config_from_json(doc), std::invalid_argument);
  doc["leakage"]["mode"] = "tiered";
  CHECK_NOTHROW(config_from_json(doc));
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"),
                  std::runtime_error);
}

TEST_CASE("experiments are deterministic, serial or parallel") {
  auto cfg = small_config();
  auto serial = run_experiment(cfg, false);
  auto parallel = run_experiment(cfg, true);
  CHECK(record_to_json(serial) == record_to_json(parallel));
  CHECK(json_hash(record_to_json(serial)) ==
        json_hash(record_to_json(parallel)));
  auto rerun = run_experiment(cfg, false);
  CHECK(record_to_json(rerun) == record_to_json(serial));

  cfg.seed = 100;
  auto reseeded = run_experiment(cfg, false);
  CHECK(record_to_json(reseeded) != record_to_json(serial));
}

TEST_CASE("base attack experiment recovers every trial") {
  auto rec = run_experiment(small_config());
  CHECK(rec.trials == 16);
  CHECK(rec.accuracy == doctest::Approx(1.0));
  CHECK(rec.rounds_mean == doctest::Approx(3.0));  // ceil(log5 50)
  CHECK(rec.files_total > 0);
}

TEST_CASE("targets outside the dictionary are reported as such") {
  auto cfg = small_config();
  cfg.dict_size = 10;
  cfg.target_in_dict_prob = 0.0;
  auto rec = run_experiment(cfg);
  CHECK(rec.accuracy == doctest::Approx(1.0));
  for (const auto& t : rec.per_trial)
    CHECK(t.verdict == Verdict::kNotInDictionary);
}

TEST_CASE("record json round trip and schema") {
  auto rec = run_experiment(small_config());
  auto doc = record_to_json(rec);
  std::string err;
  CHECK(validate_json(doc, record_schema(), &err));
  auto back = record_from_json(doc);
  CHECK(record_to_json(back) == doc);

  auto broken = doc;
  broken.erase("accuracy");
  CHECK(!validate_json(broken, record_schema(), &err));
  CHECK(err.find("accuracy") != std::string::npos);
  broken = doc;
  broken["trials"] = "many";
  CHECK(!validate_json(broken, record_schema(), &err));

  // The shipped schema file matches the embedded one.
  std::ifstream in(std::string(VOLEAK_DATA_DIR) + "/record.schema.json");
  REQUIRE(in.good());
  CHECK(nlohmann::json::parse(in) == record_schema());
}

TEST_CASE("sweeps vary exactly the requested axis") {
  auto cfg = small_config();
  cfg.trials = 6;
  auto records = run_sweep(cfg, "k", {2, 5, 10});
  REQUIRE(records.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(records[i].axis == "k");
    CHECK(records[i].axis_value == std::vector<double>{2, 5, 10}[i]);
    CHECK(records[i].accuracy == doctest::Approx(1.0));
  }
  CHECK(records[0].rounds_mean > records[2].rounds_mean);
  CHECK_THROWS_AS(run_sweep(cfg, "mystery", {1}), std::invalid_argument);
}

TEST_CASE("csv export") {
  auto cfg = small_config();
  cfg.trials = 4;
  auto records = run_sweep(cfg, "k", {2, 4});
  const auto csv = records_csv(records);
  CHECK(csv.rfind("axis,accuracy,rounds_mean,files_total,words_total,"
                  "bytes_total,replays_mean\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("\n2,1,") != std::string::npos);
}

TEST_CASE("svg export is well formed") {
  auto cfg = small_config();
  cfg.trials = 4;
  auto records = run_sweep(cfg, "k", {2, 4, 8});
  const auto svg = records_svg(records);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("config") != std::string::npos);
  // tags balance
  std::size_t opens = 0, closes = 0, selfclosed = 0, pos = 0;
  while ((pos = svg.find('<', pos)) != std::string::npos) {
    if (svg[pos + 1] == '?') {
    } else if (svg[pos + 1] == '/')
      closes++;
    else if (svg.find("/>", pos) < svg.find('>', pos) + 1)
      selfclosed++;
    else
      opens++;
    pos++;
  }
  CHECK(selfclosed > 0);
  CHECK(opens == closes);  // every non-self-closed tag is closed
  const auto empty = records_svg({});
  CHECK(empty.find("</svg>") != std::string::npos);
}

TEST_CASE("single runs expose an auditable transcript") {
  auto cfg = small_config();
  auto run = run_single(cfg);
  CHECK(run.result.success);
  REQUIRE(run.truth.size() == 1);
  CHECK(transcript_counts_only(run.transcript));
  CHECK(run.transcript.dump().find(run.truth[0]) == std::string::npos);
  const auto recount_files = [&] {
    std::uint64_t n = 0;
    for (const auto& ev : run.transcript)
      if (ev.value("kind", "") == "inject")
        n += ev.value("files", std::uint64_t{0});
    return n;
  }();
  CHECK(recount_files == run.result.cost.files_injected);

  nlohmann::json leaky = nlohmann::json::array();
  leaky.push_back({{"kind", "inject"}, {"time", 0}, {"id", "file-7"}});
  CHECK(!transcript_counts_only(leaky));
  CHECK(!transcript_counts_only(nlohmann::json::object()));
}

TEST_CASE("noisy and conjunctive variants succeed end to end") {
  auto cfg = small_config();
  cfg.trials = 8;
  cfg.attack.variant = AttackVariant::kNoisy;
  cfg.attack.s = 3;
  CHECK(run_experiment(cfg).accuracy == doctest::Approx(1.0));

  cfg.attack.variant = AttackVariant::kConjAdaptive;
  cfg.attack.d = 2;
  auto rec = run_experiment(cfg);
  CHECK(rec.accuracy == doctest::Approx(1.0));
  CHECK(rec.replays_mean == doctest::Approx(2 * 6));  // d * ceil(log2 50)

  cfg.attack.variant = AttackVariant::kSingle;
  cfg.attack.m = 60;  // above any zipf baseline in 40 files
  CHECK(run_experiment(cfg).accuracy == doctest::Approx(1.0));
}
