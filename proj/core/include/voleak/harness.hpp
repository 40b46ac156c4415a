#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "voleak/appmodel.hpp"
#include "voleak/attacks.hpp"
#include "voleak/leakage.hpp"

namespace voleak {

enum class AttackVariant {
  kBase,
  kSingle,
  kPadded,
  kNoisy,
  kConjSingle,
  kConjAdaptive,
};

AttackVariant parse_variant(const std::string& name);  // throws on unknown
std::string variant_name(AttackVariant v);

struct CorpusSource {
  // Synthetic by default; set path to load a corpus instead.
  SyntheticSpec synthetic;
  std::string path;             // directory or .jsonl file
  PreprocessRules rules;        // used when loading
  std::uint32_t min_doc_freq = 0;  // universe cut for loaded corpora
};

struct AttackParams {
  AttackVariant variant = AttackVariant::kBase;
  std::size_t k = 10;        // base / padded / noisy partition count
  std::uint64_t m = 10;      // single-round spacing
  std::uint64_t s = 2;       // noisy replication factor
  std::size_t d = 2;         // conjunction size
  double eps = 0.5;          // single-replay oversampling
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::uint64_t trials = 1;
  CorpusSource corpus;
  std::size_t dict_size = 0;  // 0 = whole universe
  double target_in_dict_prob = 1.0;
  AttackParams attack;
  LeakageConfig leakage;
  std::string profile = "ideal";
  std::string profile_path;  // optional JSON file overriding builtins

  void validate() const;  // throws std::invalid_argument
};

ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

// FNV-1a over the canonical serialized form; labels records and plots.
std::uint64_t config_hash(const ExperimentConfig& cfg);
std::uint64_t json_hash(const nlohmann::json& doc);

struct TrialResult {
  bool success = false;
  Verdict verdict = Verdict::kError;
  std::string error;
  std::uint64_t rounds = 0;
  CostLedger cost;
};

// One experiment = `trials` independent attack runs, trial t seeded with
// substream(seed, t) so serial and parallel execution agree bit for bit.
struct ExperimentRecord {
  std::string variant;
  std::uint64_t config = 0;  // config hash
  double axis_value = 0;     // sweep coordinate; 0 for standalone runs
  std::string axis;
  std::uint64_t trials = 0;
  double accuracy = 0;
  double rounds_mean = 0;
  double replays_mean = 0;
  std::uint64_t files_total = 0;
  std::uint64_t words_total = 0;
  std::uint64_t bytes_total = 0;
  std::vector<TrialResult> per_trial;
};

nlohmann::json record_to_json(const ExperimentRecord& rec);
ExperimentRecord record_from_json(const nlohmann::json& doc);

ExperimentRecord run_experiment(const ExperimentConfig& cfg,
                                bool parallel = false);

// Single attack run (trial 0) with the full oracle transcript, for audits.
struct SingleRun {
  TrialResult result;
  std::vector<Keyword> truth;
  nlohmann::json transcript;
};
SingleRun run_single(const ExperimentConfig& cfg);

// Sweep one parameter: k | m | s | dict_size | tier_base | noise_max |
// trials-independent axes share the base config otherwise.
std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& base,
                                        const std::string& axis,
                                        const std::vector<double>& values,
                                        bool parallel = false);

std::string records_csv(const std::vector<ExperimentRecord>& records);
// Minimal line chart (accuracy over the sweep axis), labeled with the
// config hash.
std::string records_svg(const std::vector<ExperimentRecord>& records);

// Shallow structural validation against a JSON-schema-style document
// (type / required / properties). Returns false and fills err on mismatch.
bool validate_json(const nlohmann::json& doc, const nlohmann::json& schema,
                   std::string* err);
nlohmann::json record_schema();

// True when no transcript event leaks anything beyond counts and times.
bool transcript_counts_only(const nlohmann::json& transcript);

}  // namespace voleak
