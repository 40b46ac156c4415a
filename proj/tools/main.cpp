// Command line front end: ingest corpora, run attacks and sweeps, plan
// base-attack parameters, and render result records.
//
// Exit codes: 0 on success, 1 for configuration problems, 2 for runtime
// failures.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "voleak/harness.hpp"
#include "voleak/planner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

fs::path output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("VOLEAK_OUT_DIR")) return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "."
                                                    : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int cmd_ingest(const std::string& dir, const std::string& rules_path,
               const std::string& out_flag, std::uint32_t min_doc_freq) {
  voleak::PreprocessRules rules;
  if (!rules_path.empty()) {
    std::ifstream in(rules_path);
    if (!in) throw std::runtime_error("cannot open rules file: " + rules_path);
    json doc = json::parse(in);
    rules.stem = doc.value("stem", rules.stem);
    rules.alphabetic_only = doc.value("alphabetic_only", rules.alphabetic_only);
    rules.min_len = doc.value("min_len", rules.min_len);
    rules.max_len = doc.value("max_len", rules.max_len);
    if (doc.contains("stopwords"))
      rules.stopwords =
          voleak::load_stopwords(doc.at("stopwords").get<std::string>());
  }

  auto files = dir.size() > 6 && dir.rfind(".jsonl") == dir.size() - 6
                   ? voleak::load_corpus_jsonl(dir, rules)
                   : voleak::load_corpus_dir(dir, rules);
  auto stats = voleak::build_universe(files, min_doc_freq);

  std::uint64_t total_entries = 0;
  for (const auto& f : files) total_entries += f.keywords.size();
  json doc{
      {"files", files.size()},
      {"universe_size", stats.universe.size()},
      {"index_entries", total_entries},
      {"min_doc_freq", min_doc_freq},
      {"doc_freq", stats.doc_freq},
  };

  const fs::path out = output_dir(out_flag);
  write_file(out / "corpus_stats.json", doc.dump(2) + "\n");
  std::string words;
  for (const auto& w : rules.effective_stopwords()) words += w + "\n";
  write_file(out / "stopwords.txt", words);
  std::cout << "ingested " << files.size() << " files, "
            << stats.universe.size() << " keywords -> " << out.string()
            << "\n";
  return 0;
}

int cmd_attack(const std::string& config_path, const std::string& variant,
               std::int64_t seed, const std::string& out_flag) {
  voleak::ExperimentConfig cfg = voleak::load_config(config_path);
  if (!variant.empty()) cfg.attack.variant = voleak::parse_variant(variant);
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.validate();

  voleak::SingleRun run = voleak::run_single(cfg);

  const fs::path out = output_dir(out_flag);
  std::string lines;
  for (const auto& ev : run.transcript) lines += ev.dump() + "\n";
  write_file(out / "transcript.jsonl", lines);

  json result{
      {"variant", voleak::variant_name(cfg.attack.variant)},
      {"config", voleak::config_hash(cfg)},
      {"success", run.result.success},
      {"rounds", run.result.rounds},
      {"replays", run.result.cost.replays},
      {"files_injected", run.result.cost.files_injected},
      {"words_injected", run.result.cost.words_injected},
      {"bytes_injected", run.result.cost.bytes_injected},
  };
  if (!run.result.error.empty()) result["error"] = run.result.error;
  write_file(out / "attack_result.json", result.dump(2) + "\n");
  std::cout << result.dump(2) << "\n";
  return run.result.error.empty() ? 0 : kExitRuntime;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<double>& values, bool parallel,
              const std::string& out_flag) {
  voleak::ExperimentConfig cfg = voleak::load_config(config_path);
  auto records = voleak::run_sweep(cfg, axis, values, parallel);

  const fs::path out = output_dir(out_flag);
  json doc = json::array();
  for (const auto& r : records) doc.push_back(voleak::record_to_json(r));
  write_file(out / "sweep_records.json", doc.dump(2) + "\n");
  write_file(out / "sweep.csv", voleak::records_csv(records));
  write_file(out / "sweep.svg", voleak::records_svg(records));
  std::cout << voleak::records_csv(records);
  return 0;
}

int cmd_plan(std::uint64_t dict_size, std::uint64_t cap, std::uint64_t kmax) {
  voleak::PlanConstraints c;
  c.page_cap = cap;
  c.k_max = kmax;
  auto plan = voleak::plan_parameters(dict_size, c);
  if (!plan) {
    std::cerr << "no feasible k for |D|=" << dict_size << " under cap "
              << cap << "\n";
    return kExitRuntime;
  }
  json doc{{"dict_size", dict_size},
           {"k", plan->k},
           {"rounds", plan->rounds},
           {"files_worst_case", plan->files}};
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_report(const std::vector<std::string>& paths,
               const std::string& format, const std::string& out_flag) {
  std::vector<voleak::ExperimentRecord> records;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open record file: " + path);
    json doc = json::parse(in);
    const auto schema = voleak::record_schema();
    auto take = [&](const json& item) {
      std::string err;
      if (!voleak::validate_json(item, schema, &err))
        throw std::invalid_argument(path + ": invalid record: " + err);
      records.push_back(voleak::record_from_json(item));
    };
    if (doc.is_array())
      for (const auto& item : doc) take(item);
    else
      take(doc);
  }
  const std::string body = format == "svg" ? voleak::records_svg(records)
                                           : voleak::records_csv(records);
  const fs::path out =
      output_dir(out_flag) / (format == "svg" ? "report.svg" : "report.csv");
  write_file(out, body);
  std::cout << body;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volume-leakage attack simulator"};
  app.require_subcommand(1);

  std::string out_flag;
  app.add_option("--out", out_flag,
                 "output directory (default: $VOLEAK_OUT_DIR or .)");

  auto* ingest = app.add_subcommand("ingest", "preprocess a corpus");
  std::string ingest_dir, rules_path;
  std::uint32_t min_doc_freq = 0;
  ingest->add_option("dir", ingest_dir, "document directory or .jsonl file")
      ->required();
  ingest->add_option("--rules", rules_path, "preprocessing rules JSON");
  ingest->add_option("--min-doc-freq", min_doc_freq,
                     "keep keywords in strictly more files than this");

  auto* attack = app.add_subcommand("attack", "run one attack");
  std::string attack_config, attack_variant;
  std::int64_t attack_seed = -1;
  attack->add_option("--config", attack_config, "experiment config JSON")
      ->required();
  attack->add_option("--variant", attack_variant,
                     "base|single|padded|noisy|conj-single|conj-adaptive");
  attack->add_option("--seed", attack_seed, "override the config seed");

  auto* sweep = app.add_subcommand("sweep", "run an experiment sweep");
  std::string sweep_config, sweep_axis;
  std::vector<double> sweep_values;
  bool sweep_parallel = false;
  sweep->add_option("--config", sweep_config, "experiment config JSON")
      ->required();
  sweep->add_option("--axis", sweep_axis, "swept parameter name")->required();
  sweep->add_option("--values", sweep_values, "axis values")
      ->required()
      ->delimiter(',');
  sweep->add_flag("--parallel", sweep_parallel, "run trials on all cores");

  auto* plan = app.add_subcommand("plan", "pick base-attack parameters");
  std::uint64_t plan_dict = 0, plan_cap = 100, plan_kmax = 36;
  plan->add_option("--dict-size", plan_dict, "dictionary size")->required();
  plan->add_option("--cap", plan_cap, "pagination cap");
  plan->add_option("--kmax", plan_kmax, "exclusive upper bound on k");

  auto* report = app.add_subcommand("report", "render experiment records");
  std::vector<std::string> report_paths;
  std::string report_format = "csv";
  report->add_option("records", report_paths, "record JSON files")
      ->required();
  report->add_option("--format", report_format, "csv|svg")
      ->check(CLI::IsMember({"csv", "svg"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest)
      return cmd_ingest(ingest_dir, rules_path, out_flag, min_doc_freq);
    if (*attack)
      return cmd_attack(attack_config, attack_variant, attack_seed, out_flag);
    if (*sweep)
      return cmd_sweep(sweep_config, sweep_axis, sweep_values, sweep_parallel,
                       out_flag);
    if (*plan) return cmd_plan(plan_dict, plan_cap, plan_kmax);
    if (*report) return cmd_report(report_paths, report_format, out_flag);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
