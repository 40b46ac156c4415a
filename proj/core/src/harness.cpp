#include "voleak/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace voleak {

namespace {

const char* kVariantNames[] = {"base",  "single",      "padded",
                               "noisy", "conj-single", "conj-adaptive"};

std::uint64_t rounds_upper_bound(std::size_t n, std::size_t k) {
  std::uint64_t r = 0;
  std::uint64_t reach = 1;
  while (reach < n) {
    reach *= k;
    ++r;
  }
  return r;
}

LeakageMode parse_leakage_mode(const std::string& name) {
  if (name == "exact") return LeakageMode::kExact;
  if (name == "tiered") return LeakageMode::kTiered;
  if (name == "additive_noise") return LeakageMode::kAdditiveNoise;
  if (name == "block_batched") return LeakageMode::kBlockBatched;
  throw std::invalid_argument("unknown leakage mode: " + name);
}

std::string leakage_mode_name(LeakageMode mode) {
  switch (mode) {
    case LeakageMode::kExact: return "exact";
    case LeakageMode::kTiered: return "tiered";
    case LeakageMode::kAdditiveNoise: return "additive_noise";
    case LeakageMode::kBlockBatched: return "block_batched";
  }
  return "exact";
}

LeakageConfig leakage_from_json(const nlohmann::json& doc) {
  LeakageConfig cfg;
  cfg.mode = parse_leakage_mode(doc.value("mode", "exact"));
  cfg.tier_base = doc.value("tier_base", cfg.tier_base);
  if (doc.contains("tier_list"))
    cfg.tier_list = doc.at("tier_list").get<std::vector<std::uint64_t>>();
  cfg.noise_max = doc.value("noise_max", cfg.noise_max);
  cfg.noise_cumulative = doc.value("noise_cumulative", cfg.noise_cumulative);
  cfg.block_size = doc.value("block_size", cfg.block_size);
  if (doc.contains("pagination_cap") && !doc.at("pagination_cap").is_null())
    cfg.pagination_cap = doc.at("pagination_cap").get<std::uint64_t>();
  return cfg;
}

nlohmann::json leakage_to_json(const LeakageConfig& cfg) {
  nlohmann::json doc{{"mode", leakage_mode_name(cfg.mode)},
                     {"tier_base", cfg.tier_base},
                     {"tier_list", cfg.tier_list},
                     {"noise_max", cfg.noise_max},
                     {"noise_cumulative", cfg.noise_cumulative},
                     {"block_size", cfg.block_size}};
  if (cfg.pagination_cap) doc["pagination_cap"] = *cfg.pagination_cap;
  return doc;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kRecovered: return "recovered";
    case Verdict::kNotInDictionary: return "not-in-dictionary";
    case Verdict::kError: return "error";
  }
  return "error";
}

Verdict parse_verdict(const std::string& name) {
  if (name == "recovered") return Verdict::kRecovered;
  if (name == "not-in-dictionary") return Verdict::kNotInDictionary;
  return Verdict::kError;
}

AppProfile resolve_profile(const ExperimentConfig& cfg) {
  if (!cfg.profile_path.empty()) {
    for (auto& p : load_profiles(cfg.profile_path))
      if (p.name == cfg.profile) return p;
    throw std::invalid_argument("profile " + cfg.profile + " not found in " +
                                cfg.profile_path);
  }
  return builtin_profile(cfg.profile);
}

struct TrialPlan {
  std::vector<Keyword> dict;
  std::vector<Keyword> truth;  // target word, or d conjunction words
  bool target_in_dict = true;
};

// Dictionary and target selection for one trial, off the trial's own rng
// stream.
TrialPlan pick_dict_and_target(const ExperimentConfig& cfg,
                               const std::vector<Keyword>& universe,
                               SplitRng& rng) {
  TrialPlan plan;
  std::size_t want = cfg.dict_size == 0 ? universe.size() : cfg.dict_size;
  want = std::min(want, universe.size());

  std::vector<std::size_t> idx(universe.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t j = 0; j < want; ++j)
    std::swap(idx[j], idx[rng.uniform(j, idx.size() - 1)]);
  plan.dict.reserve(want);
  for (std::size_t j = 0; j < want; ++j) plan.dict.push_back(universe[idx[j]]);
  std::sort(plan.dict.begin(), plan.dict.end());

  const bool conj = cfg.attack.variant == AttackVariant::kConjSingle ||
                    cfg.attack.variant == AttackVariant::kConjAdaptive;
  if (conj) {
    const std::size_t d = std::min(cfg.attack.d, plan.dict.size());
    std::vector<std::size_t> pick(plan.dict.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    for (std::size_t j = 0; j < d; ++j)
      std::swap(pick[j], pick[rng.uniform(j, pick.size() - 1)]);
    for (std::size_t j = 0; j < d; ++j)
      plan.truth.push_back(plan.dict[pick[j]]);
    std::sort(plan.truth.begin(), plan.truth.end());
    return plan;
  }

  plan.target_in_dict = rng.bernoulli(cfg.target_in_dict_prob);
  if (plan.target_in_dict || want == universe.size()) {
    plan.target_in_dict = true;
    plan.truth = {plan.dict[rng.uniform(0, plan.dict.size() - 1)]};
  } else {
    // Uniform over universe \ dict; want < |universe| so the tail of the
    // shuffled index vector is nonempty.
    const std::size_t off = rng.uniform(want, idx.size() - 1);
    plan.truth = {universe[idx[off]]};
  }
  return plan;
}

TrialResult run_trial(const ExperimentConfig& cfg,
                      const std::vector<FileDoc>* loaded_files,
                      const std::vector<Keyword>* loaded_universe,
                      std::uint64_t trial, std::vector<Keyword>* truth_out,
                      nlohmann::json* transcript_out) {
  const std::uint64_t tseed = SplitRng::derive(cfg.seed, trial);
  SplitRng trng = SplitRng::substream(tseed, 1);

  std::vector<FileDoc> synthetic_files;
  const std::vector<FileDoc>* files = loaded_files;
  std::vector<Keyword> synthetic_universe;
  const std::vector<Keyword>* universe = loaded_universe;
  if (!files) {
    auto spec = cfg.corpus.synthetic;
    spec.seed = SplitRng::derive(tseed, 2);
    auto corpus = generate_synthetic_corpus(spec);
    synthetic_files = std::move(corpus.files);
    synthetic_universe = std::move(corpus.truth.universe);
    files = &synthetic_files;
    universe = &synthetic_universe;
  }
  if (universe->empty())
    throw std::invalid_argument("corpus produced an empty keyword universe");

  TrialPlan plan = pick_dict_and_target(cfg, *universe, trng);

  VolumeOracle oracle(SecondaryIndex::build(*files), cfg.leakage,
                      resolve_profile(cfg), plan.truth,
                      SplitRng::derive(tseed, 3));

  TrialResult result;
  AttackOutcome outcome;
  try {
    switch (cfg.attack.variant) {
      case AttackVariant::kBase:
        outcome = base_recover(oracle, plan.dict, cfg.attack.k);
        break;
      case AttackVariant::kSingle:
        single_round_init(oracle, plan.dict, cfg.attack.m);
        outcome = single_round_recover(oracle, plan.dict, cfg.attack.m);
        break;
      case AttackVariant::kPadded:
        outcome = padded_recover(oracle, plan.dict, cfg.attack.k);
        break;
      case AttackVariant::kNoisy: {
        // Server-side dummy growth, at most s-1 new matches per round.
        std::vector<std::uint64_t> noise;
        const auto bound =
            rounds_upper_bound(plan.dict.size(), cfg.attack.k) + 2;
        for (std::uint64_t i = 0; i < bound; ++i)
          noise.push_back(cfg.attack.s > 1
                              ? trng.uniform(0, cfg.attack.s - 1)
                              : 0);
        oracle.set_db_noise(std::move(noise));
        outcome =
            noisy_recover(oracle, plan.dict, cfg.attack.k, cfg.attack.s);
        break;
      }
      case AttackVariant::kConjSingle: {
        auto setup =
            conj_single_replay_init(oracle, plan.dict, plan.truth.size(),
                                    cfg.attack.eps, SplitRng::derive(tseed, 4));
        outcome = conj_single_replay_recover(oracle, setup);
        break;
      }
      case AttackVariant::kConjAdaptive:
        outcome = conj_adaptive_recover(oracle, plan.dict, plan.truth.size());
        break;
    }
  } catch (const ReplayBudgetExhausted& e) {
    outcome.verdict = Verdict::kError;
    outcome.error = e.what();
    outcome.cost = oracle.ledger();
  } catch (const std::invalid_argument& e) {
    outcome.verdict = Verdict::kError;
    outcome.error = e.what();
    outcome.cost = oracle.ledger();
  }

  result.verdict = outcome.verdict;
  result.error = outcome.error;
  result.rounds = outcome.rounds;
  result.cost = outcome.cost;
  if (plan.target_in_dict)
    result.success = outcome.verdict == Verdict::kRecovered &&
                     outcome.recovered == plan.truth;
  else
    result.success = outcome.verdict == Verdict::kNotInDictionary;

  if (truth_out) *truth_out = plan.truth;
  if (transcript_out) *transcript_out = oracle.transcript_json();
  return result;
}

void summarize(ExperimentRecord& rec) {
  double ok = 0, rounds = 0, replays = 0;
  for (const auto& t : rec.per_trial) {
    ok += t.success ? 1 : 0;
    rounds += static_cast<double>(t.rounds);
    replays += static_cast<double>(t.cost.replays);
    rec.files_total += t.cost.files_injected;
    rec.words_total += t.cost.words_injected;
    rec.bytes_total += t.cost.bytes_injected;
  }
  const auto n = static_cast<double>(rec.per_trial.size());
  if (n > 0) {
    rec.accuracy = ok / n;
    rec.rounds_mean = rounds / n;
    rec.replays_mean = replays / n;
  }
  rec.trials = rec.per_trial.size();
}

}  // namespace

AttackVariant parse_variant(const std::string& name) {
  for (std::size_t i = 0; i < std::size(kVariantNames); ++i)
    if (name == kVariantNames[i]) return static_cast<AttackVariant>(i);
  throw std::invalid_argument("unknown attack variant: " + name);
}

std::string variant_name(AttackVariant v) {
  return kVariantNames[static_cast<std::size_t>(v)];
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (target_in_dict_prob < 0 || target_in_dict_prob > 1)
    throw std::invalid_argument("target_in_dict_prob must be in [0, 1]");
  if (attack.variant != AttackVariant::kSingle &&
      attack.variant != AttackVariant::kConjSingle &&
      attack.variant != AttackVariant::kConjAdaptive && attack.k < 2)
    throw std::invalid_argument("partition count k must be >= 2");
  if (attack.variant == AttackVariant::kSingle && attack.m < 1)
    throw std::invalid_argument("single-round spacing m must be >= 1");
  if (attack.variant == AttackVariant::kNoisy && attack.s < 1)
    throw std::invalid_argument("noisy replication s must be >= 1");
  if (attack.variant == AttackVariant::kPadded &&
      leakage.mode != LeakageMode::kTiered)
    throw std::invalid_argument("padded variant requires tiered leakage");
  leakage.validate();
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
  ExperimentConfig cfg;
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.trials = doc.value("trials", cfg.trials);
  if (doc.contains("corpus")) {
    const auto& c = doc.at("corpus");
    cfg.corpus.path = c.value("path", "");
    cfg.corpus.min_doc_freq = c.value("min_doc_freq", cfg.corpus.min_doc_freq);
    if (c.contains("synthetic")) {
      const auto& s = c.at("synthetic");
      auto& spec = cfg.corpus.synthetic;
      spec.n_files = s.value("n_files", spec.n_files);
      spec.universe_size = s.value("universe_size", spec.universe_size);
      spec.law = s.value("law", "uniform") == std::string("zipf")
                     ? FreqLaw::kZipf
                     : FreqLaw::kUniform;
      spec.zipf_s = s.value("zipf_s", spec.zipf_s);
      spec.base_prob = s.value("base_prob", spec.base_prob);
    }
    if (c.contains("rules")) {
      const auto& r = c.at("rules");
      auto& rules = cfg.corpus.rules;
      rules.stem = r.value("stem", rules.stem);
      rules.alphabetic_only =
          r.value("alphabetic_only", rules.alphabetic_only);
      rules.min_len = r.value("min_len", rules.min_len);
      rules.max_len = r.value("max_len", rules.max_len);
      if (r.contains("stopwords"))
        rules.stopwords = load_stopwords(r.at("stopwords").get<std::string>());
    }
  }
  cfg.dict_size = doc.value("dict_size", cfg.dict_size);
  cfg.target_in_dict_prob =
      doc.value("target_in_dict_prob", cfg.target_in_dict_prob);
  if (doc.contains("attack")) {
    const auto& a = doc.at("attack");
    cfg.attack.variant = parse_variant(a.value("variant", "base"));
    cfg.attack.k = a.value("k", cfg.attack.k);
    cfg.attack.m = a.value("m", cfg.attack.m);
    cfg.attack.s = a.value("s", cfg.attack.s);
    cfg.attack.d = a.value("d", cfg.attack.d);
    cfg.attack.eps = a.value("eps", cfg.attack.eps);
  }
  if (doc.contains("leakage")) cfg.leakage = leakage_from_json(doc.at("leakage"));
  cfg.profile = doc.value("profile", cfg.profile);
  cfg.profile_path = doc.value("profile_path", cfg.profile_path);
  cfg.validate();
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json corpus;
  if (cfg.corpus.path.empty()) {
    corpus["synthetic"] = {
        {"n_files", cfg.corpus.synthetic.n_files},
        {"universe_size", cfg.corpus.synthetic.universe_size},
        {"law", cfg.corpus.synthetic.law == FreqLaw::kZipf ? "zipf"
                                                           : "uniform"},
        {"zipf_s", cfg.corpus.synthetic.zipf_s},
        {"base_prob", cfg.corpus.synthetic.base_prob},
    };
  } else {
    corpus["path"] = cfg.corpus.path;
    corpus["min_doc_freq"] = cfg.corpus.min_doc_freq;
  }
  return nlohmann::json{
      {"seed", cfg.seed},
      {"trials", cfg.trials},
      {"corpus", corpus},
      {"dict_size", cfg.dict_size},
      {"target_in_dict_prob", cfg.target_in_dict_prob},
      {"attack",
       {{"variant", variant_name(cfg.attack.variant)},
        {"k", cfg.attack.k},
        {"m", cfg.attack.m},
        {"s", cfg.attack.s},
        {"d", cfg.attack.d},
        {"eps", cfg.attack.eps}}},
      {"leakage", leakage_to_json(cfg.leakage)},
      {"profile", cfg.profile},
      {"profile_path", cfg.profile_path},
  };
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return config_from_json(nlohmann::json::parse(in));
}

std::uint64_t json_hash(const nlohmann::json& doc) {
  const std::string canon = doc.dump();  // nlohmann sorts object keys
  return fnv1a(kFnvOffset, canon.data(), canon.size());
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  return json_hash(config_to_json(cfg));
}

nlohmann::json record_to_json(const ExperimentRecord& rec) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : rec.per_trial)
    trials.push_back({{"success", t.success},
                      {"verdict", verdict_name(t.verdict)},
                      {"error", t.error},
                      {"rounds", t.rounds},
                      {"replays", t.cost.replays},
                      {"files", t.cost.files_injected},
                      {"words", t.cost.words_injected},
                      {"bytes", t.cost.bytes_injected}});
  return nlohmann::json{
      {"variant", rec.variant},       {"config", rec.config},
      {"axis", rec.axis},             {"axis_value", rec.axis_value},
      {"trials", rec.trials},         {"accuracy", rec.accuracy},
      {"rounds_mean", rec.rounds_mean},
      {"replays_mean", rec.replays_mean},
      {"files_total", rec.files_total},
      {"words_total", rec.words_total},
      {"bytes_total", rec.bytes_total},
      {"per_trial", trials},
  };
}

ExperimentRecord record_from_json(const nlohmann::json& doc) {
  ExperimentRecord rec;
  rec.variant = doc.at("variant").get<std::string>();
  rec.config = doc.at("config").get<std::uint64_t>();
  rec.axis = doc.value("axis", "");
  rec.axis_value = doc.value("axis_value", 0.0);
  rec.trials = doc.at("trials").get<std::uint64_t>();
  rec.accuracy = doc.at("accuracy").get<double>();
  rec.rounds_mean = doc.at("rounds_mean").get<double>();
  rec.replays_mean = doc.at("replays_mean").get<double>();
  rec.files_total = doc.at("files_total").get<std::uint64_t>();
  rec.words_total = doc.at("words_total").get<std::uint64_t>();
  rec.bytes_total = doc.at("bytes_total").get<std::uint64_t>();
  if (doc.contains("per_trial"))
    for (const auto& t : doc.at("per_trial")) {
      TrialResult r;
      r.success = t.at("success").get<bool>();
      r.verdict = parse_verdict(t.at("verdict").get<std::string>());
      r.error = t.value("error", "");
      r.rounds = t.at("rounds").get<std::uint64_t>();
      r.cost.replays = t.at("replays").get<std::uint64_t>();
      r.cost.files_injected = t.at("files").get<std::uint64_t>();
      r.cost.words_injected = t.at("words").get<std::uint64_t>();
      r.cost.bytes_injected = t.at("bytes").get<std::uint64_t>();
      rec.per_trial.push_back(std::move(r));
    }
  return rec;
}

ExperimentRecord run_experiment(const ExperimentConfig& cfg, bool parallel) {
  cfg.validate();

  std::vector<FileDoc> loaded;
  std::vector<Keyword> loaded_universe;
  const std::vector<FileDoc>* files = nullptr;
  const std::vector<Keyword>* universe = nullptr;
  if (!cfg.corpus.path.empty()) {
    loaded = cfg.corpus.path.size() > 6 &&
                     cfg.corpus.path.rfind(".jsonl") ==
                         cfg.corpus.path.size() - 6
                 ? load_corpus_jsonl(cfg.corpus.path, cfg.corpus.rules)
                 : load_corpus_dir(cfg.corpus.path, cfg.corpus.rules);
    loaded_universe =
        build_universe(loaded, cfg.corpus.min_doc_freq).universe;
    files = &loaded;
    universe = &loaded_universe;
  }

  ExperimentRecord rec;
  rec.variant = variant_name(cfg.attack.variant);
  rec.config = config_hash(cfg);
  rec.per_trial.resize(cfg.trials);

  if (parallel && cfg.trials > 1) {
    const unsigned workers =
        std::min<std::uint64_t>(cfg.trials,
                                std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::uint64_t t = w; t < cfg.trials; t += workers)
          rec.per_trial[t] =
              run_trial(cfg, files, universe, t, nullptr, nullptr);
      }));
    for (auto& j : jobs) j.get();
  } else {
    for (std::uint64_t t = 0; t < cfg.trials; ++t)
      rec.per_trial[t] = run_trial(cfg, files, universe, t, nullptr, nullptr);
  }
  summarize(rec);
  return rec;
}

SingleRun run_single(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<FileDoc> loaded;
  std::vector<Keyword> loaded_universe;
  const std::vector<FileDoc>* files = nullptr;
  const std::vector<Keyword>* universe = nullptr;
  if (!cfg.corpus.path.empty()) {
    loaded = cfg.corpus.path.size() > 6 &&
                     cfg.corpus.path.rfind(".jsonl") ==
                         cfg.corpus.path.size() - 6
                 ? load_corpus_jsonl(cfg.corpus.path, cfg.corpus.rules)
                 : load_corpus_dir(cfg.corpus.path, cfg.corpus.rules);
    loaded_universe =
        build_universe(loaded, cfg.corpus.min_doc_freq).universe;
    files = &loaded;
    universe = &loaded_universe;
  }
  SingleRun run;
  run.result =
      run_trial(cfg, files, universe, 0, &run.truth, &run.transcript);
  return run;
}

std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& base,
                                        const std::string& axis,
                                        const std::vector<double>& values,
                                        bool parallel) {
  std::vector<ExperimentRecord> records;
  for (double v : values) {
    ExperimentConfig cfg = base;
    if (axis == "k")
      cfg.attack.k = static_cast<std::size_t>(v);
    else if (axis == "m")
      cfg.attack.m = static_cast<std::uint64_t>(v);
    else if (axis == "s")
      cfg.attack.s = static_cast<std::uint64_t>(v);
    else if (axis == "d")
      cfg.attack.d = static_cast<std::size_t>(v);
    else if (axis == "eps")
      cfg.attack.eps = v;
    else if (axis == "dict_size")
      cfg.dict_size = static_cast<std::size_t>(v);
    else if (axis == "universe_size")
      cfg.corpus.synthetic.universe_size = static_cast<std::size_t>(v);
    else if (axis == "n_files")
      cfg.corpus.synthetic.n_files = static_cast<std::size_t>(v);
    else if (axis == "tier_base")
      cfg.leakage.tier_base = static_cast<std::uint32_t>(v);
    else if (axis == "noise_max")
      cfg.leakage.noise_max = static_cast<std::uint64_t>(v);
    else if (axis == "block_size")
      cfg.leakage.block_size = static_cast<std::uint64_t>(v);
    else
      throw std::invalid_argument("unknown sweep axis: " + axis);
    ExperimentRecord rec = run_experiment(cfg, parallel);
    rec.axis = axis;
    rec.axis_value = v;
    records.push_back(std::move(rec));
  }
  return records;
}

std::string records_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "axis,accuracy,rounds_mean,files_total,words_total,bytes_total,"
         "replays_mean\n";
  for (const auto& r : records) {
    out << r.axis_value << ',' << r.accuracy << ',' << r.rounds_mean << ','
        << r.files_total << ',' << r.words_total << ',' << r.bytes_total
        << ',' << r.replays_mean << '\n';
  }
  return out.str();
}

std::string records_svg(const std::vector<ExperimentRecord>& records) {
  const int w = 640, h = 400, ml = 60, mr = 20, mt = 40, mb = 50;
  double xmin = 0, xmax = 1;
  if (!records.empty()) {
    xmin = xmax = records.front().axis_value;
    for (const auto& r : records) {
      xmin = std::min(xmin, r.axis_value);
      xmax = std::max(xmax, r.axis_value);
    }
    if (xmax == xmin) xmax = xmin + 1;
  }
  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
  };
  auto py = [&](double acc) { return h - mb - acc * (h - mt - mb); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
      << "\">\n";
  out << "  <rect width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\""
      << w - mr << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  const std::string axis_label =
      records.empty() || records.front().axis.empty() ? "value"
                                                      : records.front().axis;
  out << "  <text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << axis_label
      << "</text>\n";
  out << "  <text x=\"16\" y=\"" << (mt + h - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 "
         "16 "
      << (mt + h - mb) / 2 << ")\">accuracy</text>\n";
  if (!records.empty()) {
    out << "  <text x=\"" << w - mr << "\" y=\"20\" text-anchor=\"end\" "
        << "font-size=\"11\">config " << std::hex << records.front().config
        << std::dec << "</text>\n";
    out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
           "points=\"";
    for (const auto& r : records)
      out << px(r.axis_value) << ',' << py(r.accuracy) << ' ';
    out << "\"/>\n";
    for (const auto& r : records)
      out << "  <circle cx=\"" << px(r.axis_value) << "\" cy=\""
          << py(r.accuracy) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  for (int tick = 0; tick <= 4; ++tick) {
    const double acc = tick / 4.0;
    out << "  <text x=\"" << ml - 8 << "\" y=\"" << py(acc) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << acc << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

bool validate_json(const nlohmann::json& doc, const nlohmann::json& schema,
                   std::string* err) {
  auto set_err = [&](const std::string& what) {
    if (err) *err = what;
    return false;
  };
  if (schema.contains("type")) {
    const std::string type = schema.at("type").get<std::string>();
    const bool ok =
        (type == "object" && doc.is_object()) ||
        (type == "array" && doc.is_array()) ||
        (type == "string" && doc.is_string()) ||
        (type == "number" && doc.is_number()) ||
        (type == "integer" && doc.is_number_integer()) ||
        (type == "boolean" && doc.is_boolean());
    if (!ok) return set_err("expected " + type + ", got " + doc.type_name());
  }
  if (schema.contains("required"))
    for (const auto& key : schema.at("required")) {
      const auto name = key.get<std::string>();
      if (!doc.contains(name)) return set_err("missing key: " + name);
    }
  if (schema.contains("properties") && doc.is_object())
    for (const auto& [name, sub] : schema.at("properties").items())
      if (doc.contains(name)) {
        std::string inner;
        if (!validate_json(doc.at(name), sub, &inner))
          return set_err(name + ": " + inner);
      }
  if (schema.contains("items") && doc.is_array())
    for (std::size_t i = 0; i < doc.size(); ++i) {
      std::string inner;
      if (!validate_json(doc[i], schema.at("items"), &inner))
        return set_err("[" + std::to_string(i) + "]: " + inner);
    }
  return true;
}

nlohmann::json record_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(R"({
    "type": "object",
    "required": ["variant", "config", "trials", "accuracy", "rounds_mean",
                 "replays_mean", "files_total", "words_total", "bytes_total"],
    "properties": {
      "variant": {"type": "string"},
      "config": {"type": "integer"},
      "axis": {"type": "string"},
      "axis_value": {"type": "number"},
      "trials": {"type": "integer"},
      "accuracy": {"type": "number"},
      "rounds_mean": {"type": "number"},
      "replays_mean": {"type": "number"},
      "files_total": {"type": "integer"},
      "words_total": {"type": "integer"},
      "bytes_total": {"type": "integer"},
      "per_trial": {
        "type": "array",
        "items": {
          "type": "object",
          "required": ["success", "verdict", "rounds", "replays", "files",
                       "words", "bytes"],
          "properties": {
            "success": {"type": "boolean"},
            "verdict": {"type": "string"},
            "rounds": {"type": "integer"},
            "replays": {"type": "integer"},
            "files": {"type": "integer"},
            "words": {"type": "integer"},
            "bytes": {"type": "integer"}
          }
        }
      }
    }
  })");
  return schema;
}

bool transcript_counts_only(const nlohmann::json& transcript) {
  if (!transcript.is_array()) return false;
  static const std::set<std::string> allowed = {
      "kind", "time", "files", "words", "bytes", "observed", "blocked"};
  static const std::set<std::string> kinds = {"victim_query", "replay",
                                              "inject", "block"};
  for (const auto& ev : transcript) {
    if (!ev.is_object()) return false;
    if (!ev.contains("kind") || !kinds.count(ev.at("kind").get<std::string>()))
      return false;
    for (const auto& [key, value] : ev.items()) {
      if (!allowed.count(key)) return false;
      if (value.is_string() && key != "kind") return false;
      if (value.is_object() || value.is_array()) return false;
    }
  }
  return true;
}

}  // namespace voleak
