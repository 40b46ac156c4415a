// End-to-end acceptance gate. Each numbered check prints one PASS/FAIL
// line; the process exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "voleak/attacks.hpp"
#include "voleak/harness.hpp"
#include "voleak/planner.hpp"

using namespace voleak;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
  std::printf("criterion %d (%s): %s%s%s\n", idx, name,
              ok ? "PASS" : "FAIL", detail.empty() ? "" : " - ",
              detail.c_str());
  if (!ok) failures++;
}

std::vector<Keyword> make_dict(std::size_t n) {
  std::vector<Keyword> dict;
  dict.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    dict.push_back(synthetic_keyword(i, n));
  return dict;
}

std::uint64_t ceil_log(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 0;
  for (std::uint64_t reach = 1; reach < n; reach *= k) ++r;
  return r;
}

VolumeOracle make_oracle(const Keyword& target, std::uint64_t baseline,
                         LeakageConfig leakage, const std::string& profile,
                         std::uint64_t seed) {
  std::vector<FileDoc> corpus;
  for (std::uint64_t i = 0; i < baseline; ++i)
    corpus.push_back({"base" + std::to_string(i), {target}, 0});
  return VolumeOracle(SecondaryIndex::build(corpus), leakage,
                      builtin_profile(profile), {target}, seed);
}

struct GridResult {
  bool exact = true;
  std::uint64_t max_words = 0;
  std::string detail;
};

// One (|D|, k) cell of the exhaustive base-attack grid.
GridResult run_grid_cell(std::size_t dict_size, std::size_t k) {
  GridResult res;
  const auto dict = make_dict(dict_size);
  const std::uint64_t rounds = ceil_log(dict_size, k);
  std::uint64_t pw = 1;
  while (pw < dict_size) pw *= k;
  const bool exact_power = pw == dict_size;
  for (const auto& target : dict) {
    auto oracle = make_oracle(target, 0, {}, "ideal", 1);
    auto out = base_recover(oracle, dict, k);
    const bool ok =
        out.verdict == Verdict::kRecovered && out.recovered[0] == target &&
        out.rounds == rounds && out.cost.replays == rounds &&
        out.cost.files_injected <= k * rounds &&
        (!exact_power || out.cost.files_injected == k * rounds);
    if (!ok && res.exact) {
      res.exact = false;
      res.detail = "|D|=" + std::to_string(dict_size) +
                   " k=" + std::to_string(k) + " target " + target;
    }
    res.max_words = std::max(res.max_words, out.cost.words_injected);
  }
  return res;
}

void criterion_1_and_3() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t dims[] = {10, 100, 1000, 2000};
  const std::size_t ks[] = {2, 3, 5, 10, 32};
  std::vector<std::future<GridResult>> jobs;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t d : dims)
    for (std::size_t k : ks) {
      cells.emplace_back(d, k);
      jobs.push_back(std::async(std::launch::async, run_grid_cell, d, k));
    }
  bool ok1 = true, ok3 = true;
  std::string detail1, detail3;
  std::map<std::pair<std::size_t, std::size_t>, double> ratio;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto res = jobs[i].get();
    if (!res.exact && ok1) {
      ok1 = false;
      detail1 = res.detail;
    }
    const auto [d, k] = cells[i];
    const double r =
        static_cast<double>(res.max_words) / (static_cast<double>(k) * d);
    ratio[{d, k}] = r;
    if (r > 2.0 && ok3) {
      ok3 = false;
      detail3 = "words ratio " + std::to_string(r) + " at |D|=" +
                std::to_string(d) + " k=" + std::to_string(k);
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (ok1 && secs >= 60) {
    ok1 = false;
    detail1 = "grid took " + std::to_string(secs) + " s";
  }
  if (ok1)
    detail1 = "15550 recoveries exact in " + std::to_string(secs) + " s";
  report(1, "base attack exactness", ok1, detail1);

  // O(k|D|) scaling: the fitted words constant may not grow as |D| doubles.
  for (std::size_t k : ks)
    if (ok3 && ratio[{2000, k}] > ratio[{1000, k}] * 1.25) {
      ok3 = false;
      detail3 = "ratio grows with |D| at k=" + std::to_string(k);
    }
  if (ok3) detail3 = "max words <= 2 k |D| across the grid";
  report(3, "word-injection bound", ok3, detail3);
}

void criterion_2() {
  struct Row {
    std::uint64_t dict, k, rounds, lo, hi;  // reported emails +- 1
  };
  const Row rows[] = {
      {10, 10, 1, 9, 11},        {100, 10, 2, 19, 21},
      {1000, 32, 2, 62, 65},     {10000, 22, 3, 63, 65},
      {100000, 18, 4, 70, 72},
  };
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    auto plan = plan_parameters(row.dict);
    if (!plan || plan->k != row.k || plan->rounds != row.rounds) {
      ok = false;
      detail = "plan mismatch at |D|=" + std::to_string(row.dict);
      break;
    }
    const auto dict = make_dict(row.dict);
    SplitRng rng(17);
    for (int trial = 0; trial < 3; ++trial) {
      const auto& target = dict[rng.uniform(0, dict.size() - 1)];
      auto oracle = make_oracle(target, 0, {}, "gmail", 40 + trial);
      auto out = base_recover(oracle, dict, plan->k);
      if (out.verdict != Verdict::kRecovered || out.recovered[0] != target ||
          out.cost.replays != row.rounds ||
          out.cost.files_injected < row.lo ||
          out.cost.files_injected > row.hi) {
        ok = false;
        detail = "|D|=" + std::to_string(row.dict) + ": emails " +
                 std::to_string(out.cost.files_injected) + ", replays " +
                 std::to_string(out.cost.replays);
        break;
      }
    }
    if (!ok) break;
  }
  if (ok) detail = "all five table rows reproduced under the gmail profile";
  report(2, "reference parameter table", ok, detail);
}

void criterion_4() {
  SyntheticSpec spec;
  spec.seed = 2024;
  spec.n_files = 200;
  spec.universe_size = 60;
  spec.law = FreqLaw::kZipf;
  auto corpus = generate_synthetic_corpus(spec);
  const auto dict = corpus.truth.universe;
  std::vector<double> freq(dict.size(), 1.0 / dict.size());
  std::vector<std::uint64_t> baseline;
  std::uint64_t max_baseline = 0;
  for (const auto& w : dict) {
    baseline.push_back(corpus.truth.doc_freq.at(w));
    max_baseline = std::max(max_baseline, baseline.back());
  }

  auto empirical_error = [&](std::uint64_t m, int trials) {
    SplitRng rng(555 + m);
    int wrong = 0;
    for (int t = 0; t < trials; ++t) {
      const auto& target = dict[rng.uniform(0, dict.size() - 1)];
      VolumeOracle oracle(SecondaryIndex::build(corpus.files), {},
                          builtin_profile("ideal"), {target},
                          rng.next_u64());
      single_round_init(oracle, dict, m);
      auto out = single_round_recover(oracle, dict, m);
      if (out.verdict != Verdict::kRecovered || out.recovered[0] != target)
        wrong++;
    }
    return static_cast<double>(wrong) / trials;
  };

  const std::uint64_t m = 4;
  const double analytic = single_round_error_prob(freq, baseline, m);
  const double empirical = empirical_error(m, 10000);
  bool ok = std::abs(empirical - analytic) <= 0.02;
  std::string detail = "analytic " + std::to_string(analytic) +
                       ", empirical " + std::to_string(empirical);
  if (ok && empirical_error(max_baseline + 1, 500) != 0.0) {
    ok = false;
    detail = "errors with m above every baseline";
  }
  if (ok) {
    // Accuracy grows with the spacing m.
    double prev = 1.0;
    for (std::uint64_t mm : {1ull, 5ull, 20ull, 60ull}) {
      const double err = empirical_error(mm, 2000);
      if (err > prev + 0.02) {
        ok = false;
        detail = "error rate not monotone in m";
        break;
      }
      prev = err;
    }
  }
  report(4, "single-round error probability", ok, detail);
}

void criterion_5() {
  LeakageConfig tiers;
  tiers.mode = LeakageMode::kTiered;
  tiers.tier_base = 2;
  const std::uint64_t n0 = 4;
  const std::size_t k = 2;
  bool ok = true;
  std::string detail;
  std::vector<double> file_fit, word_fit;
  for (std::size_t dict_size : {64, 128, 256, 512}) {
    const auto dict = make_dict(dict_size);
    std::vector<FileDoc> corpus;
    for (std::uint64_t i = 0; i < n0; ++i)
      corpus.push_back({"base" + std::to_string(i), dict, 0});
    double files = 0, words = 0;
    for (const auto& target : dict) {
      VolumeOracle oracle(SecondaryIndex::build(corpus), tiers,
                          builtin_profile("ideal"), {target}, 3);
      auto out = padded_recover(oracle, dict, k);
      if (out.verdict != Verdict::kRecovered || out.recovered[0] != target) {
        ok = false;
        detail = "miss at |D|=" + std::to_string(dict_size) + " target " +
                 target;
        break;
      }
      files += static_cast<double>(out.cost.files_injected);
      words += static_cast<double>(out.cost.words_injected);
    }
    if (!ok) break;
    const auto runs = static_cast<double>(dict_size);
    // k = 2, so |D|^(log_k 2) = |D|
    file_fit.push_back(files / runs / (n0 * k * dict_size));
    word_fit.push_back(words / runs / (n0 * dict_size));
  }
  if (ok) {
    for (const auto& fit : {file_fit, word_fit}) {
      const auto [lo, hi] = std::minmax_element(fit.begin(), fit.end());
      if (*hi > 2.0 * *lo) {
        ok = false;
        detail = "fitted constant drifts beyond x2: " + std::to_string(*lo) +
                 " .. " + std::to_string(*hi);
      }
    }
  }
  if (ok)
    detail = "100% recovery to |D|=512; cost constants stable (files " +
             std::to_string(file_fit.front()) + " -> " +
             std::to_string(file_fit.back()) + ")";
  report(5, "padding attack", ok, detail);
}

void criterion_6() {
  const std::size_t k = 4, dict_size = 64;  // k^3, so file counts are exact
  const auto dict = make_dict(dict_size);
  const std::uint64_t rounds = ceil_log(dict_size, k);
  bool ok = true;
  std::string detail;
  for (std::uint64_t s : {2, 5, 10}) {
    SplitRng rng(777 + s);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const auto& target = dict[rng.uniform(0, dict.size() - 1)];
      auto oracle = make_oracle(target, trial, {}, "ideal", rng.next_u64());
      std::vector<std::uint64_t> noise;
      for (std::uint64_t r = 0; r < rounds; ++r)
        noise.push_back(rng.uniform(0, s - 1));  // adversarial but admissible
      noise[trial % rounds] = s - 1;             // force the worst case often
      oracle.set_db_noise(noise);
      auto out = noisy_recover(oracle, dict, k, s);
      if (out.verdict != Verdict::kRecovered || out.recovered[0] != target ||
          out.cost.files_injected != s * k * rounds) {
        ok = false;
        detail = "s=" + std::to_string(s) + " target " + target;
      }
    }
  }
  if (ok) {
    // Noise reaching s breaks the decoding precondition.
    const std::uint64_t s = 5;
    auto oracle = make_oracle(dict[0], 0, {}, "ideal", 12);
    oracle.set_db_noise({s, s, s});
    auto out = noisy_recover(oracle, dict, k, s);
    if (out.verdict == Verdict::kRecovered && out.recovered[0] == dict[0]) {
      ok = false;
      detail = "decoding survived noise == s";
    }
  }
  if (ok) detail = "exact file counts for s in {2,5,10}; s-noise fails";
  report(6, "noisy attack", ok, detail);
}

void criterion_7() {
  bool ok = true;
  std::string detail;
  for (std::size_t d : {1, 2, 3}) {
    for (std::size_t dict_size : {64, 256}) {
      const auto dict = make_dict(dict_size);
      const std::uint64_t budget = d * ceil_log(dict_size, 2);
      SplitRng rng(31 * d + dict_size);
      for (int trial = 0; trial < 10 && ok; ++trial) {
        std::set<std::size_t> picks;
        while (picks.size() < d)
          picks.insert(rng.uniform(0, dict.size() - 1));
        std::vector<Keyword> truth;
        for (auto i : picks) truth.push_back(dict[i]);
        VolumeOracle oracle(SecondaryIndex::build({}), {},
                            builtin_profile("ideal"), truth, rng.next_u64());
        auto out = conj_adaptive_recover(oracle, dict, d);
        if (out.verdict != Verdict::kRecovered || out.recovered != truth ||
            out.cost.replays != budget ||
            out.cost.files_injected != budget) {
          ok = false;
          detail = "adaptive d=" + std::to_string(d) +
                   " |D|=" + std::to_string(dict_size);
        }
      }
    }
  }

  if (ok) {
    // Subset decoding, exhaustive for 12 injected files.
    for (std::uint64_t delta = 0; delta < (1u << 12) && ok; ++delta) {
      std::uint64_t back = 0;
      for (auto bit : conj_decode(delta)) back |= 1ull << bit;
      if (back != delta || (delta && conj_decode(delta).back() >= 12)) {
        ok = false;
        detail = "decode mismatch at delta " + std::to_string(delta);
      }
    }
  }

  int recovered = 0;
  const int mc_trials = 200;
  if (ok) {
    // Monte-Carlo single-replay runs, each audited against a brute-force
    // intersection over the known injected files.
    const auto dict = make_dict(32);
    SplitRng rng(4242);
    for (int trial = 0; trial < mc_trials && ok; ++trial) {
      std::set<std::size_t> picks;
      while (picks.size() < 2) picks.insert(rng.uniform(0, dict.size() - 1));
      std::vector<Keyword> truth;
      for (auto i : picks) truth.push_back(dict[i]);
      VolumeOracle oracle(SecondaryIndex::build({}), {},
                          builtin_profile("ideal"), truth, rng.next_u64());
      auto setup =
          conj_single_replay_init(oracle, dict, 2, 0.5, rng.next_u64());
      auto out = conj_single_replay_recover(oracle, setup);

      std::set<Keyword> inter;
      bool first = true;
      for (const auto& words : setup.file_words) {
        bool match = true;
        for (const auto& w : truth)
          match = match && std::binary_search(words.begin(), words.end(), w);
        if (!match) continue;
        std::set<Keyword> cur(words.begin(), words.end());
        if (first) {
          inter = cur;
          first = false;
        } else {
          std::set<Keyword> next;
          for (const auto& w : inter)
            if (cur.count(w)) next.insert(w);
          inter = next;
        }
      }
      const std::vector<Keyword> brute(inter.begin(), inter.end());
      const bool agree =
          first ? out.verdict == Verdict::kNotInDictionary
                : out.verdict == Verdict::kRecovered && out.recovered == brute;
      if (!agree) {
        ok = false;
        detail = "single-replay decode disagrees with brute force";
      }
      if (out.verdict == Verdict::kRecovered && out.recovered == truth)
        recovered++;
    }
  }
  if (ok)
    detail = "adaptive exact; decode exhaustive to n=12; single-replay "
             "success " +
             std::to_string(recovered) + "/" + std::to_string(mc_trials) +
             " with 100% oracle agreement";
  report(7, "conjunctive attacks", ok, detail);
}

void criterion_8() {
  const int cases = 100000;
  bool ok = true;
  std::string detail;
  SplitRng rng(616);

  auto random_tiered = [&] {
    LeakageConfig cfg;
    cfg.mode = LeakageMode::kTiered;
    cfg.tier_base = static_cast<std::uint32_t>(rng.uniform(2, 10));
    return cfg;
  };

  for (int i = 0; i < cases && ok; ++i) {  // monotonicity
    LeakageConfig cfg;
    cfg.mode = static_cast<LeakageMode>(rng.uniform(0, 3));
    cfg.tier_base = static_cast<std::uint32_t>(rng.uniform(2, 10));
    cfg.noise_max = rng.uniform(0, 50);
    cfg.block_size = rng.uniform(1, 20);
    if (rng.bernoulli(0.5)) cfg.pagination_cap = rng.uniform(1, 500);
    const auto a = rng.uniform(0, 100000), b = rng.uniform(0, 100000);
    const auto noise = rng.uniform(0, cfg.noise_max);
    if (observe_once(std::min(a, b), cfg, noise) >
        observe_once(std::max(a, b), cfg, noise)) {
      ok = false;
      detail = "monotonicity";
    }
  }
  for (int i = 0; i < cases && ok; ++i) {  // tier soundness
    auto cfg = random_tiered();
    const auto n = rng.uniform(1, 1u << 20);
    const auto t = pad_tier(n, cfg);
    if (t < n || prev_tier(t, cfg) >= n || pad_tier(t, cfg) != t) {
      ok = false;
      detail = "tier soundness at n=" + std::to_string(n);
    }
  }
  {
    LeakageConfig cfg;
    cfg.mode = LeakageMode::kAdditiveNoise;
    cfg.noise_max = 9;
    LeakageChannel chan(cfg, 88);
    for (int i = 0; i < cases && ok; ++i) {  // noise boundedness
      const auto n = rng.uniform(0, 1000);
      const auto obs = chan.observe_count(n).value;
      if (obs < n || obs > n + cfg.noise_max) {
        ok = false;
        detail = "noise boundedness";
      }
    }
  }
  for (int i = 0; i < cases && ok; ++i) {  // pagination dominance
    LeakageConfig cfg;
    cfg.mode = static_cast<LeakageMode>(rng.uniform(0, 3));
    cfg.tier_base = 2;
    cfg.noise_max = rng.uniform(0, 50);
    cfg.block_size = rng.uniform(1, 20);
    cfg.pagination_cap = rng.uniform(1, 300);
    if (observe_once(rng.uniform(0, 1u << 20), cfg,
                     rng.uniform(0, cfg.noise_max)) > *cfg.pagination_cap) {
      ok = false;
      detail = "pagination dominance";
    }
  }
  if (ok) detail = "4 x 100000 property cases";
  report(8, "leakage-channel properties", ok, detail);
}

void criterion_9() {
  ExperimentConfig cfg;
  cfg.seed = 31337;
  cfg.trials = 24;
  cfg.corpus.synthetic.n_files = 60;
  cfg.corpus.synthetic.universe_size = 80;
  cfg.corpus.synthetic.law = FreqLaw::kZipf;
  cfg.dict_size = 64;
  cfg.attack.variant = AttackVariant::kBase;
  cfg.attack.k = 8;
  const auto serial = json_hash(record_to_json(run_experiment(cfg, false)));
  const auto parallel = json_hash(record_to_json(run_experiment(cfg, true)));
  const auto rerun = json_hash(record_to_json(run_experiment(cfg, false)));
  const bool ok = serial == parallel && serial == rerun;
  report(9, "determinism", ok,
         ok ? "serial, parallel and rerun record hashes identical"
            : "record hashes diverge");
}

}  // namespace

int main() {
  criterion_1_and_3();
  criterion_2();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
