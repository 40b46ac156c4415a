#include "voleak/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace voleak {

namespace {

// Smallest R with k^R >= n (0 for n <= 1).
std::uint64_t rounds_needed(std::size_t n, std::size_t k) {
  std::uint64_t r = 0;
  std::uint64_t reach = 1;
  while (reach < n) {
    reach *= k;
    ++r;
  }
  return r;
}

std::vector<Keyword> sorted_dict(const std::vector<Keyword>& dict) {
  auto d = dict;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

// Candidate words of partition p (1-based) under a k-way split.
std::vector<Keyword> partition_words(const std::vector<Keyword>& cand,
                                     std::size_t k, std::size_t p) {
  std::vector<Keyword> words;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (partition_of(cand.size(), k, i + 1) == p) words.push_back(cand[i]);
  return words;
}

FileDoc make_file(VolumeOracle& oracle, std::vector<Keyword> words) {
  FileDoc doc;
  doc.id = oracle.fresh_file_id();
  doc.keywords = std::move(words);
  doc.normalize();
  doc.byte_size = word_bytes(doc.keywords);
  return doc;
}

AttackOutcome finish(VolumeOracle& oracle, AttackOutcome out) {
  out.cost = oracle.ledger();
  return out;
}

AttackOutcome fail(VolumeOracle& oracle, std::string why) {
  AttackOutcome out;
  out.verdict = Verdict::kError;
  out.error = std::move(why);
  return finish(oracle, out);
}

}  // namespace

std::size_t partition_of(std::size_t dict_size, std::size_t k,
                         std::size_t rank) {
  if (rank < 1 || rank > dict_size)
    throw std::invalid_argument("rank out of range");
  return (rank * k + dict_size - 1) / dict_size;  // ceil(rank * k / n)
}

AttackOutcome base_recover(VolumeOracle& oracle,
                           const std::vector<Keyword>& dict, std::size_t k) {
  if (k < 2) throw std::invalid_argument("base attack needs k >= 2");
  auto cand = sorted_dict(dict);
  const std::uint64_t total_rounds = rounds_needed(cand.size(), k);

  std::uint64_t prev = oracle.baseline();
  AttackOutcome out;
  for (std::uint64_t r = 0; r < total_rounds; ++r) {
    const std::size_t k_eff = std::min(k, cand.size());
    std::vector<FileDoc> files;
    for (std::size_t t = 1; t <= k_eff; ++t) {
      std::vector<Keyword> words;
      for (std::size_t i = 0; i < cand.size(); ++i)
        if (partition_of(cand.size(), k_eff, i + 1) >= t)
          words.push_back(cand[i]);
      files.push_back(make_file(oracle, std::move(words)));
    }
    oracle.inject(files);
    const std::uint64_t n = oracle.trigger_replay();
    const std::uint64_t delta = n - prev;
    prev = n;
    out.rounds = r + 1;
    if (delta == 0) {
      out.verdict = Verdict::kNotInDictionary;
      return finish(oracle, out);
    }
    if (delta > k_eff)
      return fail(oracle, "count delta exceeds partition count");
    cand = partition_words(cand, k_eff, delta);
  }
  if (cand.size() != 1) return fail(oracle, "dictionary did not narrow");
  out.verdict = Verdict::kRecovered;
  out.recovered = {cand.front()};
  return finish(oracle, out);
}

void single_round_init(VolumeOracle& oracle, const std::vector<Keyword>& dict,
                       std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("single-round attack needs m >= 1");
  if (oracle.baseline_observed())
    throw std::logic_error("single-round injection must precede the query");
  auto d = sorted_dict(dict);
  for (std::size_t i = 0; i < d.size(); ++i)
    oracle.inject({make_file(oracle, {d[i]})}, m * (i + 1));
}

AttackOutcome single_round_recover(VolumeOracle& oracle,
                                   const std::vector<Keyword>& dict,
                                   std::uint64_t m) {
  auto d = sorted_dict(dict);
  const std::uint64_t n = oracle.baseline();
  AttackOutcome out;
  out.rounds = 1;
  const std::uint64_t rank = n / m;
  if (rank == 0) {
    out.verdict = Verdict::kNotInDictionary;
    return finish(oracle, out);
  }
  if (rank > d.size()) return fail(oracle, "count exceeds dictionary range");
  out.verdict = Verdict::kRecovered;
  out.recovered = {d[rank - 1]};
  return finish(oracle, out);
}

double single_round_error_prob(const std::vector<double>& freq,
                               const std::vector<std::uint64_t>& baseline,
                               std::uint64_t m) {
  if (freq.size() != baseline.size())
    throw std::invalid_argument("freq and baseline must be parallel");
  double p = 0;
  for (std::size_t i = 0; i < freq.size(); ++i)
    if (baseline[i] >= m) p += freq[i];
  return p;
}

AttackOutcome padded_recover(VolumeOracle& oracle,
                             const std::vector<Keyword>& dict, std::size_t k) {
  if (k < 2) throw std::invalid_argument("padded attack needs k >= 2");
  const LeakageConfig& cfg = oracle.leakage_config();
  if (cfg.mode != LeakageMode::kTiered)
    throw std::invalid_argument("padded attack requires tiered leakage");
  auto cand = sorted_dict(dict);
  const std::uint64_t total_rounds = rounds_needed(cand.size(), k);

  std::uint64_t tier = oracle.baseline();
  AttackOutcome out;
  for (std::uint64_t r = 0; r < total_rounds; ++r) {
    const std::size_t k_eff = std::min(k, cand.size());
    std::size_t found = 0;
    for (std::size_t p = 1; p <= k_eff && !found; ++p) {
      // Enough matching files to cross the tier edge iff the target word
      // lies in partition p (its true count is > prev_tier(tier)).
      const std::uint64_t probe =
          std::max<std::uint64_t>(1, tier - prev_tier(tier, cfg));
      auto words = partition_words(cand, k_eff, p);
      std::vector<FileDoc> files;
      for (std::uint64_t i = 0; i < probe; ++i)
        files.push_back(make_file(oracle, words));
      oracle.block_updates(true);
      oracle.inject(files);
      oracle.block_updates(false);
      const std::uint64_t n = oracle.trigger_replay();
      if (n > tier) found = p;
      tier = n;
    }
    out.rounds = r + 1;
    if (!found) {
      out.verdict = Verdict::kNotInDictionary;
      return finish(oracle, out);
    }
    cand = partition_words(cand, k_eff, found);
  }
  if (cand.size() != 1) return fail(oracle, "dictionary did not narrow");
  out.verdict = Verdict::kRecovered;
  out.recovered = {cand.front()};
  return finish(oracle, out);
}

AttackOutcome noisy_recover(VolumeOracle& oracle,
                            const std::vector<Keyword>& dict, std::size_t k,
                            std::uint64_t s) {
  if (k < 2) throw std::invalid_argument("noisy attack needs k >= 2");
  if (s < 1) throw std::invalid_argument("noisy attack needs s >= 1");
  auto cand = sorted_dict(dict);
  const std::uint64_t total_rounds = rounds_needed(cand.size(), k);

  std::uint64_t prev = oracle.baseline();
  AttackOutcome out;
  for (std::uint64_t r = 0; r < total_rounds; ++r) {
    const std::size_t k_eff = std::min(k, cand.size());
    std::vector<FileDoc> files;
    for (std::size_t t = 1; t <= k_eff; ++t) {
      std::vector<Keyword> words;
      for (std::size_t i = 0; i < cand.size(); ++i)
        if (partition_of(cand.size(), k_eff, i + 1) >= t)
          words.push_back(cand[i]);
      // s identical files per partition level; per-round noise below s
      // cannot shift floor(delta / s).
      for (std::uint64_t c = 0; c < s; ++c)
        files.push_back(make_file(oracle, words));
    }
    oracle.inject(files);
    const std::uint64_t n = oracle.trigger_replay();
    const std::uint64_t delta = n - prev;
    prev = n;
    out.rounds = r + 1;
    const std::uint64_t part = delta / s;
    if (part == 0) {
      out.verdict = Verdict::kNotInDictionary;
      return finish(oracle, out);
    }
    if (part > k_eff)
      return fail(oracle, "count delta exceeds partition count");
    cand = partition_words(cand, k_eff, part);
  }
  if (cand.size() != 1) return fail(oracle, "dictionary did not narrow");
  out.verdict = Verdict::kRecovered;
  out.recovered = {cand.front()};
  return finish(oracle, out);
}

std::size_t conj_file_count(std::size_t dict_size, std::size_t d,
                            double eps) {
  if (dict_size < 2 || d < 1)
    throw std::invalid_argument("conjunctive attack needs |D| >= 2, d >= 1");
  if (eps < 0) throw std::invalid_argument("eps must be >= 0");
  return static_cast<std::size_t>(
      std::ceil((2.0 + eps) * static_cast<double>(d) *
                std::log2(static_cast<double>(dict_size))));
}

std::size_t conj_words_per_file(std::size_t dict_size, std::size_t d) {
  const double frac = std::pow(0.5, 1.0 / static_cast<double>(d));
  auto L = static_cast<std::size_t>(
      std::ceil(frac * static_cast<double>(dict_size)));
  return std::min(L, dict_size);
}

ConjSetup conj_single_replay_init(VolumeOracle& oracle,
                                  const std::vector<Keyword>& dict,
                                  std::size_t d, double eps,
                                  std::uint64_t seed) {
  auto D = sorted_dict(dict);
  const std::size_t n = conj_file_count(D.size(), d, eps);
  if (n >= 63)
    throw std::invalid_argument(
        "single-replay copy budget 2^" + std::to_string(n) +
        " is not representable; use the adaptive variant");
  const std::size_t L = conj_words_per_file(D.size(), d);

  ConjSetup setup;
  setup.baseline = oracle.baseline();
  SplitRng rng = SplitRng::substream(seed, 0xc0417);
  std::vector<std::size_t> idx(D.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < n; ++i) {
    // First L entries of a partial Fisher-Yates shuffle: L distinct words.
    for (std::size_t j = 0; j < L; ++j)
      std::swap(idx[j], idx[rng.uniform(j, idx.size() - 1)]);
    std::vector<Keyword> words;
    words.reserve(L);
    for (std::size_t j = 0; j < L; ++j) words.push_back(D[idx[j]]);
    std::sort(words.begin(), words.end());
    oracle.inject({make_file(oracle, words)}, 1ull << i);
    setup.file_words.push_back(std::move(words));
  }
  return setup;
}

std::vector<std::size_t> conj_decode(std::uint64_t delta) {
  std::vector<std::size_t> bits;
  for (std::size_t i = 0; delta >> i; ++i)
    if ((delta >> i) & 1) bits.push_back(i);
  return bits;
}

AttackOutcome conj_single_replay_recover(VolumeOracle& oracle,
                                         const ConjSetup& setup) {
  AttackOutcome out;
  out.rounds = 1;
  const std::uint64_t n = oracle.trigger_replay();
  const std::uint64_t delta = n - setup.baseline;
  if (delta >> setup.file_words.size())
    return fail(oracle, "count delta exceeds injected copy total");
  std::vector<Keyword> inter;
  bool first = true;
  for (std::size_t i : conj_decode(delta)) {
    const auto& words = setup.file_words[i];
    if (first) {
      inter = words;
      first = false;
      continue;
    }
    std::vector<Keyword> next;
    std::set_intersection(inter.begin(), inter.end(), words.begin(),
                          words.end(), std::back_inserter(next));
    inter.swap(next);
  }
  if (first) {
    out.verdict = Verdict::kNotInDictionary;
    return finish(oracle, out);
  }
  out.verdict = Verdict::kRecovered;
  out.recovered = std::move(inter);
  return finish(oracle, out);
}

AttackOutcome conj_adaptive_recover(VolumeOracle& oracle,
                                    const std::vector<Keyword>& dict,
                                    std::size_t d) {
  auto D = sorted_dict(dict);
  AttackOutcome out;
  if (d == 0) {
    out.verdict = Verdict::kRecovered;
    return finish(oracle, out);
  }
  if (D.size() < d)
    throw std::invalid_argument("dictionary smaller than conjunction");

  std::uint64_t prev = oracle.baseline();
  std::vector<Keyword> pinned;
  for (std::size_t j = 0; j < d; ++j) {
    // Binary search for the largest keyword not yet pinned: the prefix file
    // D[1..mid] + pinned matches iff every unpinned target word has rank
    // <= mid. A fixed step count keeps the replay budget exact; once the
    // range is a single rank the remaining steps degenerate to
    // confirmations.
    std::size_t lo = 1, hi = D.size();
    const std::uint64_t steps = rounds_needed(D.size(), 2);
    for (std::uint64_t step = 0; step < steps; ++step) {
      const std::size_t mid = lo + (hi - lo) / 2;
      std::vector<Keyword> words(D.begin(), D.begin() + mid);
      words.insert(words.end(), pinned.begin(), pinned.end());
      oracle.inject({make_file(oracle, std::move(words))});
      const std::uint64_t n = oracle.trigger_replay();
      const std::uint64_t delta = n - prev;
      prev = n;
      out.rounds++;
      if (delta > 1) return fail(oracle, "count delta exceeds one file");
      if (delta == 1)
        hi = mid;
      else
        lo = mid + 1;
    }
    pinned.push_back(D[lo - 1]);
  }
  std::sort(pinned.begin(), pinned.end());
  out.verdict = Verdict::kRecovered;
  out.recovered = std::move(pinned);
  return finish(oracle, out);
}

}  // namespace voleak
