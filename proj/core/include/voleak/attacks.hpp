#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voleak/oracle.hpp"

namespace voleak {

enum class Verdict { kRecovered, kNotInDictionary, kError };

struct AttackOutcome {
  Verdict verdict = Verdict::kError;
  std::vector<Keyword> recovered;  // one keyword, or d for conjunctions
  std::string error;               // set when verdict == kError
  std::uint64_t rounds = 0;
  CostLedger cost;  // oracle ledger at the end of the attack
};

// Dictionary words are ranked 1..dict_size in sorted order; partition_of
// maps rank to a 1-based partition in 1..k. Partition p covers the ranks in
// ((p-1)*dict_size/k, p*dict_size/k], so all k partitions are nonempty
// whenever dict_size >= k.
std::size_t partition_of(std::size_t dict_size, std::size_t k,
                         std::size_t rank);

// Iterative dictionary halving against exact volume leakage. Each round
// partitions the candidates into k parts and injects file F_t holding every
// word of partitions t..k, so a word of partition i gains exactly i results
// and the count delta between replays names the partition. Runs a fixed
// ceil(log_k |D|) rounds; once one candidate is left the remaining rounds
// degenerate to single-file confirmations.
AttackOutcome base_recover(VolumeOracle& oracle,
                           const std::vector<Keyword>& dict, std::size_t k);

// Non-adaptive variant for apps that never replay: inject m*i matching
// files for the word of rank i, all before the victim's query, and read the
// rank straight out of floor(n/m). Wrong exactly when the word's baseline
// count reaches m.
void single_round_init(VolumeOracle& oracle, const std::vector<Keyword>& dict,
                       std::uint64_t m);
AttackOutcome single_round_recover(VolumeOracle& oracle,
                                   const std::vector<Keyword>& dict,
                                   std::uint64_t m);
// Probability of a wrong guess: total frequency mass of words whose
// baseline count is at least m. freq and baseline are parallel to the
// dictionary.
double single_round_error_prob(const std::vector<double>& freq,
                               const std::vector<std::uint64_t>& baseline,
                               std::uint64_t m);

// Dictionary halving against tiered padding. A partition is probed by
// injecting just enough matching files to push the current tier over its
// upper edge; the tier bumps iff the target word is in the probed
// partition. The leakage config is read from the oracle.
AttackOutcome padded_recover(VolumeOracle& oracle,
                             const std::vector<Keyword>& dict, std::size_t k);

// Dictionary halving under additive count noise of at most s-1 per round:
// every per-round file is injected s times, so floor(delta / s) still
// names the partition.
AttackOutcome noisy_recover(VolumeOracle& oracle,
                            const std::vector<Keyword>& dict, std::size_t k,
                            std::uint64_t s);

// Conjunction of d keywords, one replay. Injects n = ceil((2+eps) * d *
// log2 |D|) random files, each holding L = ceil((1/2)^(1/d) * |D|)
// dictionary words, file i in 2^i copies; the count delta's binary
// expansion reveals which files match the whole conjunction, and their
// keyword intersection is the target w.h.p.
struct ConjSetup {
  std::vector<std::vector<Keyword>> file_words;  // file i gets 2^i copies
  std::uint64_t baseline = 0;  // victim's count before injection
};
std::size_t conj_file_count(std::size_t dict_size, std::size_t d, double eps);
std::size_t conj_words_per_file(std::size_t dict_size, std::size_t d);
// Throws std::invalid_argument when the copy budget (2^n) is unrepresentable.
// Set-bit positions of delta: the injected files whose copy weights add up
// to the observed count increase.
std::vector<std::size_t> conj_decode(std::uint64_t delta);
ConjSetup conj_single_replay_init(VolumeOracle& oracle,
                                  const std::vector<Keyword>& dict,
                                  std::size_t d, double eps,
                                  std::uint64_t seed);
AttackOutcome conj_single_replay_recover(VolumeOracle& oracle,
                                         const ConjSetup& setup);

// Conjunction of d keywords with adaptive injection: d binary searches,
// each pinning the largest not-yet-found keyword, one injected file and one
// replay per step. Exactly d * ceil(log2 |D|) of each.
AttackOutcome conj_adaptive_recover(VolumeOracle& oracle,
                                    const std::vector<Keyword>& dict,
                                    std::size_t d);

}  // namespace voleak
