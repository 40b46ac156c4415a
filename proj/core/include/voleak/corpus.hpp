#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "voleak/rng.hpp"

namespace voleak {

using Keyword = std::string;
using FileId = std::string;

// A document reduced to its keyword set. Within-file multiplicity is
// discarded after byte accounting; the index only cares about membership.
struct FileDoc {
  FileId id;
  std::vector<Keyword> keywords;  // sorted, unique
  std::uint64_t byte_size = 0;

  bool contains(const Keyword& w) const;
  void normalize();  // sort + dedupe, recompute byte_size if zero
};

// Byte cost convention for constructed files: keyword lengths plus one
// separator byte per keyword.
std::uint64_t word_bytes(const std::vector<Keyword>& words);

struct PreprocessRules {
  bool stem = true;
  bool alphabetic_only = true;
  std::size_t min_len = 4;   // keep keywords of final length >= min_len
  std::size_t max_len = 19;  // ... and <= max_len
  std::set<std::string> stopwords;  // empty set means the bundled list

  const std::set<std::string>& effective_stopwords() const;
};

const std::set<std::string>& bundled_stopwords();
std::set<std::string> load_stopwords(const std::string& path);
void dump_stopwords(const std::set<std::string>& words,
                    const std::string& path);

// stem -> stopword filter -> charset filter -> length filter. The length
// bound applies to the emitted keyword (after stemming), so every surviving
// keyword satisfies it.
std::set<Keyword> tokenize_file(std::string_view raw_text,
                                const PreprocessRules& rules);

struct CorpusStats {
  std::vector<Keyword> universe;            // sorted, unique
  std::map<Keyword, std::uint32_t> doc_freq;
};

// Keeps keywords appearing in strictly more than min_doc_freq files.
CorpusStats build_universe(const std::vector<FileDoc>& files,
                           std::uint32_t min_doc_freq);

enum class FreqLaw { kUniform, kZipf };

struct SyntheticSpec {
  std::uint64_t seed = 1;
  std::size_t n_files = 100;
  std::size_t universe_size = 100;
  FreqLaw law = FreqLaw::kUniform;
  double zipf_s = 1.0;
  double base_prob = 0.5;  // inclusion probability of the rank-1 keyword
};

struct SyntheticCorpus {
  std::vector<FileDoc> files;
  CorpusStats truth;  // ground-truth doc_freq over the full universe
};

// Deterministic for a fixed spec; throws std::invalid_argument on n_files=0
// or universe_size=0.
SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec);

// The i-th synthetic keyword (0-based); purely alphabetic, fixed width, so
// lexicographic order matches rank order.
Keyword synthetic_keyword(std::size_t index, std::size_t universe_size);

// Loaders: a directory of plain-text files (one document each), or a
// JSON-lines file of {"id": ..., "text": ...} records.
std::vector<FileDoc> load_corpus_dir(const std::string& dir,
                                     const PreprocessRules& rules);
std::vector<FileDoc> load_corpus_jsonl(const std::string& path,
                                       const PreprocessRules& rules);

}  // namespace voleak
