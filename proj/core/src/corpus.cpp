#include "voleak/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "voleak/stemmer.hpp"

namespace voleak {

bool FileDoc::contains(const Keyword& w) const {
  return std::binary_search(keywords.begin(), keywords.end(), w);
}

void FileDoc::normalize() {
  std::sort(keywords.begin(), keywords.end());
  keywords.erase(std::unique(keywords.begin(), keywords.end()),
                 keywords.end());
  if (byte_size == 0) byte_size = word_bytes(keywords);
}

std::uint64_t word_bytes(const std::vector<Keyword>& words) {
  std::uint64_t total = 0;
  for (const auto& w : words) total += w.size() + 1;  // one separator byte
  return total;
}

namespace {

const char* const kStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an",
    "and", "ani", "are", "as", "at", "be", "becaus", "been", "befor", "below",
    "between", "both", "but", "by", "can", "cannot", "could", "did", "do",
    "doe", "down", "dure", "each", "few", "for", "from", "further", "had",
    "has", "have", "he", "her", "here", "hers", "herself", "him", "himself",
    "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself",
    "just", "me", "more", "most", "my", "myself", "no", "nor", "not", "now",
    "of", "off", "on", "onc", "onli", "or", "other", "ought", "our", "ours",
    "ourselv", "out", "over", "own", "same", "she", "should", "so", "some",
    "such", "than", "that", "the", "their", "theirs", "them", "themselv",
    "then", "there", "these", "they", "this", "those", "through", "to",
    "too", "under", "until", "up", "veri", "was", "we", "were", "what",
    "when", "where", "which", "while", "who", "whom", "whi", "will", "with",
    "would", "you", "your", "yours", "yourself", "yourselv",
    // stemmed variants of common inflected function words
    "ha", "hi", "wa", "thi", "becam", "becom", "make", "mani", "much",
    "must", "never", "often", "onto", "said", "sai", "shall", "still",
    "take", "took", "upon", "us", "use", "went", "whether", "yet",
};

}  // namespace

const std::set<std::string>& bundled_stopwords() {
  static const std::set<std::string> list(std::begin(kStopwords),
                                          std::end(kStopwords));
  return list;
}

const std::set<std::string>& PreprocessRules::effective_stopwords() const {
  return stopwords.empty() ? bundled_stopwords() : stopwords;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword list: " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() &&
           std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    std::size_t i = 0;
    while (i < line.size() &&
           std::isspace(static_cast<unsigned char>(line[i])))
      i++;
    line.erase(0, i);
    if (line.empty()) continue;
    std::transform(line.begin(), line.end(), line.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    out.insert(line);
  }
  return out;
}

void dump_stopwords(const std::set<std::string>& words,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write stopword list: " + path);
  for (const auto& w : words) out << w << '\n';
}

std::set<Keyword> tokenize_file(std::string_view raw_text,
                                const PreprocessRules& rules) {
  const auto& stopwords = rules.effective_stopwords();
  std::set<Keyword> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::string word = rules.stem ? porter_stem(token) : token;
    token.clear();
    if (stopwords.count(word)) return;
    if (rules.alphabetic_only &&
        !std::all_of(word.begin(), word.end(), [](unsigned char c) {
          return std::islower(c);
        }))
      return;
    if (word.size() < rules.min_len || word.size() > rules.max_len) return;
    out.insert(std::move(word));
  };
  for (char c : raw_text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      token.push_back(static_cast<char>(std::tolower(uc)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

CorpusStats build_universe(const std::vector<FileDoc>& files,
                           std::uint32_t min_doc_freq) {
  std::map<Keyword, std::uint32_t> freq;
  for (const auto& f : files)
    for (const auto& w : f.keywords) freq[w]++;
  CorpusStats stats;
  for (const auto& [w, n] : freq) {
    if (n > min_doc_freq) {  // strictly more
      stats.universe.push_back(w);
      stats.doc_freq.emplace(w, n);
    }
  }
  return stats;
}

Keyword synthetic_keyword(std::size_t index, std::size_t universe_size) {
  std::size_t width = 1;
  std::size_t span = 26;
  while (span < universe_size) {
    width++;
    span *= 26;
  }
  width = std::max<std::size_t>(width, 4);
  std::string word(width, 'a');
  for (std::size_t pos = width; index > 0 && pos > 0; index /= 26)
    word[--pos] = static_cast<char>('a' + index % 26);
  return "kw" + word;
}

SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec) {
  if (spec.n_files == 0)
    throw std::invalid_argument("synthetic corpus: n_files must be >= 1");
  if (spec.universe_size == 0)
    throw std::invalid_argument("synthetic corpus: universe_size must be >= 1");

  std::vector<Keyword> universe(spec.universe_size);
  std::vector<double> prob(spec.universe_size);
  for (std::size_t r = 0; r < spec.universe_size; ++r) {
    universe[r] = synthetic_keyword(r, spec.universe_size);
    prob[r] = spec.law == FreqLaw::kUniform
                  ? spec.base_prob
                  : spec.base_prob / std::pow(static_cast<double>(r + 1),
                                              spec.zipf_s);
  }

  SplitRng rng(spec.seed);
  SyntheticCorpus corpus;
  corpus.files.reserve(spec.n_files);
  std::map<Keyword, std::uint32_t> freq;
  for (std::size_t f = 0; f < spec.n_files; ++f) {
    FileDoc doc;
    doc.id = "syn-" + std::to_string(f);
    for (std::size_t r = 0; r < spec.universe_size; ++r) {
      if (rng.bernoulli(prob[r])) {
        doc.keywords.push_back(universe[r]);
        freq[universe[r]]++;
      }
    }
    doc.byte_size = word_bytes(doc.keywords);
    corpus.files.push_back(std::move(doc));
  }
  corpus.truth.universe = std::move(universe);
  for (const auto& w : corpus.truth.universe)
    corpus.truth.doc_freq.emplace(w, freq.count(w) ? freq[w] : 0);
  return corpus;
}

std::vector<FileDoc> load_corpus_dir(const std::string& dir,
                                     const PreprocessRules& rules) {
  namespace fs = std::filesystem;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());

  std::vector<FileDoc> files;
  files.reserve(paths.size());
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open document: " + p.string());
    std::ostringstream text;
    text << in.rdbuf();
    FileDoc doc;
    doc.id = p.filename().string();
    auto words = tokenize_file(text.str(), rules);
    doc.keywords.assign(words.begin(), words.end());
    doc.byte_size = static_cast<std::uint64_t>(fs::file_size(p));
    files.push_back(std::move(doc));
  }
  return files;
}

std::vector<FileDoc> load_corpus_jsonl(const std::string& path,
                                       const PreprocessRules& rules) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::vector<FileDoc> files;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                               e.what());
    }
    FileDoc doc;
    doc.id = rec.at("id").is_string() ? rec.at("id").get<std::string>()
                                      : rec.at("id").dump();
    const auto text = rec.at("text").get<std::string>();
    auto words = tokenize_file(text, rules);
    doc.keywords.assign(words.begin(), words.end());
    doc.byte_size = text.size();
    files.push_back(std::move(doc));
  }
  return files;
}

}  // namespace voleak
