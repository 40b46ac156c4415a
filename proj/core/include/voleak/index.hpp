#pragma once

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "voleak/corpus.hpp"

namespace voleak {

struct QueryResult {
  std::vector<FileId> file_ids;   // distinct matching files
  std::uint64_t true_count = 0;   // copy-weighted result count
};

// Ground-truth secondary index: keyword -> files containing it. No
// encryption is performed; the leakage contract is enforced structurally by
// the oracle layer, which never exposes this object to attack code.
//
// A file may carry a copy multiplicity > 1. Copies are identical documents
// injected in bulk (the conjunctive single-replay attack injects 2^i copies
// of one file); they count individually toward result volumes. For
// multiplicity-1 instances, true_count == file_ids.size().
class SecondaryIndex {
 public:
  // Throws std::invalid_argument on duplicate file ids.
  static SecondaryIndex build(const std::vector<FileDoc>& files);

  QueryResult query(const Keyword& w) const;
  // Files containing every keyword of the conjunction.
  QueryResult query_conj(const std::vector<Keyword>& words) const;

  // Files become visible at visible_at (simulated seconds); until then they
  // sit in the pending queue. Returns the number of files admitted. Throws
  // on duplicate ids.
  std::size_t inject(const std::vector<FileDoc>& files,
                     const std::vector<double>& visible_at,
                     std::uint64_t copies = 1);
  std::size_t inject(const std::vector<FileDoc>& files,
                     std::uint64_t copies = 1);  // visible immediately

  // While blocked, nothing leaves the pending queue. Unblocking flushes all
  // due files atomically.
  void set_update_block(bool blocked);
  bool updates_blocked() const { return updates_blocked_; }

  // Advances simulated time and flushes due pending files (unless blocked).
  void advance_to(double now);
  double now() const { return now_; }

  // System-side noise: dummy (w, f) entries added by the server, bypassing
  // the pending queue. Not attacker-visible and not attacker-controlled.
  void add_noise_entries(const Keyword& w, std::uint64_t count);

  std::size_t visible_files() const { return files_.size(); }
  std::size_t pending_files() const { return pending_.size(); }
  // Latest indexed-at time among pending files (now() if none pending).
  double latest_pending_time() const;
  const std::vector<Keyword>& keywords_of(const FileId& id) const;

  // Snapshot as keyword -> sorted id list (copies expanded into the count
  // map), restorable for reproducible experiment checkpoints.
  nlohmann::json snapshot() const;
  static SecondaryIndex restore(const nlohmann::json& snap);

 private:
  struct Pending {
    FileDoc doc;
    double visible_at = 0;
    std::uint64_t copies = 1;
  };

  void insert_visible(const FileDoc& doc, std::uint64_t copies);
  void flush_due();

  std::unordered_map<Keyword, std::vector<FileId>> entries_;
  std::unordered_map<FileId, FileDoc> files_;
  std::unordered_map<FileId, std::uint64_t> copies_;  // only ids with > 1
  std::deque<Pending> pending_;  // FIFO
  std::unordered_set<FileId> pending_ids_;
  bool updates_blocked_ = false;
  double now_ = 0;
  std::uint64_t noise_serial_ = 0;
};

}  // namespace voleak
