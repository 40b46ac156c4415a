#include "voleak/index.hpp"

#include <algorithm>
#include <stdexcept>

namespace voleak {

SecondaryIndex SecondaryIndex::build(const std::vector<FileDoc>& files) {
  SecondaryIndex index;
  index.files_.reserve(files.size());
  for (const auto& f : files) {
    if (index.files_.count(f.id))
      throw std::invalid_argument("duplicate file id: " + f.id);
    index.insert_visible(f, 1);
  }
  return index;
}

void SecondaryIndex::insert_visible(const FileDoc& doc, std::uint64_t copies) {
  auto [it, inserted] = files_.emplace(doc.id, doc);
  (void)inserted;
  for (const auto& w : doc.keywords) entries_[w].push_back(doc.id);
  if (copies > 1) copies_[doc.id] = copies;
}

QueryResult SecondaryIndex::query(const Keyword& w) const {
  QueryResult result;
  auto it = entries_.find(w);
  if (it == entries_.end()) return result;
  result.file_ids = it->second;
  for (const auto& id : result.file_ids) {
    auto c = copies_.find(id);
    result.true_count += c == copies_.end() ? 1 : c->second;
  }
  return result;
}

QueryResult SecondaryIndex::query_conj(
    const std::vector<Keyword>& words) const {
  QueryResult result;
  if (words.empty()) return result;
  // Start from the rarest keyword's posting list.
  const std::vector<FileId>* smallest = nullptr;
  for (const auto& w : words) {
    auto it = entries_.find(w);
    if (it == entries_.end()) return result;
    if (!smallest || it->second.size() < smallest->size())
      smallest = &it->second;
  }
  for (const auto& id : *smallest) {
    const auto& doc = files_.at(id);
    bool all = true;
    for (const auto& w : words)
      if (!doc.contains(w)) {
        all = false;
        break;
      }
    if (!all) continue;
    result.file_ids.push_back(id);
    auto c = copies_.find(id);
    result.true_count += c == copies_.end() ? 1 : c->second;
  }
  return result;
}

std::size_t SecondaryIndex::inject(const std::vector<FileDoc>& files,
                                   const std::vector<double>& visible_at,
                                   std::uint64_t copies) {
  if (visible_at.size() != files.size())
    throw std::invalid_argument("inject: one visible_at per file required");
  for (const auto& f : files)
    if (files_.count(f.id) || pending_ids_.count(f.id))
      throw std::invalid_argument("duplicate file id: " + f.id);
  for (std::size_t i = 0; i < files.size(); ++i) {
    pending_.push_back(Pending{files[i], visible_at[i], copies});
    pending_ids_.insert(files[i].id);
  }
  if (!updates_blocked_) flush_due();
  return files.size();
}

std::size_t SecondaryIndex::inject(const std::vector<FileDoc>& files,
                                   std::uint64_t copies) {
  return inject(files, std::vector<double>(files.size(), now_), copies);
}

void SecondaryIndex::set_update_block(bool blocked) {
  updates_blocked_ = blocked;
  if (!updates_blocked_) flush_due();
}

void SecondaryIndex::advance_to(double now) {
  if (now < now_) throw std::invalid_argument("clock may not move backwards");
  now_ = now;
  if (!updates_blocked_) flush_due();
}

void SecondaryIndex::flush_due() {
  // All-or-none per call: collect everything due, then insert.
  std::deque<Pending> keep;
  std::vector<Pending> due;
  for (auto& p : pending_) {
    if (p.visible_at <= now_)
      due.push_back(std::move(p));
    else
      keep.push_back(std::move(p));
  }
  pending_.swap(keep);
  for (const auto& p : due) {
    pending_ids_.erase(p.doc.id);
    insert_visible(p.doc, p.copies);
  }
}

double SecondaryIndex::latest_pending_time() const {
  double latest = now_;
  for (const auto& p : pending_) latest = std::max(latest, p.visible_at);
  return latest;
}

void SecondaryIndex::add_noise_entries(const Keyword& w, std::uint64_t count) {
  for (std::uint64_t i = 0; i < count; ++i) {
    FileDoc dummy;
    dummy.id = "noise:" + std::to_string(noise_serial_++);
    dummy.keywords = {w};
    dummy.byte_size = word_bytes(dummy.keywords);
    insert_visible(dummy, 1);
  }
}

const std::vector<Keyword>& SecondaryIndex::keywords_of(
    const FileId& id) const {
  return files_.at(id).keywords;
}

nlohmann::json SecondaryIndex::snapshot() const {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [w, ids] : entries_) {
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    entries[w] = sorted;
  }
  nlohmann::json copies = nlohmann::json::object();
  for (const auto& [id, c] : copies_) copies[id] = c;
  return nlohmann::json{{"entries", entries}, {"copies", copies}};
}

SecondaryIndex SecondaryIndex::restore(const nlohmann::json& snap) {
  std::unordered_map<FileId, FileDoc> docs;
  for (const auto& [w, ids] : snap.at("entries").items())
    for (const auto& id : ids) {
      auto& doc = docs[id.get<FileId>()];
      doc.id = id.get<FileId>();
      doc.keywords.push_back(w);
    }
  SecondaryIndex index;
  for (auto& [id, doc] : docs) {
    doc.normalize();
    index.insert_visible(doc, 1);
  }
  if (snap.contains("copies"))
    for (const auto& [id, c] : snap.at("copies").items())
      if (c.get<std::uint64_t>() > 1) index.copies_[id] = c;
  return index;
}

}  // namespace voleak
