#ifndef EMBALIGN_DICTIONARY_HPP
#define EMBALIGN_DICTIONARY_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace embalign {

struct DictEntry {
  std::string src;
  std::string tgt;
  std::optional<double> score;
};

// Ordered multiset of (source, target) anchor pairs. A source word may map to
// multiple targets; exact (source, target) duplicates are rejected.
struct BilingualDictionary {
  std::vector<DictEntry> entries;

  // False (and no insertion) when the exact pair is already present.
  bool add(std::string src, std::string tgt, std::optional<double> score = std::nullopt);

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }

  // Unique source words in first-appearance order.
  std::vector<std::string> unique_sources() const;

  // source word -> set of its target words.
  std::unordered_map<std::string, std::unordered_set<std::string>> targets_by_source() const;

  // Entries whose source word is in `sources`, original order preserved.
  BilingualDictionary filter_sources(const std::unordered_set<std::string>& sources) const;

  // Every (src, tgt) flipped to (tgt, src); duplicate flipped pairs collapse.
  BilingualDictionary reversed() const;

 private:
  std::unordered_set<std::string> keys_;
};

struct DictReadReport {
  std::int64_t duplicates_skipped = 0;
  std::int64_t malformed_lines = 0;
};

// One "source<TAB>target" per line; single-space separation is accepted for
// MUSE-format compatibility. An optional third field is parsed as a score.
BilingualDictionary read_dictionary(std::istream& in, DictReadReport* report = nullptr);

// Tab-separated, UTF-8, LF; scores appended as a third column on request.
void write_dictionary(const BilingualDictionary& dict, std::ostream& out,
                      bool with_scores = false);

}  // namespace embalign

#endif  // EMBALIGN_DICTIONARY_HPP
