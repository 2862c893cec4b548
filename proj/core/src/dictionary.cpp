#include "embalign/dictionary.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "embalign/errors.hpp"

namespace embalign {

namespace {
std::string pair_key(const std::string& src, const std::string& tgt) {
  std::string key;
  key.reserve(src.size() + tgt.size() + 1);
  key += src;
  key += '\t';
  key += tgt;
  return key;
}
}  // namespace

bool BilingualDictionary::add(std::string src, std::string tgt,
                              std::optional<double> score) {
  if (!keys_.insert(pair_key(src, tgt)).second) return false;
  entries.push_back({std::move(src), std::move(tgt), score});
  return true;
}

std::vector<std::string> BilingualDictionary::unique_sources() const {
  std::vector<std::string> sources;
  std::unordered_set<std::string> seen;
  for (const auto& e : entries)
    if (seen.insert(e.src).second) sources.push_back(e.src);
  return sources;
}

std::unordered_map<std::string, std::unordered_set<std::string>>
BilingualDictionary::targets_by_source() const {
  std::unordered_map<std::string, std::unordered_set<std::string>> map;
  for (const auto& e : entries) map[e.src].insert(e.tgt);
  return map;
}

BilingualDictionary BilingualDictionary::filter_sources(
    const std::unordered_set<std::string>& sources) const {
  BilingualDictionary out;
  for (const auto& e : entries)
    if (sources.count(e.src)) out.add(e.src, e.tgt, e.score);
  return out;
}

BilingualDictionary BilingualDictionary::reversed() const {
  BilingualDictionary out;
  for (const auto& e : entries) out.add(e.tgt, e.src, e.score);
  return out;
}

BilingualDictionary read_dictionary(std::istream& in, DictReadReport* report) {
  BilingualDictionary dict;
  std::string line;
  std::int64_t dups = 0, bad = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    size_t sep = line.find('\t');
    if (sep == std::string::npos) sep = line.find(' ');
    if (sep == std::string::npos || sep == 0 || sep + 1 >= line.size()) {
      ++bad;
      continue;
    }
    std::string src = line.substr(0, sep);

    std::string rest = line.substr(sep + 1);
    std::optional<double> score;
    size_t sep2 = rest.find('\t');
    if (sep2 == std::string::npos) sep2 = rest.find(' ');
    std::string tgt;
    if (sep2 != std::string::npos) {
      tgt = rest.substr(0, sep2);
      std::string score_str = rest.substr(sep2 + 1);
      double v = 0;
      auto [p, ec] = std::from_chars(score_str.data(), score_str.data() + score_str.size(), v);
      if (ec == std::errc() && p == score_str.data() + score_str.size()) score = v;
    } else {
      tgt = std::move(rest);
    }
    if (tgt.empty()) {
      ++bad;
      continue;
    }
    if (!dict.add(std::move(src), std::move(tgt), score)) ++dups;
  }
  if (report) {
    report->duplicates_skipped = dups;
    report->malformed_lines = bad;
  }
  return dict;
}

void write_dictionary(const BilingualDictionary& dict, std::ostream& out,
                      bool with_scores) {
  for (const auto& e : dict.entries) {
    out << e.src << '\t' << e.tgt;
    if (with_scores && e.score) {
      char tmp[32];
      auto [p, ec] = std::to_chars(tmp, tmp + sizeof(tmp), *e.score);
      (void)ec;
      out << '\t';
      out.write(tmp, p - tmp);
    }
    out << '\n';
  }
  if (!out) throw InputError("write_dictionary: write failure");
}

}  // namespace embalign
