#include "embalign/induction.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>

#include "embalign/errors.hpp"

namespace embalign {

namespace {

std::vector<std::string> filtered_unique(const std::vector<std::string>& tokens,
                                         const WordSet& stopwords) {
  std::vector<std::string> out;
  WordSet seen;
  for (const auto& t : tokens) {
    if (stopwords.count(t)) continue;
    if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

// Deterministic bounded draw; std::uniform_int_distribution is
// implementation-defined, this is not.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

struct Candidate {
  double score;
  std::int64_t joint;
  const std::string* target;
};

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.joint != b.joint) return a.joint > b.joint;
  return *a.target < *b.target;
}

}  // namespace

ParallelCorpus read_parallel_files(std::istream& src, std::istream& tgt,
                                   const CorpusOptions& opts) {
  ParallelCorpus corpus;
  std::string sline, tline;
  std::int64_t n_src = 0, n_tgt = 0;
  while (true) {
    bool has_src = static_cast<bool>(std::getline(src, sline));
    bool has_tgt = static_cast<bool>(std::getline(tgt, tline));
    if (!has_src && !has_tgt) break;
    if (has_src) ++n_src;
    if (has_tgt) ++n_tgt;
    if (!has_src || !has_tgt) {
      // drain to report exact counts
      while (std::getline(src, sline)) ++n_src;
      while (std::getline(tgt, tline)) ++n_tgt;
      throw InputError("read_parallel_files: line count mismatch (source " +
                       std::to_string(n_src) + ", target " + std::to_string(n_tgt) + ")");
    }
    corpus.pairs.emplace_back(tokenize(sline, opts.lowercase_source),
                              tokenize(tline, opts.lowercase_target));
  }
  return corpus;
}

ParallelCorpus read_parallel_tsv(std::istream& in, const CorpusOptions& opts) {
  ParallelCorpus corpus;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw InputError("read_parallel_tsv: line " + std::to_string(line_no) +
                       ": expected two tab-separated columns");
    corpus.pairs.emplace_back(
        tokenize(std::string_view(line).substr(0, tab), opts.lowercase_source),
        tokenize(std::string_view(line).substr(tab + 1), opts.lowercase_target));
  }
  return corpus;
}

std::int64_t CooccurrenceTable::count_src(const std::string& x) const {
  auto it = src_count.find(x);
  return it == src_count.end() ? 0 : it->second;
}

std::int64_t CooccurrenceTable::count_tgt(const std::string& y) const {
  auto it = tgt_count.find(y);
  return it == tgt_count.end() ? 0 : it->second;
}

std::int64_t CooccurrenceTable::count_joint(const std::string& x, const std::string& y) const {
  auto it = joint.find(x);
  if (it == joint.end()) return 0;
  auto jt = it->second.find(y);
  return jt == it->second.end() ? 0 : jt->second;
}

void CooccurrenceTable::merge(const CooccurrenceTable& other) {
  n_pairs += other.n_pairs;
  for (const auto& [w, c] : other.src_count) src_count[w] += c;
  for (const auto& [w, c] : other.tgt_count) tgt_count[w] += c;
  for (const auto& [x, row] : other.joint) {
    auto& mine = joint[x];
    for (const auto& [y, c] : row) mine[y] += c;
  }
}

CooccurrenceTable count_cooccurrences(const ParallelCorpus& corpus,
                                      const WordSet& src_stopwords,
                                      const WordSet& tgt_stopwords) {
  CooccurrenceTable table;
  table.n_pairs = static_cast<std::int64_t>(corpus.pairs.size());
  for (const auto& [src_tokens, tgt_tokens] : corpus.pairs) {
    auto xs = filtered_unique(src_tokens, src_stopwords);
    auto ys = filtered_unique(tgt_tokens, tgt_stopwords);
    for (const auto& x : xs) ++table.src_count[x];
    for (const auto& y : ys) ++table.tgt_count[y];
    for (const auto& x : xs) {
      auto& row = table.joint[x];
      for (const auto& y : ys) ++row[y];
    }
  }
  return table;
}

double ppmi(const CooccurrenceTable& table, const std::string& x, const std::string& y) {
  const std::int64_t cxy = table.count_joint(x, y);
  if (cxy == 0) return 0.0;  // pmi -> -inf, clipped
  const double cx = static_cast<double>(table.count_src(x));
  const double cy = static_cast<double>(table.count_tgt(y));
  const double pmi =
      std::log2(static_cast<double>(table.n_pairs) * static_cast<double>(cxy) / (cx * cy));
  return std::max(pmi, 0.0);
}

namespace {

template <typename ScoreFn>
BilingualDictionary induce_ranked(const CooccurrenceTable& table, std::int64_t min_joint,
                                  std::int64_t per_source_cap, ScoreFn score_fn) {
  std::vector<const std::string*> sources;
  sources.reserve(table.joint.size());
  for (const auto& [x, row] : table.joint) {
    (void)row;
    sources.push_back(&x);
  }
  std::sort(sources.begin(), sources.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });

  BilingualDictionary dict;
  std::vector<Candidate> candidates;
  for (const std::string* x : sources) {
    candidates.clear();
    for (const auto& [y, cxy] : table.joint.at(*x)) {
      if (cxy < min_joint) continue;
      auto score = score_fn(*x, y, cxy);
      if (!score) continue;
      candidates.push_back({*score, cxy, &y});
    }
    std::sort(candidates.begin(), candidates.end(), candidate_before);
    std::int64_t kept = 0;
    for (const auto& c : candidates) {
      if (per_source_cap > 0 && kept >= per_source_cap) break;
      dict.add(*x, *c.target, c.score);
      ++kept;
    }
  }
  return dict;
}

}  // namespace

BilingualDictionary induce_ppmi_dict(const CooccurrenceTable& table, double threshold,
                                     std::int64_t min_joint) {
  if (threshold < 0) throw std::invalid_argument("induce_ppmi_dict: threshold must be >= 0");
  if (min_joint <= 0) throw std::invalid_argument("induce_ppmi_dict: min_joint must be positive");
  return induce_ranked(table, min_joint, /*per_source_cap=*/0,
                       [&](const std::string& x, const std::string& y,
                           std::int64_t) -> std::optional<double> {
                         double v = ppmi(table, x, y);
                         if (v < threshold) return std::nullopt;
                         return v;
                       });
}

BilingualDictionary induce_condprob_dict(const CooccurrenceTable& table,
                                         std::int64_t min_joint, std::int64_t top_k) {
  if (min_joint <= 0)
    throw std::invalid_argument("induce_condprob_dict: min_joint must be positive");
  if (top_k <= 0) throw std::invalid_argument("induce_condprob_dict: top_k must be positive");
  return induce_ranked(table, min_joint, top_k,
                       [&](const std::string& x, const std::string& y,
                           std::int64_t cxy) -> std::optional<double> {
                         const double cx = static_cast<double>(table.count_src(x));
                         const double cy = static_cast<double>(table.count_tgt(y));
                         return static_cast<double>(cxy) * static_cast<double>(cxy) / (cx * cy);
                       });
}

namespace {

LanguageStats side_stats(const std::vector<const std::string*>& words, const WordSet& vocab,
                         const WordSet& stopwords) {
  LanguageStats stats;
  stats.total = static_cast<std::int64_t>(words.size());

  WordSet unique_words;
  std::int64_t total_wo_stop = 0;
  WordSet unique_wo_stop;
  for (const std::string* w : words) {
    unique_words.insert(*w);
    if (!stopwords.count(*w)) {
      ++total_wo_stop;
      unique_wo_stop.insert(*w);
    }
  }
  stats.unique = static_cast<std::int64_t>(unique_words.size());
  if (stats.total > 0)
    stats.unique_pct_with_stopwords =
        100.0 * static_cast<double>(stats.unique) / static_cast<double>(stats.total);
  if (total_wo_stop > 0)
    stats.unique_pct_without_stopwords = 100.0 *
                                         static_cast<double>(unique_wo_stop.size()) /
                                         static_cast<double>(total_wo_stop);

  std::int64_t available = 0;
  for (const auto& w : unique_words)
    if (vocab.count(w)) ++available;
  if (stats.unique > 0)
    stats.lookup_precision_pct =
        100.0 * static_cast<double>(available) / static_cast<double>(stats.unique);
  return stats;
}

}  // namespace

DictionaryStats compute_stats(const BilingualDictionary& dict, const WordSet& src_vocab,
                              const WordSet& tgt_vocab, const WordSet& src_stopwords,
                              const WordSet& tgt_stopwords) {
  DictionaryStats stats;
  if (dict.empty()) {
    stats.empty_dictionary = true;
    return stats;
  }
  std::vector<const std::string*> src_words, tgt_words;
  src_words.reserve(dict.size());
  tgt_words.reserve(dict.size());
  for (const auto& e : dict.entries) {
    src_words.push_back(&e.src);
    tgt_words.push_back(&e.tgt);
  }
  stats.src = side_stats(src_words, src_vocab, src_stopwords);
  stats.tgt = side_stats(tgt_words, tgt_vocab, tgt_stopwords);

  std::int64_t both = 0;
  for (const auto& e : dict.entries)
    if (src_vocab.count(e.src) && tgt_vocab.count(e.tgt)) ++both;
  stats.joint_lookup_precision_pct =
      100.0 * static_cast<double>(both) / static_cast<double>(dict.size());
  return stats;
}

void write_stats_csv(const DictionaryStats& stats, std::ostream& out,
                     const std::string& dataset_label, const std::string& src_lang,
                     const std::string& tgt_lang) {
  out << "dataset,language,unique,total,unique_pct_with_stopwords,"
         "unique_pct_without_stopwords,lookup_precision_pct,joint_lookup_precision_pct\n";
  auto row = [&](const std::string& lang, const LanguageStats& s) {
    out << dataset_label << ',' << lang << ',' << s.unique << ',' << s.total << ','
        << s.unique_pct_with_stopwords << ',' << s.unique_pct_without_stopwords << ','
        << s.lookup_precision_pct << ',' << stats.joint_lookup_precision_pct << '\n';
  };
  row(src_lang, stats.src);
  row(tgt_lang, stats.tgt);
  if (!out) throw InputError("write_stats_csv: write failure");
}

TrainTestSplit split_train_test(
    const BilingualDictionary& dict,
    const std::unordered_map<std::string, std::int64_t>& src_frequency_rank,
    std::int64_t n_train_src, std::int64_t n_test_src, std::uint64_t seed) {
  if (n_train_src <= 0 || n_test_src <= 0)
    throw std::invalid_argument("split_train_test: split sizes must be positive");

  std::vector<std::string> sources = dict.unique_sources();
  if (static_cast<std::int64_t>(sources.size()) < n_train_src + n_test_src)
    throw std::invalid_argument(
        "split_train_test: dictionary has " + std::to_string(sources.size()) +
        " unique source words, need " + std::to_string(n_train_src + n_test_src));

  constexpr std::int64_t kUnranked = std::numeric_limits<std::int64_t>::max();
  auto rank_of = [&](const std::string& w) {
    auto it = src_frequency_rank.find(w);
    return it == src_frequency_rank.end() ? kUnranked : it->second;
  };
  std::sort(sources.begin(), sources.end(), [&](const std::string& a, const std::string& b) {
    std::int64_t ra = rank_of(a), rb = rank_of(b);
    if (ra != rb) return ra < rb;
    return a < b;
  });

  std::unordered_set<std::string> train_sources(
      sources.begin(), sources.begin() + static_cast<std::ptrdiff_t>(n_train_src));

  std::vector<std::string> remainder(sources.begin() + static_cast<std::ptrdiff_t>(n_train_src),
                                     sources.end());
  std::mt19937_64 rng(seed);
  // partial Fisher-Yates: the first n_test_src slots become the sample
  for (std::int64_t i = 0; i < n_test_src; ++i) {
    std::uint64_t j = static_cast<std::uint64_t>(i) +
                      draw_below(rng, static_cast<std::uint64_t>(remainder.size()) -
                                          static_cast<std::uint64_t>(i));
    std::swap(remainder[static_cast<size_t>(i)], remainder[static_cast<size_t>(j)]);
  }
  std::unordered_set<std::string> test_sources(
      remainder.begin(), remainder.begin() + static_cast<std::ptrdiff_t>(n_test_src));

  TrainTestSplit split;
  split.train = dict.filter_sources(train_sources);
  split.test = dict.filter_sources(test_sources);
  return split;
}

}  // namespace embalign
