#ifndef EMBALIGN_INDUCTION_HPP
#define EMBALIGN_INDUCTION_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "embalign/dictionary.hpp"
#include "embalign/text.hpp"

namespace embalign {

// Segment-aligned parallel corpus; line i of each side is one pair.
struct ParallelCorpus {
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
};

struct CorpusOptions {
  bool lowercase_source = true;  // Latin side only; the target side keeps case
  bool lowercase_target = false;
};

// Two line-aligned files (OPUS style). Throws InputError when the files have
// different line counts.
ParallelCorpus read_parallel_files(std::istream& src, std::istream& tgt,
                                   const CorpusOptions& opts = {});

// Single TSV, two columns per line: source segment <TAB> target segment.
ParallelCorpus read_parallel_tsv(std::istream& in, const CorpusOptions& opts = {});

// Presence-based co-occurrence counts over segment pairs. N is the number of
// pairs, so count(x)/N is a probability.
struct CooccurrenceTable {
  std::int64_t n_pairs = 0;
  std::unordered_map<std::string, std::int64_t> src_count;
  std::unordered_map<std::string, std::int64_t> tgt_count;
  // joint[x][y] = number of pairs with x on the source side and y on the target side
  std::unordered_map<std::string, std::unordered_map<std::string, std::int64_t>> joint;

  std::int64_t count_src(const std::string& x) const;
  std::int64_t count_tgt(const std::string& y) const;
  std::int64_t count_joint(const std::string& x, const std::string& y) const;

  // Associative, commutative count addition; supports sharded counting.
  void merge(const CooccurrenceTable& other);
};

// Each word counted at most once per segment pair; stop-words removed before
// counting.
CooccurrenceTable count_cooccurrences(const ParallelCorpus& corpus,
                                      const WordSet& src_stopwords,
                                      const WordSet& tgt_stopwords);

// max(log2(N*count(x,y) / (count(x)*count(y))), 0); 0 when count(x,y) == 0.
double ppmi(const CooccurrenceTable& table, const std::string& x, const std::string& y);

// For each source word, every target with count_joint >= min_joint and
// ppmi >= threshold, ranked by ppmi descending. Ties broken by higher joint
// count, then lexicographic target. Source words emitted in lexicographic
// order so output is deterministic.
BilingualDictionary induce_ppmi_dict(const CooccurrenceTable& table, double threshold,
                                     std::int64_t min_joint);

// For each source word, the top_k targets by count(x,y)^2/(count(x)*count(y)),
// subject to count_joint >= min_joint. Score is in (0, 1]. Same tie-breaking
// and ordering as induce_ppmi_dict.
BilingualDictionary induce_condprob_dict(const CooccurrenceTable& table,
                                         std::int64_t min_joint, std::int64_t top_k);

struct LanguageStats {
  std::int64_t unique = 0;
  std::int64_t total = 0;
  double unique_pct_with_stopwords = 0.0;
  double unique_pct_without_stopwords = 0.0;
  double lookup_precision_pct = 0.0;  // P_L: unique words found in the vocabulary
};

struct DictionaryStats {
  LanguageStats src;
  LanguageStats tgt;
  double joint_lookup_precision_pct = 0.0;  // entries with both sides in-vocabulary
  bool empty_dictionary = false;
};

DictionaryStats compute_stats(const BilingualDictionary& dict, const WordSet& src_vocab,
                              const WordSet& tgt_vocab, const WordSet& src_stopwords,
                              const WordSet& tgt_stopwords);

void write_stats_csv(const DictionaryStats& stats, std::ostream& out,
                     const std::string& dataset_label, const std::string& src_lang,
                     const std::string& tgt_lang);

// Train takes the n_train_src most frequent unique source words (all their
// targets); test takes n_test_src source words sampled uniformly (seeded)
// from the remainder. The two source-word sets are disjoint. Ranks not in
// src_frequency_rank sort after ranked words, lexicographically.
struct TrainTestSplit {
  BilingualDictionary train;
  BilingualDictionary test;
};

TrainTestSplit split_train_test(const BilingualDictionary& dict,
                                const std::unordered_map<std::string, std::int64_t>& src_frequency_rank,
                                std::int64_t n_train_src, std::int64_t n_test_src,
                                std::uint64_t seed);

}  // namespace embalign

#endif  // EMBALIGN_INDUCTION_HPP
