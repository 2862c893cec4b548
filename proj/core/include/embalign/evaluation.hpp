#ifndef EMBALIGN_EVALUATION_HPP
#define EMBALIGN_EVALUATION_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "embalign/dictionary.hpp"
#include "embalign/retrieval.hpp"

namespace embalign {

// P@k percentages for one (direction, criterion) run plus the first-hit rank
// distribution over buckets {1, 2-5, 6-10, miss} (configurable edges).
struct EvaluationReport {
  std::string direction;
  std::string criterion;
  double p1 = 0.0;
  double p5 = 0.0;
  double p10 = 0.0;
  std::int64_t n_queries = 0;
  std::vector<std::int64_t> bucket_edges{1, 5, 10};  // inclusive upper bounds
  std::vector<std::int64_t> buckets;                 // edges.size() + 1, last = miss

  std::vector<std::string> bucket_labels() const;
};

// A query is a hit at k iff ANY of its gold targets appears in the top k;
// precision is averaged uniformly over unique query words. Every query word
// must appear as a source in gold (EvaluationError otherwise).
EvaluationReport precision_at_k(const RetrievalResult& result, const BilingualDictionary& gold,
                                std::string direction = {}, std::string criterion = {},
                                const std::vector<std::int64_t>& bucket_edges = {1, 5, 10});

// Two-direction rank-bucket count grid (heatmap source). The reports must
// share bucket edges.
struct DistributionGrid {
  std::vector<std::string> row_labels;     // direction[/criterion]
  std::vector<std::string> bucket_labels;  // "1", "2-5", "6-10", "miss"
  std::vector<std::vector<std::int64_t>> counts;
};

DistributionGrid retrieval_distribution(const EvaluationReport& forward,
                                        const EvaluationReport& backward);

// CSV columns: direction,criterion,p1,p5,p10,n_queries
void write_report_csv(const std::vector<EvaluationReport>& reports, std::ostream& out);

// CSV columns: direction,criterion,bucket,count (long format)
void write_distribution_csv(const std::vector<EvaluationReport>& reports, std::ostream& out);

}  // namespace embalign

#endif  // EMBALIGN_EVALUATION_HPP
