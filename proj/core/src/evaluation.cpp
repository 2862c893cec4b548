#include "embalign/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "embalign/errors.hpp"

namespace embalign {

std::vector<std::string> EvaluationReport::bucket_labels() const {
  std::vector<std::string> labels;
  std::int64_t prev = 0;
  for (std::int64_t edge : bucket_edges) {
    if (edge == prev + 1)
      labels.push_back(std::to_string(edge));
    else
      labels.push_back(std::to_string(prev + 1) + "-" + std::to_string(edge));
    prev = edge;
  }
  labels.push_back("miss");
  return labels;
}

EvaluationReport precision_at_k(const RetrievalResult& result, const BilingualDictionary& gold,
                                std::string direction, std::string criterion,
                                const std::vector<std::int64_t>& bucket_edges) {
  if (bucket_edges.empty() || !std::is_sorted(bucket_edges.begin(), bucket_edges.end()))
    throw std::invalid_argument("precision_at_k: bucket edges must be sorted and non-empty");

  auto targets = gold.targets_by_source();

  EvaluationReport report;
  report.direction = std::move(direction);
  report.criterion = std::move(criterion);
  report.bucket_edges = bucket_edges;
  report.buckets.assign(bucket_edges.size() + 1, 0);
  report.n_queries = static_cast<std::int64_t>(result.query_words.size());

  constexpr std::int64_t kMiss = std::numeric_limits<std::int64_t>::max();
  std::int64_t hits1 = 0, hits5 = 0, hits10 = 0;

  for (size_t q = 0; q < result.query_words.size(); ++q) {
    auto it = targets.find(result.query_words[q]);
    if (it == targets.end())
      throw EvaluationError("precision_at_k: query \"" + result.query_words[q] +
                            "\" absent from gold dictionary");

    std::int64_t first_hit = kMiss;
    const auto& ranking = result.ranked[q];
    for (size_t r = 0; r < ranking.size(); ++r) {
      if (it->second.count(ranking[r].first)) {
        first_hit = static_cast<std::int64_t>(r) + 1;
        break;
      }
    }
    if (first_hit <= 1) ++hits1;
    if (first_hit <= 5) ++hits5;
    if (first_hit <= 10) ++hits10;

    size_t bucket = report.bucket_edges.size();  // miss
    for (size_t b = 0; b < report.bucket_edges.size(); ++b) {
      if (first_hit <= report.bucket_edges[b]) {
        bucket = b;
        break;
      }
    }
    ++report.buckets[bucket];
  }

  if (report.n_queries > 0) {
    const double n = static_cast<double>(report.n_queries);
    report.p1 = 100.0 * static_cast<double>(hits1) / n;
    report.p5 = 100.0 * static_cast<double>(hits5) / n;
    report.p10 = 100.0 * static_cast<double>(hits10) / n;
  }
  return report;
}

DistributionGrid retrieval_distribution(const EvaluationReport& forward,
                                        const EvaluationReport& backward) {
  if (forward.bucket_edges != backward.bucket_edges)
    throw std::invalid_argument("retrieval_distribution: reports use different bucket edges");

  DistributionGrid grid;
  grid.bucket_labels = forward.bucket_labels();
  for (const EvaluationReport* r : {&forward, &backward}) {
    std::string label = r->direction;
    if (!r->criterion.empty()) label += "/" + r->criterion;
    grid.row_labels.push_back(label);
    grid.counts.push_back(r->buckets);
  }
  return grid;
}

void write_report_csv(const std::vector<EvaluationReport>& reports, std::ostream& out) {
  out << "direction,criterion,p1,p5,p10,n_queries\n";
  for (const auto& r : reports)
    out << r.direction << ',' << r.criterion << ',' << r.p1 << ',' << r.p5 << ',' << r.p10
        << ',' << r.n_queries << '\n';
  if (!out) throw InputError("write_report_csv: write failure");
}

void write_distribution_csv(const std::vector<EvaluationReport>& reports, std::ostream& out) {
  out << "direction,criterion,bucket,count\n";
  for (const auto& r : reports) {
    auto labels = r.bucket_labels();
    for (size_t b = 0; b < r.buckets.size(); ++b)
      out << r.direction << ',' << r.criterion << ',' << labels[b] << ',' << r.buckets[b]
          << '\n';
  }
  if (!out) throw InputError("write_distribution_csv: write failure");
}

}  // namespace embalign
