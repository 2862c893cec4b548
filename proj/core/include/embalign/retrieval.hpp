#ifndef EMBALIGN_RETRIEVAL_HPP
#define EMBALIGN_RETRIEVAL_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "embalign/embedding.hpp"

namespace embalign {

// Per query word: ranked (target word, score), scores non-increasing, ties
// broken by pool index order, no duplicate targets.
struct RetrievalResult {
  std::vector<std::string> query_words;
  std::vector<std::vector<std::pair<std::string, double>>> ranked;
};

// Exact top-k of rows of `pool` by dot product against each row of `queries`.
// Ties broken by smaller pool index. k must not exceed the pool size.
std::vector<std::vector<std::pair<Eigen::Index, double>>> top_k_dot(
    const Eigen::MatrixXd& queries, const Eigen::MatrixXd& pool, Eigen::Index k);

// Per row of `rows`: mean dot product with its k nearest rows of `against`.
Eigen::VectorXd mean_top_k_dot(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& against,
                               Eigen::Index k);

// Exact (non-approximate) top-k retrieval by dot product; cosine on
// l2-normalized rows.
RetrievalResult nn_retrieve(const EmbeddingSpace& queries, const EmbeddingSpace& pool,
                            Eigen::Index k);

// CSLS: score(q, t) = 2<q,t> - r_pool(q) - r_rev(t), where r_pool(q) is the
// mean dot of q with its k_neighbors nearest pool rows and r_rev(t) the mean
// dot of t with its k_neighbors nearest reverse_pool rows (the mapped source
// pool). Demotes hubs that sit close to everything.
RetrievalResult csls_retrieve(const EmbeddingSpace& queries, const EmbeddingSpace& pool,
                              const EmbeddingSpace& reverse_pool, Eigen::Index k_rank,
                              Eigen::Index k_neighbors = 10);

}  // namespace embalign

#endif  // EMBALIGN_RETRIEVAL_HPP
