#include "embalign/retrieval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "embalign/parallel.hpp"

namespace embalign {

namespace {

constexpr std::int64_t kScoreBufferBytes = 8 << 20;

Eigen::Index block_rows_for(Eigen::Index pool_size) {
  Eigen::Index rows = kScoreBufferBytes / (8 * std::max<Eigen::Index>(pool_size, 1));
  return std::clamp<Eigen::Index>(rows, 1, 512);
}

// Indices of the k largest entries of `scores`, score-descending, index
// ascending on ties.
void select_top_k(const Eigen::VectorXd& scores, Eigen::Index k,
                  std::vector<Eigen::Index>& idx_buf,
                  std::vector<std::pair<Eigen::Index, double>>& out) {
  const Eigen::Index n = scores.size();
  idx_buf.resize(static_cast<size_t>(n));
  std::iota(idx_buf.begin(), idx_buf.end(), Eigen::Index{0});
  auto before = [&](Eigen::Index a, Eigen::Index b) {
    if (scores(a) != scores(b)) return scores(a) > scores(b);
    return a < b;
  };
  std::partial_sort(idx_buf.begin(), idx_buf.begin() + k, idx_buf.end(), before);
  out.clear();
  out.reserve(static_cast<size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) out.emplace_back(idx_buf[static_cast<size_t>(i)], scores(idx_buf[static_cast<size_t>(i)]));
}

}  // namespace

std::vector<std::vector<std::pair<Eigen::Index, double>>> top_k_dot(
    const Eigen::MatrixXd& queries, const Eigen::MatrixXd& pool, Eigen::Index k) {
  if (k < 1) throw std::invalid_argument("top_k_dot: k must be positive");
  if (k > pool.rows())
    throw std::invalid_argument("top_k_dot: k=" + std::to_string(k) + " exceeds pool size " +
                                std::to_string(pool.rows()));

  const Eigen::Index mq = queries.rows();
  std::vector<std::vector<std::pair<Eigen::Index, double>>> result(
      static_cast<size_t>(mq));
  const Eigen::Index block = block_rows_for(pool.rows());

  parallel_for(0, mq, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<Eigen::Index> idx_buf;
    Eigen::MatrixXd scores;
    for (Eigen::Index start = lo; start < hi; start += block) {
      const Eigen::Index rows = std::min<Eigen::Index>(block, hi - start);
      scores.noalias() = queries.middleRows(start, rows) * pool.transpose();
      for (Eigen::Index r = 0; r < rows; ++r) {
        Eigen::VectorXd row = scores.row(r);
        select_top_k(row, k, idx_buf, result[static_cast<size_t>(start + r)]);
      }
    }
  });
  return result;
}

Eigen::VectorXd mean_top_k_dot(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& against,
                               Eigen::Index k) {
  if (k < 1) throw std::invalid_argument("mean_top_k_dot: k must be positive");
  if (k > against.rows())
    throw std::invalid_argument("mean_top_k_dot: k exceeds pool size");

  const Eigen::Index n = rows.rows();
  Eigen::VectorXd means(n);
  const Eigen::Index block = block_rows_for(against.rows());

  parallel_for(0, n, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<double> buf;
    Eigen::MatrixXd scores;
    for (Eigen::Index start = lo; start < hi; start += block) {
      const Eigen::Index nrows = std::min<Eigen::Index>(block, hi - start);
      scores.noalias() = rows.middleRows(start, nrows) * against.transpose();
      for (Eigen::Index r = 0; r < nrows; ++r) {
        buf.resize(static_cast<size_t>(scores.cols()));
        for (Eigen::Index c = 0; c < scores.cols(); ++c) buf[static_cast<size_t>(c)] = scores(r, c);
        std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end(), std::greater<double>());
        double sum = 0;
        for (Eigen::Index i = 0; i < k; ++i) sum += buf[static_cast<size_t>(i)];
        means(start + r) = sum / static_cast<double>(k);
      }
    }
  });
  return means;
}

namespace {

RetrievalResult resolve_words(const EmbeddingSpace& queries, const EmbeddingSpace& pool,
                              std::vector<std::vector<std::pair<Eigen::Index, double>>>&& raw) {
  RetrievalResult result;
  result.query_words = queries.words;
  result.ranked.resize(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    auto& dst = result.ranked[i];
    dst.reserve(raw[i].size());
    for (auto& [idx, score] : raw[i])
      dst.emplace_back(pool.words[static_cast<size_t>(idx)], score);
  }
  return result;
}

}  // namespace

RetrievalResult nn_retrieve(const EmbeddingSpace& queries, const EmbeddingSpace& pool,
                            Eigen::Index k) {
  auto raw = top_k_dot(queries.matrix, pool.matrix, k);
  return resolve_words(queries, pool, std::move(raw));
}

RetrievalResult csls_retrieve(const EmbeddingSpace& queries, const EmbeddingSpace& pool,
                              const EmbeddingSpace& reverse_pool, Eigen::Index k_rank,
                              Eigen::Index k_neighbors) {
  if (k_rank < 1) throw std::invalid_argument("csls_retrieve: k_rank must be positive");
  if (k_rank > pool.size())
    throw std::invalid_argument("csls_retrieve: k_rank exceeds pool size");
  if (k_neighbors > pool.size() || k_neighbors > reverse_pool.size())
    throw std::invalid_argument("csls_retrieve: k_neighbors exceeds pool sizes");

  // r_pool(q): per-query penalty; constant per query, kept for score values.
  Eigen::VectorXd r_pool = mean_top_k_dot(queries.matrix, pool.matrix, k_neighbors);
  // r_rev(t): per-target penalty against the mapped-source pool.
  Eigen::VectorXd r_rev = mean_top_k_dot(pool.matrix, reverse_pool.matrix, k_neighbors);

  const Eigen::Index mq = queries.size();
  std::vector<std::vector<std::pair<Eigen::Index, double>>> raw(static_cast<size_t>(mq));
  const Eigen::Index block = block_rows_for(pool.size());

  parallel_for(0, mq, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<Eigen::Index> idx_buf;
    Eigen::MatrixXd scores;
    for (Eigen::Index start = lo; start < hi; start += block) {
      const Eigen::Index rows = std::min<Eigen::Index>(block, hi - start);
      scores.noalias() = 2.0 * (queries.matrix.middleRows(start, rows) * pool.matrix.transpose());
      scores.rowwise() -= r_rev.transpose();
      for (Eigen::Index r = 0; r < rows; ++r) {
        Eigen::VectorXd row = scores.row(r).array() - r_pool(start + r);
        select_top_k(row, k_rank, idx_buf, raw[static_cast<size_t>(start + r)]);
      }
    }
  });
  return resolve_words(queries, pool, std::move(raw));
}

}  // namespace embalign
