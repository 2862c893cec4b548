#include "embalign/refine.hpp"

#include <algorithm>
#include <iostream>

#include "embalign/parallel.hpp"
#include "embalign/retrieval.hpp"

namespace embalign {

namespace {

// Per query row: index maximizing 2<q, pool_j> - pool_penalty(j); with a zero
// penalty this degenerates to the plain nearest neighbor. Ties go to the
// smaller index.
std::vector<Eigen::Index> argmax_penalized(const Eigen::MatrixXd& queries,
                                           const Eigen::MatrixXd& pool,
                                           const Eigen::VectorXd& pool_penalty) {
  const Eigen::Index nq = queries.rows();
  std::vector<Eigen::Index> best(static_cast<size_t>(nq), 0);
  const Eigen::Index block =
      std::clamp<Eigen::Index>((8 << 20) / (8 * std::max<Eigen::Index>(pool.rows(), 1)), 1, 512);

  parallel_for(0, nq, [&](std::int64_t lo, std::int64_t hi) {
    Eigen::MatrixXd scores;
    for (Eigen::Index start = lo; start < hi; start += block) {
      const Eigen::Index rows = std::min<Eigen::Index>(block, hi - start);
      scores.noalias() = 2.0 * (queries.middleRows(start, rows) * pool.transpose());
      scores.rowwise() -= pool_penalty.transpose();
      for (Eigen::Index r = 0; r < rows; ++r) {
        Eigen::Index arg = 0;
        double top = scores(r, 0);
        for (Eigen::Index j = 1; j < scores.cols(); ++j) {
          if (scores(r, j) > top) {
            top = scores(r, j);
            arg = j;
          }
        }
        best[static_cast<size_t>(start + r)] = arg;
      }
    }
  });
  return best;
}

}  // namespace

RefineResult refine(const LinearMap& init, const EmbeddingSpace& src,
                    const EmbeddingSpace& tgt, const RefineConfig& cfg) {
  if (cfg.iterations < 1) throw std::invalid_argument("refine: iterations must be positive");
  if (!init.is_orthogonal)
    std::cerr << "[embalign] warning: refine initialized from a non-orthogonal map\n";
  if (!src.is_l2_normalized || !tgt.is_l2_normalized)
    std::cerr << "[embalign] warning: refine expects l2-normalized spaces\n";

  const Eigen::Index top_src = std::min(cfg.induce_top_n, src.size());
  const Eigen::Index top_tgt = std::min(cfg.induce_top_n, tgt.size());
  const Eigen::MatrixXd src_top = src.matrix.topRows(top_src);
  const Eigen::MatrixXd tgt_top = tgt.matrix.topRows(top_tgt);

  RefineResult result;
  result.map = init;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> prev_pairs;

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    const Eigen::MatrixXd mapped = l2_normalize_rows(src_top * result.map.W.transpose());

    Eigen::VectorXd fwd_penalty = Eigen::VectorXd::Zero(top_tgt);
    Eigen::VectorXd bwd_penalty = Eigen::VectorXd::Zero(top_src);
    if (cfg.criterion == RefineConfig::Criterion::kCSLS) {
      bwd_penalty = mean_top_k_dot(mapped, tgt_top, cfg.k_neighbors);    // r(q) per source
      fwd_penalty = mean_top_k_dot(tgt_top, mapped, cfg.k_neighbors);    // r(t) per target
    }
    const auto fwd = argmax_penalized(mapped, tgt_top, fwd_penalty);
    const auto bwd = argmax_penalized(tgt_top, mapped, bwd_penalty);

    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    for (Eigen::Index i = 0; i < top_src; ++i) {
      Eigen::Index j = fwd[static_cast<size_t>(i)];
      if (bwd[static_cast<size_t>(j)] == i) pairs.emplace_back(i, j);
    }

    if (pairs.empty()) {
      result.empty_dictionary = true;
      break;
    }
    if (pairs == prev_pairs) {
      result.converged = true;
      break;
    }
    result.dictionary_sizes.push_back(static_cast<std::int64_t>(pairs.size()));

    AnchorSet anchors;
    anchors.X.resize(static_cast<Eigen::Index>(pairs.size()), src.dim());
    anchors.Y.resize(static_cast<Eigen::Index>(pairs.size()), tgt.dim());
    for (size_t p = 0; p < pairs.size(); ++p) {
      anchors.X.row(static_cast<Eigen::Index>(p)) = src_top.row(pairs[p].first);
      anchors.Y.row(static_cast<Eigen::Index>(p)) = tgt_top.row(pairs[p].second);
      anchors.pair_words.emplace_back(src.words[static_cast<size_t>(pairs[p].first)],
                                      tgt.words[static_cast<size_t>(pairs[p].second)]);
    }
    anchors.inputs_normalized = src.is_l2_normalized && tgt.is_l2_normalized;

    LinearMap refit = align_procrustes(anchors);
    result.map.W = std::move(refit.W);
    result.map.is_orthogonal = true;
    ++result.iterations_run;
    prev_pairs = std::move(pairs);
  }

  result.map.method = init.method + "+refine";
  auto& hp = result.map.hyperparameters;
  hp["refine_iterations"] = std::to_string(result.iterations_run);
  hp["refine_top_n"] = std::to_string(cfg.induce_top_n);
  hp["refine_criterion"] =
      cfg.criterion == RefineConfig::Criterion::kCSLS ? "csls" : "nn";
  hp["refine_converged"] = result.converged ? "true" : "false";
  if (!result.dictionary_sizes.empty())
    hp["refine_dictionary"] = std::to_string(result.dictionary_sizes.back());
  return result;
}

}  // namespace embalign
