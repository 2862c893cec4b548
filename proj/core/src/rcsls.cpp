#include "embalign/rcsls.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "embalign/errors.hpp"
#include "embalign/evaluation.hpp"
#include "embalign/retrieval.hpp"

namespace embalign {

namespace {

Eigen::MatrixXi pack_indices(
    const std::vector<std::vector<std::pair<Eigen::Index, double>>>& topk, Eigen::Index k) {
  Eigen::MatrixXi packed(static_cast<Eigen::Index>(topk.size()), k);
  for (Eigen::Index i = 0; i < packed.rows(); ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      packed(i, j) = static_cast<int>(topk[static_cast<size_t>(i)][static_cast<size_t>(j)].first);
  return packed;
}

// Row sums of pool rows selected by each neighborhood row.
Eigen::MatrixXd neighbor_sums(const Eigen::MatrixXi& nbrs, const Eigen::MatrixXd& pool) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(nbrs.rows(), pool.cols());
  for (Eigen::Index i = 0; i < nbrs.rows(); ++i)
    for (Eigen::Index j = 0; j < nbrs.cols(); ++j)
      sums.row(i) += pool.row(nbrs(i, j));
  return sums;
}

}  // namespace

RcslsNeighborhoods rcsls_neighborhoods(const Eigen::MatrixXd& w, const AnchorSet& anchors,
                                       const Eigen::MatrixXd& src_pool,
                                       const Eigen::MatrixXd& tgt_pool, Eigen::Index k) {
  RcslsNeighborhoods nbhd;
  // N_Y(Wx_i): nearest targets to the mapped anchor sources.
  nbhd.tgt = pack_indices(top_k_dot(anchors.X * w.transpose(), tgt_pool, k), k);
  // N_X(y_i): source-pool rows whose mapped vectors are nearest to y_i;
  // <s W^T, y> = <s, y W> turns this into a plain dot-product search.
  nbhd.src = pack_indices(top_k_dot(anchors.Y * w, src_pool, k), k);
  return nbhd;
}

double rcsls_loss_fixed(const Eigen::MatrixXd& w, const AnchorSet& anchors,
                        const Eigen::MatrixXd& src_pool, const Eigen::MatrixXd& tgt_pool,
                        const RcslsNeighborhoods& nbhd) {
  const double m = static_cast<double>(anchors.size());
  const double k = static_cast<double>(nbhd.tgt.cols());

  const Eigen::MatrixXd mapped = anchors.X * w.transpose();  // m x d
  const double align_term = -2.0 * mapped.cwiseProduct(anchors.Y).sum();

  const Eigen::MatrixXd tgt_sums = neighbor_sums(nbhd.tgt, tgt_pool);  // m x d
  const double tgt_term = mapped.cwiseProduct(tgt_sums).sum() / k;

  const Eigen::MatrixXd src_sums = neighbor_sums(nbhd.src, src_pool);  // m x d
  const double src_term = (src_sums * w.transpose()).cwiseProduct(anchors.Y).sum() / k;

  return (align_term + tgt_term + src_term) / m;
}

Eigen::MatrixXd rcsls_gradient_fixed(const Eigen::MatrixXd& w, const AnchorSet& anchors,
                                     const Eigen::MatrixXd& src_pool,
                                     const Eigen::MatrixXd& tgt_pool,
                                     const RcslsNeighborhoods& nbhd) {
  (void)w;  // the fixed-neighborhood loss is linear in W
  const double m = static_cast<double>(anchors.size());
  const double k = static_cast<double>(nbhd.tgt.cols());

  const Eigen::MatrixXd tgt_sums = neighbor_sums(nbhd.tgt, tgt_pool);
  const Eigen::MatrixXd src_sums = neighbor_sums(nbhd.src, src_pool);

  Eigen::MatrixXd grad = -2.0 * (anchors.Y.transpose() * anchors.X);
  grad.noalias() += (tgt_sums.transpose() * anchors.X) / k;
  grad.noalias() += (anchors.Y.transpose() * src_sums) / k;
  return grad / m;
}

double rcsls_loss(const LinearMap& map, const AnchorSet& anchors,
                  const EmbeddingSpace& tgt_pool, const EmbeddingSpace& src_pool,
                  Eigen::Index k) {
  auto nbhd = rcsls_neighborhoods(map.W, anchors, src_pool.matrix, tgt_pool.matrix, k);
  return rcsls_loss_fixed(map.W, anchors, src_pool.matrix, tgt_pool.matrix, nbhd);
}

namespace {

// CSLS P@1 of the anchor pairs themselves: the grid-selection metric.
double train_csls_p1(const Eigen::MatrixXd& w, const AnchorSet& anchors,
                     const EmbeddingSpace& src_pool, const EmbeddingSpace& tgt_pool,
                     Eigen::Index k) {
  BilingualDictionary gold;
  for (const auto& [s, t] : anchors.pair_words) gold.add(s, t);

  std::vector<std::string> sources;
  std::vector<Eigen::Index> source_rows;
  {
    std::unordered_set<std::string> seen;
    for (size_t i = 0; i < anchors.pair_words.size(); ++i)
      if (seen.insert(anchors.pair_words[i].first).second) {
        sources.push_back(anchors.pair_words[i].first);
        source_rows.push_back(static_cast<Eigen::Index>(i));
      }
  }

  EmbeddingSpace queries;
  queries.words = sources;
  queries.matrix.resize(static_cast<Eigen::Index>(source_rows.size()), anchors.dim());
  for (size_t i = 0; i < source_rows.size(); ++i)
    queries.matrix.row(static_cast<Eigen::Index>(i)) = anchors.X.row(source_rows[i]);
  queries.matrix = l2_normalize_rows(queries.matrix * w.transpose());
  queries.rebuild_index();

  EmbeddingSpace reverse;
  reverse.words = src_pool.words;
  reverse.matrix = l2_normalize_rows(src_pool.matrix * w.transpose());
  reverse.rebuild_index();

  auto result = csls_retrieve(queries, tgt_pool, reverse, /*k_rank=*/1, k);
  auto report = precision_at_k(result, gold);
  return report.p1;
}

}  // namespace

RcslsResult align_rcsls(const AnchorSet& anchors, const EmbeddingSpace& src_pool,
                        const EmbeddingSpace& tgt_pool, const RcslsConfig& cfg,
                        const LinearMap& init) {
  if (cfg.learning_rates.empty())
    throw std::invalid_argument("align_rcsls: learning-rate list must be non-empty");
  if (cfg.epochs.empty()) throw std::invalid_argument("align_rcsls: epoch list must be non-empty");
  if (cfg.k_neighbors < 1)
    throw std::invalid_argument("align_rcsls: k_neighbors must be positive");
  if (init.dim() != anchors.dim()) throw InputError("align_rcsls: init dimension mismatch");

  const Eigen::Index m = anchors.size();
  const bool fresh_compare = cfg.neighbor_refresh <= 1;

  RcslsResult result;
  for (double lr0 : cfg.learning_rates) {
    for (int n_epochs : cfg.epochs) {
      RcslsGridPoint point;
      point.learning_rate = lr0;
      point.epochs = n_epochs;

      Eigen::MatrixXd w = init.W;
      double lr = lr0;
      std::mt19937_64 rng(cfg.seed);

      auto nbhd = rcsls_neighborhoods(w, anchors, src_pool.matrix, tgt_pool.matrix,
                                      cfg.k_neighbors);
      double cur = rcsls_loss_fixed(w, anchors, src_pool.matrix, tgt_pool.matrix, nbhd);
      point.history.push_back({cur, lr, true});

      for (int epoch = 1; epoch <= n_epochs; ++epoch) {
        if (!fresh_compare && epoch > 1 && (epoch - 1) % cfg.neighbor_refresh == 0) {
          nbhd = rcsls_neighborhoods(w, anchors, src_pool.matrix, tgt_pool.matrix,
                                     cfg.k_neighbors);
          cur = rcsls_loss_fixed(w, anchors, src_pool.matrix, tgt_pool.matrix, nbhd);
        }

        Eigen::MatrixXd grad;
        if (cfg.batch_size > 0 && cfg.batch_size < m) {
          // seeded subsample of anchors; neighborhoods stay per-anchor
          std::vector<Eigen::Index> pick(static_cast<size_t>(m));
          std::iota(pick.begin(), pick.end(), Eigen::Index{0});
          for (Eigen::Index i = 0; i < cfg.batch_size; ++i) {
            auto j = i + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(m - i));
            std::swap(pick[static_cast<size_t>(i)], pick[static_cast<size_t>(j)]);
          }
          AnchorSet batch;
          batch.X.resize(cfg.batch_size, anchors.dim());
          batch.Y.resize(cfg.batch_size, anchors.dim());
          RcslsNeighborhoods bn;
          bn.tgt.resize(cfg.batch_size, cfg.k_neighbors);
          bn.src.resize(cfg.batch_size, cfg.k_neighbors);
          for (Eigen::Index i = 0; i < cfg.batch_size; ++i) {
            batch.X.row(i) = anchors.X.row(pick[static_cast<size_t>(i)]);
            batch.Y.row(i) = anchors.Y.row(pick[static_cast<size_t>(i)]);
            bn.tgt.row(i) = nbhd.tgt.row(pick[static_cast<size_t>(i)]);
            bn.src.row(i) = nbhd.src.row(pick[static_cast<size_t>(i)]);
          }
          grad = rcsls_gradient_fixed(w, batch, src_pool.matrix, tgt_pool.matrix, bn);
        } else {
          grad = rcsls_gradient_fixed(w, anchors, src_pool.matrix, tgt_pool.matrix, nbhd);
        }

        Eigen::MatrixXd trial_w = w - lr * grad;
        if (cfg.spectral) trial_w = spectral_project(trial_w);

        double trial;
        RcslsNeighborhoods trial_nbhd;
        if (fresh_compare) {
          trial_nbhd = rcsls_neighborhoods(trial_w, anchors, src_pool.matrix,
                                           tgt_pool.matrix, cfg.k_neighbors);
          trial = rcsls_loss_fixed(trial_w, anchors, src_pool.matrix, tgt_pool.matrix,
                                   trial_nbhd);
        } else {
          trial = rcsls_loss_fixed(trial_w, anchors, src_pool.matrix, tgt_pool.matrix, nbhd);
        }

        if (!std::isfinite(trial)) {
          point.diverged = true;
          break;
        }
        bool accepted = trial <= cur;
        if (accepted) {
          w = std::move(trial_w);
          cur = trial;
          if (fresh_compare) nbhd = std::move(trial_nbhd);
        } else {
          lr *= 0.5;  // halving schedule: revert and shrink the step
        }
        point.history.push_back({cur, lr, accepted});
      }

      if (!point.diverged)
        point.train_p1 = train_csls_p1(w, anchors, src_pool, tgt_pool, cfg.k_neighbors);
      point.W = std::move(w);
      result.grid.push_back(std::move(point));
    }
  }

  std::size_t best = result.grid.size();
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    if (result.grid[i].diverged) continue;
    if (best == result.grid.size() || result.grid[i].train_p1 > result.grid[best].train_p1)
      best = i;
  }
  if (best == result.grid.size())
    throw std::runtime_error("align_rcsls: every grid point diverged");

  const RcslsGridPoint& winner = result.grid[best];
  result.winner = best;
  result.map.W = winner.W;
  result.map.is_orthogonal = orthogonality_defect(winner.W) <= 1e-5;
  result.map.method = "rcsls";
  auto& hp = result.map.hyperparameters;
  hp["k_neighbors"] = std::to_string(cfg.k_neighbors);
  hp["learning_rate"] = std::to_string(winner.learning_rate);
  hp["epochs"] = std::to_string(winner.epochs);
  hp["spectral"] = cfg.spectral ? "true" : "false";
  hp["neighbor_refresh"] = std::to_string(cfg.neighbor_refresh);
  hp["batch_size"] = std::to_string(cfg.batch_size);
  hp["seed"] = std::to_string(cfg.seed);
  hp["train_p1"] = std::to_string(winner.train_p1);
  hp["final_loss"] = std::to_string(winner.history.back().loss);
  hp["init_method"] = init.method;
  hp["anchors"] = std::to_string(anchors.size());
  return result;
}

}  // namespace embalign
