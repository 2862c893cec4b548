#ifndef EMBALIGN_RCSLS_HPP
#define EMBALIGN_RCSLS_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "embalign/alignment.hpp"
#include "embalign/embedding.hpp"

namespace embalign {

struct RcslsConfig {
  Eigen::Index k_neighbors = 10;
  std::vector<double> learning_rates{1.0, 10.0, 25.0, 50.0};
  std::vector<int> epochs{10, 20};
  Eigen::Index batch_size = 0;  // 0 = full batch
  bool spectral = false;
  int neighbor_refresh = 1;  // epochs between neighborhood recomputation
  std::uint64_t seed = 42;
};

// Static per-anchor neighborhoods of the relaxed CSLS loss. tgt(i, :) holds
// the k target-pool rows nearest to the mapped anchor source i; src(i, :)
// holds the k source-pool rows whose mapped vectors are nearest to anchor
// target i.
struct RcslsNeighborhoods {
  Eigen::MatrixXi tgt;  // m x k
  Eigen::MatrixXi src;  // m x k
};

RcslsNeighborhoods rcsls_neighborhoods(const Eigen::MatrixXd& W, const AnchorSet& anchors,
                                       const Eigen::MatrixXd& src_pool,
                                       const Eigen::MatrixXd& tgt_pool, Eigen::Index k);

// Loss value with the neighborhoods held fixed (the piecewise-smooth regime
// between refreshes): mean over anchors of
//   -2<Wx_i, y_i> + (1/k) sum_{t in N_Y} <Wx_i, t> + (1/k) sum_{s in N_X} <Ws, y_i>.
double rcsls_loss_fixed(const Eigen::MatrixXd& W, const AnchorSet& anchors,
                        const Eigen::MatrixXd& src_pool, const Eigen::MatrixXd& tgt_pool,
                        const RcslsNeighborhoods& nbhd);

// Analytic gradient of rcsls_loss_fixed with respect to W.
Eigen::MatrixXd rcsls_gradient_fixed(const Eigen::MatrixXd& W, const AnchorSet& anchors,
                                     const Eigen::MatrixXd& src_pool,
                                     const Eigen::MatrixXd& tgt_pool,
                                     const RcslsNeighborhoods& nbhd);

// Full loss: neighborhoods recomputed from W (deterministic given W).
// Pools are the truncated spaces used for neighborhood search.
double rcsls_loss(const LinearMap& map, const AnchorSet& anchors,
                  const EmbeddingSpace& tgt_pool, const EmbeddingSpace& src_pool,
                  Eigen::Index k);

struct RcslsEpochRecord {
  double loss = 0.0;      // loss after the epoch's accept/revert decision
  double learning_rate = 0.0;
  bool accepted = false;  // false => step reverted and the rate halved
};

struct RcslsGridPoint {
  double learning_rate = 0.0;
  int epochs = 0;
  std::vector<RcslsEpochRecord> history;  // history[0] is the initial loss
  double train_p1 = 0.0;                  // CSLS P@1 on the anchor dictionary
  bool diverged = false;
  Eigen::MatrixXd W;
};

struct RcslsResult {
  LinearMap map;
  std::vector<RcslsGridPoint> grid;
  std::size_t winner = 0;
};

// Gradient descent on the relaxed CSLS objective over the (learning rate,
// epochs) grid, starting from `init` (typically the Procrustes solution).
// A step that fails to decrease the loss is reverted and the rate halved, so
// each grid point's recorded loss history is non-increasing. With
// neighbor_refresh == 1 the compared losses always use neighborhoods fresh
// from the candidate W. Non-finite loss aborts the grid point only. The
// winner is the grid point with the best train-dictionary CSLS P@1.
RcslsResult align_rcsls(const AnchorSet& anchors, const EmbeddingSpace& src_pool,
                        const EmbeddingSpace& tgt_pool, const RcslsConfig& cfg,
                        const LinearMap& init);

}  // namespace embalign

#endif  // EMBALIGN_RCSLS_HPP
