#ifndef EMBALIGN_ALIGNMENT_HPP
#define EMBALIGN_ALIGNMENT_HPP

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "embalign/dictionary.hpp"
#include "embalign/embedding.hpp"

namespace embalign {

// Paired anchor vectors: row i of X and Y belong to the same dictionary entry.
struct AnchorSet {
  Eigen::MatrixXd X;  // m x d source vectors
  Eigen::MatrixXd Y;  // m x d target vectors
  std::vector<std::pair<std::string, std::string>> pair_words;
  std::int64_t skipped = 0;  // dictionary pairs dropped for OOV
  bool inputs_normalized = false;

  Eigen::Index size() const { return X.rows(); }
  Eigen::Index dim() const { return X.cols(); }
};

// Row-vector convention throughout: stored vectors are rows and the map is
// applied as x_aligned = x * W^T. The paper-style column convention Wx is the
// transpose of this.
struct LinearMap {
  Eigen::MatrixXd W;  // d x d
  bool is_orthogonal = false;
  std::string method;
  std::map<std::string, std::string> hyperparameters;  // ordered => stable provenance

  Eigen::Index dim() const { return W.rows(); }
};

// One anchor row per dictionary entry with both words in-vocabulary, order
// preserved; duplicated source words produce repeated X rows. Throws
// DegenerateAnchorsError when no pair is usable and InputError on d mismatch.
AnchorSet build_anchors(const BilingualDictionary& dict, const EmbeddingSpace& src,
                        const EmbeddingSpace& tgt);

// Unconstrained least squares fit of sum_i ||x_i W^T - y_i||^2 via normal
// equations with ridge 1e-8 on X^T X.
LinearMap align_least_squares(const AnchorSet& anchors);

// Orthogonal Procrustes: SVD U S V^T = X^T Y, W = V U^T. On normalized inputs
// this also maximizes the summed cosine objective. Warns to stderr when the
// anchor inputs were not normalized.
LinearMap align_procrustes(const AnchorSet& anchors);

// Projection onto the unit spectral-norm ball (the convex hull of the
// orthogonal group): singular values clamped to min(sigma, 1).
Eigen::MatrixXd spectral_project(const Eigen::MatrixXd& W);

// Every row x replaced by x * W^T; normalization flags reset.
EmbeddingSpace apply_map(const LinearMap& map, const EmbeddingSpace& space);

// Inverse direction map: W^T when orthogonal (within 1e-5), else a solved
// inverse. Used to evaluate the reverse translation direction.
LinearMap invert_map(const LinearMap& map);

// max |W^T W - I|; <= 1e-5 qualifies as orthogonal.
double orthogonality_defect(const Eigen::MatrixXd& W);

// Text format: first line "d d", then d rows of d space-separated decimals,
// row-major, row-vector convention (the file stores W of x_aligned = x * W^T).
void save_linear_map(const LinearMap& map, std::ostream& out);
LinearMap load_linear_map(std::istream& in);

// key=value lines, sorted by key: method, is_orthogonal, then hyperparameters.
void save_provenance(const LinearMap& map, std::ostream& out);

}  // namespace embalign

#endif  // EMBALIGN_ALIGNMENT_HPP
