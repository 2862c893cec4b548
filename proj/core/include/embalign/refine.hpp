#ifndef EMBALIGN_REFINE_HPP
#define EMBALIGN_REFINE_HPP

#include <cstdint>
#include <vector>

#include "embalign/alignment.hpp"
#include "embalign/embedding.hpp"

namespace embalign {

struct RefineConfig {
  int iterations = 5;
  Eigen::Index induce_top_n = 10000;  // most frequent rows considered per side
  enum class Criterion { kNN, kCSLS } criterion = Criterion::kCSLS;
  Eigen::Index k_neighbors = 10;  // CSLS penalty neighborhood
};

struct RefineResult {
  LinearMap map;
  int iterations_run = 0;
  std::vector<std::int64_t> dictionary_sizes;  // per iteration
  bool converged = false;         // synthetic dictionary unchanged between iterations
  bool empty_dictionary = false;  // signaled; map is the last valid one
};

// Iterative refinement: map the induce_top_n most frequent source rows, build
// a synthetic dictionary from mutual top-1 pairs under the chosen criterion
// (pair kept iff t is s's top-1 and s is t's top-1), re-fit Procrustes on it,
// and repeat. Stops early when the synthetic dictionary is unchanged.
// Expects normalized spaces and an orthogonal init (warns otherwise).
RefineResult refine(const LinearMap& init, const EmbeddingSpace& src,
                    const EmbeddingSpace& tgt, const RefineConfig& cfg = {});

}  // namespace embalign

#endif  // EMBALIGN_REFINE_HPP
