#ifndef EMBALIGN_SYNTHETIC_HPP
#define EMBALIGN_SYNTHETIC_HPP

#include <Eigen/Core>
#include <cstdint>

#include "embalign/alignment.hpp"
#include "embalign/dictionary.hpp"
#include "embalign/embedding.hpp"

namespace embalign {

struct SynthConfig {
  Eigen::Index n = 1000;
  Eigen::Index d = 50;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;
  Eigen::Index train_pairs = 500;
  Eigen::Index test_pairs = 200;
};

// Ground-truth benchmark: seeded Gaussian source rows (l2-normalized), a
// random orthogonal Q (sign-fixed QR of a seeded Gaussian), and
// target = source * Q^T + Gaussian noise. Train/test dictionaries pair s_i
// with t_i; train takes the first rows, test the following ones (disjoint).
struct SynthFixture {
  EmbeddingSpace src;
  EmbeddingSpace tgt;
  LinearMap rotation;  // the ground-truth map, y = x * Q^T
  BilingualDictionary train;
  BilingualDictionary test;
};

SynthFixture make_synthetic(const SynthConfig& cfg);

// Orthogonal matrix from the QR factorization of a seeded Gaussian, with
// column signs fixed so the result is unique.
Eigen::MatrixXd random_orthogonal(Eigen::Index d, std::uint64_t seed);

}  // namespace embalign

#endif  // EMBALIGN_SYNTHETIC_HPP
