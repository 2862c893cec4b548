#include "embalign/synthetic.hpp"

#include <Eigen/QR>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace embalign {

namespace {

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

std::string numbered_word(char prefix, Eigen::Index i) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%c%06lld", prefix, static_cast<long long>(i));
  return buf;
}

}  // namespace

Eigen::MatrixXd random_orthogonal(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd a = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

SynthFixture make_synthetic(const SynthConfig& cfg) {
  if (cfg.n < 1 || cfg.d < 1) throw std::invalid_argument("make_synthetic: n and d must be positive");
  if (cfg.train_pairs + cfg.test_pairs > cfg.n)
    throw std::invalid_argument("make_synthetic: train + test pairs exceed n");
  if (cfg.noise_sigma < 0) throw std::invalid_argument("make_synthetic: negative noise");

  std::mt19937_64 rng(cfg.seed);

  SynthFixture fix;
  fix.src.matrix = gaussian_matrix(cfg.n, cfg.d, rng);
  for (Eigen::Index i = 0; i < cfg.n; ++i) {
    double norm = fix.src.matrix.row(i).norm();
    if (norm == 0.0) fix.src.matrix(i, 0) = norm = 1.0;  // vanishing probability
    fix.src.matrix.row(i) /= norm;
  }
  fix.src.words.reserve(static_cast<size_t>(cfg.n));
  fix.tgt.words.reserve(static_cast<size_t>(cfg.n));
  for (Eigen::Index i = 0; i < cfg.n; ++i) {
    fix.src.words.push_back(numbered_word('s', i));
    fix.tgt.words.push_back(numbered_word('t', i));
  }
  fix.src.lang_tag = "src";
  fix.tgt.lang_tag = "tgt";
  fix.src.is_l2_normalized = true;

  Eigen::MatrixXd q = random_orthogonal(cfg.d, rng());
  fix.tgt.matrix = fix.src.matrix * q.transpose();
  if (cfg.noise_sigma > 0)
    fix.tgt.matrix += cfg.noise_sigma * gaussian_matrix(cfg.n, cfg.d, rng);
  fix.tgt.is_l2_normalized = cfg.noise_sigma == 0.0;

  fix.src.rebuild_index();
  fix.tgt.rebuild_index();

  fix.rotation.W = std::move(q);
  fix.rotation.is_orthogonal = true;
  fix.rotation.method = "synthetic-ground-truth";
  fix.rotation.hyperparameters["seed"] = std::to_string(cfg.seed);
  fix.rotation.hyperparameters["noise_sigma"] = std::to_string(cfg.noise_sigma);

  for (Eigen::Index i = 0; i < cfg.train_pairs; ++i)
    fix.train.add(fix.src.words[static_cast<size_t>(i)], fix.tgt.words[static_cast<size_t>(i)]);
  for (Eigen::Index i = cfg.train_pairs; i < cfg.train_pairs + cfg.test_pairs; ++i)
    fix.test.add(fix.src.words[static_cast<size_t>(i)], fix.tgt.words[static_cast<size_t>(i)]);
  return fix;
}

}  // namespace embalign
