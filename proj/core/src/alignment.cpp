#include "embalign/alignment.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <charconv>
#include <cmath>
#include <iostream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "embalign/errors.hpp"

namespace embalign {

AnchorSet build_anchors(const BilingualDictionary& dict, const EmbeddingSpace& src,
                        const EmbeddingSpace& tgt) {
  if (src.dim() != tgt.dim())
    throw InputError("build_anchors: dimension mismatch (" + std::to_string(src.dim()) +
                     " vs " + std::to_string(tgt.dim()) + ")");

  std::vector<std::pair<Eigen::Index, Eigen::Index>> rows;
  AnchorSet anchors;
  rows.reserve(dict.size());
  for (const auto& e : dict.entries) {
    auto si = src.row_of(e.src);
    auto ti = tgt.row_of(e.tgt);
    if (!si || !ti) {
      ++anchors.skipped;
      continue;
    }
    rows.emplace_back(*si, *ti);
    anchors.pair_words.emplace_back(e.src, e.tgt);
  }
  if (rows.empty())
    throw DegenerateAnchorsError("build_anchors: zero usable pairs (" +
                                 std::to_string(anchors.skipped) + " skipped for OOV)");

  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  anchors.X.resize(m, src.dim());
  anchors.Y.resize(m, tgt.dim());
  for (Eigen::Index i = 0; i < m; ++i) {
    anchors.X.row(i) = src.matrix.row(rows[static_cast<size_t>(i)].first);
    anchors.Y.row(i) = tgt.matrix.row(rows[static_cast<size_t>(i)].second);
  }
  anchors.inputs_normalized = src.is_l2_normalized && tgt.is_l2_normalized;
  return anchors;
}

LinearMap align_least_squares(const AnchorSet& anchors) {
  if (anchors.size() < 1) throw DegenerateAnchorsError("align_least_squares: empty anchor set");
  const Eigen::Index d = anchors.dim();
  constexpr double kRidge = 1e-8;

  Eigen::MatrixXd gram = anchors.X.transpose() * anchors.X;
  gram.diagonal().array() += kRidge;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("align_least_squares: normal equations not solvable");
  // solves (X^T X + eps I) W^T = X^T Y
  Eigen::MatrixXd wt = ldlt.solve(anchors.X.transpose() * anchors.Y);
  if (!wt.allFinite())
    throw std::runtime_error("align_least_squares: singular system after ridge");

  LinearMap map;
  map.W = wt.transpose();
  map.is_orthogonal = false;
  map.method = "lstsq";
  map.hyperparameters["ridge"] = "1e-8";
  map.hyperparameters["anchors"] = std::to_string(anchors.size());
  (void)d;
  return map;
}

LinearMap align_procrustes(const AnchorSet& anchors) {
  if (anchors.size() < 1) throw DegenerateAnchorsError("align_procrustes: empty anchor set");
  if (!anchors.inputs_normalized)
    std::cerr << "[embalign] warning: Procrustes fit on unnormalized anchors\n";

  Eigen::MatrixXd m = anchors.X.transpose() * anchors.Y;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("align_procrustes: SVD failed");

  LinearMap map;
  map.W = svd.matrixV() * svd.matrixU().transpose();
  map.is_orthogonal = true;
  map.method = "procrustes";
  map.hyperparameters["anchors"] = std::to_string(anchors.size());
  return map;
}

Eigen::MatrixXd spectral_project(const Eigen::MatrixXd& w) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("spectral_project: SVD failed");
  Eigen::VectorXd sigma = svd.singularValues();
  for (Eigen::Index i = 0; i < sigma.size(); ++i) sigma(i) = std::min(sigma(i), 1.0);
  return svd.matrixU() * sigma.asDiagonal() * svd.matrixV().transpose();
}

EmbeddingSpace apply_map(const LinearMap& map, const EmbeddingSpace& space) {
  if (map.dim() != space.dim())
    throw InputError("apply_map: dimension mismatch (" + std::to_string(map.dim()) + " vs " +
                     std::to_string(space.dim()) + ")");
  EmbeddingSpace result;
  result.words = space.words;
  result.lang_tag = space.lang_tag;
  result.matrix = space.matrix * map.W.transpose();
  result.is_l2_normalized = false;
  result.is_centered = false;
  result.rebuild_index();
  return result;
}

double orthogonality_defect(const Eigen::MatrixXd& w) {
  Eigen::MatrixXd gram = w.transpose() * w;
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

LinearMap invert_map(const LinearMap& map) {
  LinearMap inv;
  inv.method = map.method + "+inverse";
  if (orthogonality_defect(map.W) <= 1e-5) {
    inv.W = map.W.transpose();
    inv.is_orthogonal = true;
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(map.W);
    if (!lu.isInvertible())
      throw std::runtime_error("invert_map: matrix is not invertible");
    inv.W = lu.inverse();
    inv.is_orthogonal = false;
  }
  return inv;
}

namespace {
void append_double(std::string& buf, double v) {
  char tmp[32];
  auto [p, ec] = std::to_chars(tmp, tmp + sizeof(tmp), v);
  (void)ec;
  buf.append(tmp, p);
}
}  // namespace

void save_linear_map(const LinearMap& map, std::ostream& out) {
  const Eigen::Index d = map.dim();
  out << d << ' ' << d << '\n';
  std::string buf;
  for (Eigen::Index i = 0; i < d; ++i) {
    buf.clear();
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j) buf += ' ';
      append_double(buf, map.W(i, j));
    }
    buf += '\n';
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw InputError("save_linear_map: write failure");
}

LinearMap load_linear_map(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("load_linear_map: empty stream");
  std::istringstream header(line);
  Eigen::Index rows = 0, cols = 0;
  if (!(header >> rows >> cols) || rows <= 0 || rows != cols)
    throw InputError("load_linear_map: malformed header \"" + line + "\" (expected \"d d\")");

  LinearMap map;
  map.W.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line))
      throw InputError("load_linear_map: expected " + std::to_string(rows) + " rows, got " +
                       std::to_string(i));
    const char* cur = line.data();
    const char* end = line.data() + line.size();
    for (Eigen::Index j = 0; j < cols; ++j) {
      while (cur < end && (*cur == ' ' || *cur == '\r')) ++cur;
      double v;
      auto [p, ec] = std::from_chars(cur, end, v);
      if (ec != std::errc())
        throw InputError("load_linear_map: row " + std::to_string(i) + ": bad value");
      map.W(i, j) = v;
      cur = p;
    }
  }
  map.is_orthogonal = orthogonality_defect(map.W) <= 1e-5;
  map.method = "file";
  return map;
}

void save_provenance(const LinearMap& map, std::ostream& out) {
  std::map<std::string, std::string> kv = map.hyperparameters;
  kv["method"] = map.method;
  kv["is_orthogonal"] = map.is_orthogonal ? "true" : "false";
  kv["dim"] = std::to_string(map.dim());
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
  if (!out) throw InputError("save_provenance: write failure");
}

}  // namespace embalign
