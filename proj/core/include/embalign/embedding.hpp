#ifndef EMBALIGN_EMBEDDING_HPP
#define EMBALIGN_EMBEDDING_HPP

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace embalign {

// A vocabulary plus an n x d matrix; row i is the vector of words[i].
// Immutable after construction: all transforms return a new space.
struct EmbeddingSpace {
  std::vector<std::string> words;
  Eigen::MatrixXd matrix;  // n x d
  std::string lang_tag;
  bool is_l2_normalized = false;
  bool is_centered = false;

  Eigen::Index size() const { return matrix.rows(); }
  Eigen::Index dim() const { return matrix.cols(); }

  std::optional<Eigen::Index> row_of(std::string_view word) const;

  // Rebuilds the word -> row index; called by the factory functions below.
  void rebuild_index();

 private:
  std::unordered_map<std::string, Eigen::Index> index_;
};

struct VecLoadReport {
  std::int64_t duplicates_skipped = 0;
  std::int64_t declared_rows = 0;
  std::int64_t loaded_rows = 0;
  bool header_mismatch = false;  // declared n != rows actually present
};

// Reads the FastText `.vec` text format: header "n d", then one
// "word c1 ... cd" row per line. Keeps the first occurrence of duplicate
// words. A header/row-count mismatch is trusted in favour of the actual rows.
// Throws InputError on malformed header, wrong component count, non-finite
// component, or an empty stream.
EmbeddingSpace load_vec(std::istream& in,
                        std::optional<std::int64_t> limit = std::nullopt,
                        VecLoadReport* report = nullptr,
                        std::string lang_tag = {});

// Emits the exact format accepted by load_vec, UTF-8, LF line endings.
// Components use shortest round-trip decimal rendering.
void save_vec(const EmbeddingSpace& space, std::ostream& out);

// Optionally subtracts the column mean, then scales every row to unit
// Euclidean norm. Order is fixed: center, then l2. Throws on a zero-norm row.
EmbeddingSpace normalize(const EmbeddingSpace& space, bool center);

struct RestrictReport {
  std::int64_t shortfall = 0;  // requested - available when the space is smaller
};

// Keeps the first min(n, size) rows; file order is frequency order in
// FastText releases. n == 0 is invalid.
EmbeddingSpace restrict_top_n(const EmbeddingSpace& space, std::int64_t n,
                              RestrictReport* report = nullptr);

// The rows of `space` at `rows`, in the given order (words carried along).
EmbeddingSpace slice_rows(const EmbeddingSpace& space,
                          const std::vector<Eigen::Index>& rows);

// Each row scaled to unit norm; zero rows pass through unchanged.
Eigen::MatrixXd l2_normalize_rows(Eigen::MatrixXd m);

}  // namespace embalign

#endif  // EMBALIGN_EMBEDDING_HPP
