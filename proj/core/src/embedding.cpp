#include "embalign/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "embalign/errors.hpp"

namespace embalign {

std::optional<Eigen::Index> EmbeddingSpace::row_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void EmbeddingSpace::rebuild_index() {
  index_.clear();
  index_.reserve(words.size());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(words.size()); ++i)
    index_.emplace(words[i], i);
}

namespace {

bool parse_int(std::string_view s, std::int64_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_double(const char* begin, const char* end, double& out, const char*& next) {
  auto [p, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc()) return false;
  next = p;
  return true;
}

void append_double(std::string& buf, double v) {
  char tmp[32];
  auto [p, ec] = std::to_chars(tmp, tmp + sizeof(tmp), v);
  (void)ec;
  buf.append(tmp, p);
}

}  // namespace

EmbeddingSpace load_vec(std::istream& in, std::optional<std::int64_t> limit,
                        VecLoadReport* report, std::string lang_tag) {
  if (limit && *limit <= 0) throw std::invalid_argument("load_vec: limit must be positive");

  std::string line;
  if (!std::getline(in, line)) throw InputError("load_vec: empty stream");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::int64_t declared_n = 0, d = 0;
  {
    size_t sp = line.find(' ');
    if (sp == std::string::npos ||
        !parse_int(std::string_view(line).substr(0, sp), declared_n) ||
        !parse_int(std::string_view(line).substr(sp + 1), d) ||
        declared_n < 0 || d <= 0) {
      throw InputError("load_vec: malformed header \"" + line + "\" (expected \"n d\")");
    }
  }

  // Rows actually present win over the declared count (large dumps are
  // frequently truncated), so without a limit we read until EOF.
  const std::int64_t want =
      limit ? *limit : std::numeric_limits<std::int64_t>::max();
  const std::int64_t reserve_n = std::min(want, declared_n);
  std::vector<std::string> words;
  std::vector<double> values;  // row-major staging
  words.reserve(static_cast<size_t>(std::max<std::int64_t>(reserve_n, 0)));
  values.reserve(static_cast<size_t>(std::max<std::int64_t>(reserve_n, 0)) *
                 static_cast<size_t>(d));

  std::unordered_map<std::string, int> seen;
  std::int64_t duplicates = 0;
  std::int64_t line_no = 1;
  std::vector<double> row(static_cast<size_t>(d));

  while (static_cast<std::int64_t>(words.size()) < want) {
    if (!std::getline(in, line)) break;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    size_t sp = line.find(' ');
    if (sp == std::string::npos)
      throw InputError("load_vec: line " + std::to_string(line_no) + ": no components");
    std::string word = line.substr(0, sp);

    const char* cur = line.data() + sp;
    const char* end = line.data() + line.size();
    std::int64_t got = 0;
    while (cur < end) {
      while (cur < end && *cur == ' ') ++cur;
      if (cur == end) break;
      double v;
      const char* next;
      if (!parse_double(cur, end, v, next))
        throw InputError("load_vec: line " + std::to_string(line_no) + ": bad component near \"" +
                         std::string(cur, std::min<size_t>(8, end - cur)) + "\"");
      if (!std::isfinite(v))
        throw InputError("load_vec: line " + std::to_string(line_no) + ": non-finite component");
      if (got < d) row[static_cast<size_t>(got)] = v;
      ++got;
      cur = next;
    }
    if (got != d)
      throw InputError("load_vec: line " + std::to_string(line_no) + ": expected " +
                       std::to_string(d) + " components, found " + std::to_string(got));

    if (!seen.emplace(word, 1).second) {
      ++duplicates;  // keep the first occurrence
      continue;
    }
    words.push_back(std::move(word));
    values.insert(values.end(), row.begin(), row.end());
  }

  const std::int64_t n = static_cast<std::int64_t>(words.size());
  if (report) {
    report->duplicates_skipped = duplicates;
    report->declared_rows = declared_n;
    report->loaded_rows = n;
    report->header_mismatch = !limit && (n + duplicates != declared_n);
  }

  EmbeddingSpace space;
  space.words = std::move(words);
  space.lang_tag = std::move(lang_tag);
  space.matrix.resize(n, d);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < d; ++j)
      space.matrix(i, j) = values[static_cast<size_t>(i * d + j)];
  space.rebuild_index();
  return space;
}

void save_vec(const EmbeddingSpace& space, std::ostream& out) {
  std::string buf;
  buf.reserve(64);
  buf += std::to_string(space.size());
  buf += ' ';
  buf += std::to_string(space.dim());
  buf += '\n';
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));

  for (Eigen::Index i = 0; i < space.size(); ++i) {
    buf.clear();
    buf += space.words[static_cast<size_t>(i)];
    for (Eigen::Index j = 0; j < space.dim(); ++j) {
      buf += ' ';
      append_double(buf, space.matrix(i, j));
    }
    buf += '\n';
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw InputError("save_vec: write failure");
}

EmbeddingSpace normalize(const EmbeddingSpace& space, bool center) {
  EmbeddingSpace result;
  result.words = space.words;
  result.lang_tag = space.lang_tag;
  result.matrix = space.matrix;
  if (center && space.size() > 0) {
    Eigen::RowVectorXd mean = result.matrix.colwise().mean();
    result.matrix.rowwise() -= mean;
  }
  for (Eigen::Index i = 0; i < result.matrix.rows(); ++i) {
    double norm = result.matrix.row(i).norm();
    if (norm == 0.0)
      throw std::domain_error("normalize: zero-norm row " + std::to_string(i) +
                              (center ? " after centering" : ""));
    result.matrix.row(i) /= norm;
  }
  result.is_centered = space.is_centered || center;
  result.is_l2_normalized = true;
  result.rebuild_index();
  return result;
}

EmbeddingSpace restrict_top_n(const EmbeddingSpace& space, std::int64_t n,
                              RestrictReport* report) {
  if (n <= 0) throw std::invalid_argument("restrict_top_n: n must be positive");
  const std::int64_t keep = std::min<std::int64_t>(n, space.size());
  if (report) report->shortfall = n - keep;

  EmbeddingSpace result;
  result.words.assign(space.words.begin(), space.words.begin() + keep);
  result.matrix = space.matrix.topRows(keep);
  result.lang_tag = space.lang_tag;
  result.is_l2_normalized = space.is_l2_normalized;
  result.is_centered = space.is_centered;
  result.rebuild_index();
  return result;
}

Eigen::MatrixXd l2_normalize_rows(Eigen::MatrixXd m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double norm = m.row(i).norm();
    if (norm > 0) m.row(i) /= norm;
  }
  return m;
}

EmbeddingSpace slice_rows(const EmbeddingSpace& space,
                          const std::vector<Eigen::Index>& rows) {
  EmbeddingSpace result;
  result.words.reserve(rows.size());
  result.matrix.resize(static_cast<Eigen::Index>(rows.size()), space.dim());
  for (size_t i = 0; i < rows.size(); ++i) {
    result.words.push_back(space.words[static_cast<size_t>(rows[i])]);
    result.matrix.row(static_cast<Eigen::Index>(i)) = space.matrix.row(rows[i]);
  }
  result.lang_tag = space.lang_tag;
  result.is_l2_normalized = space.is_l2_normalized;
  result.is_centered = space.is_centered;
  result.rebuild_index();
  return result;
}

}  // namespace embalign
