#ifndef EMBALIGN_ERRORS_HPP
#define EMBALIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace embalign {

// Missing or unreadable input (file, stream, malformed header). CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// No usable anchor pairs / degenerate fit. CLI exit code 3.
class DegenerateAnchorsError : public std::runtime_error {
 public:
  explicit DegenerateAnchorsError(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation cannot be carried out (e.g. all queries out of vocabulary). CLI exit code 4.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace embalign

#endif  // EMBALIGN_ERRORS_HPP
