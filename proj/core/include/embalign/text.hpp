#ifndef EMBALIGN_TEXT_HPP
#define EMBALIGN_TEXT_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace embalign {

using WordSet = std::unordered_set<std::string>;

// Unicode NFC normalization of a UTF-8 string (composes combining marks).
// Invalid UTF-8 is passed through unchanged.
std::string nfc(std::string_view utf8);

// Full Unicode lowercasing (root locale). Scripts without case (e.g. Sinhala)
// pass through unchanged.
std::string lowercase(std::string_view utf8);

// Splits on ASCII whitespace after NFC normalization; lowercases tokens when
// requested. Empty tokens are dropped.
std::vector<std::string> tokenize(std::string_view line, bool lowercase_tokens);

// One word per line; blank lines skipped; each word NFC-normalized and
// optionally lowercased.
WordSet read_word_set(std::istream& in, bool lowercase_words);

}  // namespace embalign

#endif  // EMBALIGN_TEXT_HPP
