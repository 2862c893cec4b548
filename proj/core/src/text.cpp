#include "embalign/text.hpp"

#include <unicode/unorm2.h>
#include <unicode/ustring.h>

#include <cctype>
#include <istream>
#include <vector>

namespace embalign {

namespace {

// UTF-8 -> UTF-16, transform, -> UTF-8. Returns the input on any ICU error so
// that odd bytes in a corpus never abort a whole ingestion run.
template <typename Fn>
std::string via_utf16(std::string_view utf8, Fn&& transform) {
  UErrorCode ec = U_ZERO_ERROR;
  int32_t ulen = 0;
  u_strFromUTF8(nullptr, 0, &ulen, utf8.data(), static_cast<int32_t>(utf8.size()), &ec);
  if (ec != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(ec)) return std::string(utf8);
  ec = U_ZERO_ERROR;
  std::vector<UChar> u16(static_cast<size_t>(ulen) + 1);
  u_strFromUTF8(u16.data(), ulen + 1, &ulen, utf8.data(), static_cast<int32_t>(utf8.size()), &ec);
  if (U_FAILURE(ec)) return std::string(utf8);

  std::vector<UChar> out;
  if (!transform(u16.data(), ulen, out)) return std::string(utf8);

  ec = U_ZERO_ERROR;
  int32_t blen = 0;
  u_strToUTF8(nullptr, 0, &blen, out.data(), static_cast<int32_t>(out.size()), &ec);
  if (ec != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(ec)) return std::string(utf8);
  ec = U_ZERO_ERROR;
  std::string result(static_cast<size_t>(blen), '\0');
  u_strToUTF8(result.data(), blen + 1, &blen, out.data(), static_cast<int32_t>(out.size()), &ec);
  if (U_FAILURE(ec)) return std::string(utf8);
  return result;
}

bool is_ascii(std::string_view s) {
  for (unsigned char c : s)
    if (c >= 0x80) return false;
  return true;
}

}  // namespace

std::string nfc(std::string_view utf8) {
  if (is_ascii(utf8)) return std::string(utf8);  // NFC is identity on ASCII
  return via_utf16(utf8, [](const UChar* src, int32_t len, std::vector<UChar>& out) {
    UErrorCode ec = U_ZERO_ERROR;
    const UNormalizer2* norm = unorm2_getNFCInstance(&ec);
    if (U_FAILURE(ec)) return false;
    int32_t need = unorm2_normalize(norm, src, len, nullptr, 0, &ec);
    if (ec != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(ec)) return false;
    ec = U_ZERO_ERROR;
    out.resize(static_cast<size_t>(need));
    unorm2_normalize(norm, src, len, out.data(), need, &ec);
    return !U_FAILURE(ec);
  });
}

std::string lowercase(std::string_view utf8) {
  if (is_ascii(utf8)) {
    std::string s(utf8);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }
  return via_utf16(utf8, [](const UChar* src, int32_t len, std::vector<UChar>& out) {
    UErrorCode ec = U_ZERO_ERROR;
    int32_t need = u_strToLower(nullptr, 0, src, len, "", &ec);
    if (ec != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(ec)) return false;
    ec = U_ZERO_ERROR;
    out.resize(static_cast<size_t>(need));
    u_strToLower(out.data(), need, src, len, "", &ec);
    return !U_FAILURE(ec);
  });
}

std::vector<std::string> tokenize(std::string_view line, bool lowercase_tokens) {
  std::string normalized = nfc(line);
  if (lowercase_tokens) normalized = lowercase(normalized);
  std::vector<std::string> tokens;
  size_t i = 0;
  const size_t n = normalized.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(normalized[i]))) ++i;
    size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(normalized[i]))) ++i;
    if (i > start) tokens.emplace_back(normalized.substr(start, i - start));
  }
  return tokens;
}

WordSet read_word_set(std::istream& in, bool lowercase_words) {
  WordSet words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (auto& tok : tokenize(line, lowercase_words)) words.insert(std::move(tok));
  }
  return words;
}

}  // namespace embalign
