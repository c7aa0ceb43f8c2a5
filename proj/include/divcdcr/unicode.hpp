#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace divcdcr::unicode {

// Decodes UTF-8 into code points. Throws Error(SchemaError) on malformed input.
std::u32string decode(std::string_view utf8);
void append_utf8(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

// Number of code points in a well-formed UTF-8 string.
std::size_t length(std::string_view utf8);
bool is_valid_utf8(std::string_view utf8) noexcept;

// General category P* (all punctuation classes).
bool is_punctuation(char32_t cp) noexcept;
// Unicode White_Space property.
bool is_whitespace(char32_t cp) noexcept;
inline bool is_trim_char(char32_t cp) noexcept {
  return is_punctuation(cp) || is_whitespace(cp);
}

// Byte offsets of every code point in a UTF-8 string, plus one past the end,
// so that slicing by code-point range is O(1).
class TextIndex {
 public:
  explicit TextIndex(std::string_view utf8);

  std::size_t size() const noexcept { return offsets_.size() - 1; }
  // Code-point range [start, end) as a view into the indexed text.
  std::string_view slice(std::size_t start, std::size_t end) const;
  char32_t at(std::size_t index) const;

 private:
  std::string_view text_;
  std::vector<std::size_t> offsets_;
};

// Lowercases ASCII and Latin-1/Latin Extended-A letters; other code points pass through.
std::u32string fold_case(std::u32string_view text);

}  // namespace divcdcr::unicode
