#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace noneq {

/// Raised on malformed input text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// One `name^exponent` token of the word grammar.
struct WordToken {
  std::string name;
  std::int64_t exponent = 1;
  std::size_t column = 1;
};

/// Splits text following
///
///   word  := "1" | token ((whitespace | "*") token)*
///   token := name ("^" signed-integer)?
///
/// The identity ("1" or empty input) yields no tokens.
std::vector<WordToken> tokenize_word(std::string_view text);

/// Returns the 1-based (line, column) of a byte offset in text.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

}  // namespace noneq
