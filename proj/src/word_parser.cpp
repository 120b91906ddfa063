#include "noneq/word_parser.hpp"

#include <cctype>
#include <charconv>

namespace noneq {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

bool is_separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '*'; }

}  // namespace

std::vector<WordToken> tokenize_word(std::string_view text) {
  std::vector<WordToken> tokens;
  std::size_t pos = 0;
  bool saw_one = false;
  while (pos < text.size()) {
    if (is_separator(text[pos])) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < text.size() && !is_separator(text[pos]) && text[pos] != '^') ++pos;
    WordToken token;
    token.name = std::string(text.substr(start, pos - start));
    token.column = start + 1;
    if (token.name.empty()) throw ParseError("expected generator name before '^'", 1, start + 1);
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t exp_start = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      std::string_view digits = text.substr(exp_start, pos - exp_start);
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      std::int64_t value = 0;
      auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size()) {
        throw ParseError("malformed exponent", 1, exp_start + 1);
      }
      if (pos < text.size() && !is_separator(text[pos])) {
        throw ParseError("unexpected character after exponent", 1, pos + 1);
      }
      token.exponent = value;
    }
    if (token.name == "1" && token.exponent == 1) {
      saw_one = true;
      if (!tokens.empty()) throw ParseError("'1' must stand alone", 1, token.column);
      continue;
    }
    if (saw_one) throw ParseError("'1' must stand alone", 1, token.column);
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace noneq
