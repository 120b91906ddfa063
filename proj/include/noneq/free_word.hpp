#pragma once

// Reduced words in the free group on generators e_1, e_2, ...
//
// Words are stored run-length encoded: e_2^5 e_1 is two runs. A letter, where
// the letter-level view is needed, is a signed generator index (+i for e_i,
// -i for its inverse).

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace noneq {

/// Index of a basis element e_index, index >= 1.
class Generator {
 public:
  explicit Generator(int index);
  int index() const noexcept { return index_; }
  auto operator<=>(const Generator&) const = default;

 private:
  int index_;
};

class FreeWord {
 public:
  struct Run {
    int generator;
    std::int64_t exponent;
    auto operator<=>(const Run&) const = default;
  };

  FreeWord() = default;

  static FreeWord generator(Generator g, std::int64_t exponent = 1);
  static FreeWord generator(int index, std::int64_t exponent = 1) { return generator(Generator(index), exponent); }
  /// Reduces an arbitrary run sequence (zero exponents and equal neighbours allowed).
  static FreeWord from_runs(std::span<const Run> runs);
  static FreeWord from_letters(std::span<const int> letters);

  std::span<const Run> runs() const noexcept { return runs_; }
  std::vector<int> letters() const;
  std::size_t length() const noexcept;
  bool is_identity() const noexcept { return runs_.empty(); }
  int max_generator() const noexcept;
  /// Distinct generator indices, ascending.
  std::vector<int> support() const;
  int first_letter() const;
  int last_letter() const;

  auto operator<=>(const FreeWord&) const = default;

 private:
  std::vector<Run> runs_;
};

FreeWord multiply(const FreeWord& a, const FreeWord& b);
FreeWord invert(const FreeWord& a);
FreeWord power(const FreeWord& a, std::int64_t n);
bool commutes(const FreeWord& a, const FreeWord& b);

inline FreeWord operator*(const FreeWord& a, const FreeWord& b) { return multiply(a, b); }

struct CyclicSplit {
  FreeWord conjugator;
  FreeWord core;
};

/// a = conjugator * core * conjugator^-1 with core cyclically reduced and the
/// conjugator as short as possible.
CyclicSplit cyclic_split(const FreeWord& a);

/// The unique v with v^q = z, if any. Throws std::invalid_argument for q < 1.
std::optional<FreeWord> qth_root(const FreeWord& z, int q);

/// Letter length of the cyclically reduced core.
std::size_t cyclic_length(const FreeWord& a);

std::string to_string(const FreeWord& w, std::string_view prefix = "e");
/// Parses the word grammar with generator names prefix + positive integer.
FreeWord parse_free_word(std::string_view text, std::string_view prefix = "e");

}  // namespace noneq
