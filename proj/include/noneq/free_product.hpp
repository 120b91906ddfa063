#pragma once

// Normal forms in free products G_1 * ... * G_m.
//
// Factors implement FactorGroup: finite groups given by a Cayley table, free
// groups of finite or countable rank, and whole free products (composite
// factors), so that G_1 * G_2 * F can be handled as the two-factor splitting
// (G_1 * G_2) * F.

#include <atomic>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "noneq/free_word.hpp"
#include "noneq/word_parser.hpp"

namespace noneq {

class FPElement;
class FreeProductGroup;

/// Element of a composite factor, held by pointer to break the type cycle.
struct NestedElement {
  std::shared_ptr<const FPElement> value;
};
bool operator==(const NestedElement& a, const NestedElement& b);
std::strong_ordering operator<=>(const NestedElement& a, const NestedElement& b);

/// Table index, free word, or nested normal form depending on the factor.
using FactorElement = std::variant<std::size_t, FreeWord, NestedElement>;

struct Syllable {
  std::size_t factor;
  FactorElement element;
  bool operator==(const Syllable&) const = default;
  std::strong_ordering operator<=>(const Syllable&) const = default;
};

/// Normal form g_1 ... g_n: every g_i nontrivial, neighbours in distinct factors.
class FPElement {
 public:
  FPElement() = default;
  /// Takes syllables assumed to be in normal form; FreeProductGroup::validate checks.
  explicit FPElement(std::vector<Syllable> syllables) : syllables_(std::move(syllables)) {}

  const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
  std::size_t syl() const noexcept { return syllables_.size(); }
  bool is_identity() const noexcept { return syllables_.empty(); }
  const Syllable& front() const { return syllables_.front(); }
  const Syllable& back() const { return syllables_.back(); }

  bool operator==(const FPElement&) const = default;
  std::strong_ordering operator<=>(const FPElement&) const = default;

 private:
  std::vector<Syllable> syllables_;
};

/// fp_qth_root hit an identity core with torsion of order dividing q: every
/// conjugate of such torsion is a root.
class InfiniteRootSet : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FactorGroup {
 public:
  virtual ~FactorGroup() = default;

  virtual const std::string& name() const = 0;
  virtual FactorElement identity() const = 0;
  virtual FactorElement multiply(const FactorElement& a, const FactorElement& b) const = 0;
  virtual FactorElement invert(const FactorElement& a) const = 0;
  virtual bool is_identity(const FactorElement& a) const = 0;
  /// Whether a has the representation this factor uses.
  virtual bool holds(const FactorElement& a) const = 0;
  /// All elements, for finite factors.
  virtual std::optional<std::vector<FactorElement>> elements() const { return std::nullopt; }
  /// Every x in the factor with x^q = a. Throws InfiniteRootSet when that set is infinite.
  virtual std::vector<FactorElement> roots(const FactorElement& a, int q) const = 0;
  /// The element a token denotes, or nullopt if the token names nothing here.
  virtual std::optional<FactorElement> parse_token(const WordToken& token) const = 0;
  /// Tokens separated by spaces; the identity prints as "1".
  virtual std::string format(const FactorElement& a) const = 0;

  FactorElement power(const FactorElement& a, std::int64_t n) const;
};

/// Finite group from a Cayley table; elements print as "<name>.<element>".
class TableGroup final : public FactorGroup {
 public:
  /// Validates that mul is a Latin square, associative, with the given
  /// identity and inverse map. Throws std::invalid_argument otherwise.
  TableGroup(std::string name, std::vector<std::string> element_names, std::vector<std::vector<std::size_t>> mul,
             std::vector<std::size_t> inv, std::size_t identity);

  std::size_t order() const noexcept { return names_.size(); }
  const std::vector<std::string>& element_names() const noexcept { return names_; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return mul_; }
  const std::vector<std::size_t>& inverses() const noexcept { return inv_; }
  std::size_t identity_index() const noexcept { return identity_; }

  const std::string& name() const override { return name_; }
  FactorElement identity() const override { return identity_; }
  FactorElement multiply(const FactorElement& a, const FactorElement& b) const override;
  FactorElement invert(const FactorElement& a) const override;
  bool is_identity(const FactorElement& a) const override;
  bool holds(const FactorElement& a) const override;
  std::optional<std::vector<FactorElement>> elements() const override;
  std::vector<FactorElement> roots(const FactorElement& a, int q) const override;
  std::optional<FactorElement> parse_token(const WordToken& token) const override;
  std::string format(const FactorElement& a) const override;

 private:
  std::size_t index(const FactorElement& a) const;

  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> mul_;
  std::vector<std::size_t> inv_;
  std::size_t identity_;
};

/// Z_n with elements "0".."n-1".
std::shared_ptr<TableGroup> cyclic_group(std::size_t n, std::string name);

/// Free group of finite rank or of countable rank (rank = nullopt). Generators
/// exist lazily: the factor records the largest index referenced so far.
class FreeFactor final : public FactorGroup {
 public:
  FreeFactor(std::optional<int> rank, std::string prefix);

  std::optional<int> rank() const noexcept { return rank_; }
  const std::string& prefix() const noexcept { return prefix_; }
  /// Largest generator index referenced through this factor; monotone.
  int generators_in_use() const noexcept { return in_use_.load(std::memory_order_relaxed); }
  /// Registers e_index, checking it against the rank.
  FreeWord generator(int index, std::int64_t exponent = 1) const;

  const std::string& name() const override { return prefix_; }
  FactorElement identity() const override { return FreeWord{}; }
  FactorElement multiply(const FactorElement& a, const FactorElement& b) const override;
  FactorElement invert(const FactorElement& a) const override;
  bool is_identity(const FactorElement& a) const override;
  bool holds(const FactorElement& a) const override;
  std::vector<FactorElement> roots(const FactorElement& a, int q) const override;
  std::optional<FactorElement> parse_token(const WordToken& token) const override;
  std::string format(const FactorElement& a) const override;

 private:
  void touch(int index) const;

  std::optional<int> rank_;
  std::string prefix_;
  mutable std::atomic<int> in_use_{0};
};

/// A free product used as a single factor of an outer free product.
class CompositeFactor final : public FactorGroup {
 public:
  explicit CompositeFactor(std::shared_ptr<const FreeProductGroup> group);

  const FreeProductGroup& group() const noexcept { return *group_; }
  FactorElement wrap(FPElement g) const;
  const FPElement& unwrap(const FactorElement& a) const;

  const std::string& name() const override;
  FactorElement identity() const override;
  FactorElement multiply(const FactorElement& a, const FactorElement& b) const override;
  FactorElement invert(const FactorElement& a) const override;
  bool is_identity(const FactorElement& a) const override;
  bool holds(const FactorElement& a) const override;
  std::vector<FactorElement> roots(const FactorElement& a, int q) const override;
  std::optional<FactorElement> parse_token(const WordToken& token) const override;
  std::string format(const FactorElement& a) const override;

 private:
  std::shared_ptr<const FreeProductGroup> group_;
};

struct FPCyclicSplit {
  FPElement conjugator;
  FPElement core;
};

class FreeProductGroup {
 public:
  /// side_names label the factors in tree vertices; default "G1", "G2", ...
  explicit FreeProductGroup(std::vector<std::shared_ptr<const FactorGroup>> factors,
                            std::vector<std::string> side_names = {}, std::string name = {});

  std::size_t factor_count() const noexcept { return factors_.size(); }
  const FactorGroup& factor(std::size_t i) const { return *factors_.at(i); }
  std::shared_ptr<const FactorGroup> factor_ptr(std::size_t i) const { return factors_.at(i); }
  const std::vector<std::string>& side_names() const noexcept { return side_names_; }
  const std::string& name() const noexcept { return name_; }

  /// The one-syllable element x of factor i (identity if x is trivial).
  FPElement syllable(std::size_t i, FactorElement x) const;

  /// Throws std::invalid_argument unless g is a normal form of this product.
  void validate(const FPElement& g) const;

  FPElement multiply(const FPElement& a, const FPElement& b) const;
  FPElement invert(const FPElement& a) const;
  FPElement power(const FPElement& a, std::int64_t n) const;
  bool commutes(const FPElement& a, const FPElement& b) const;

  /// a = conjugator * core * conjugator^-1 with core cyclically reduced. When
  /// the outer syllables share a factor without cancelling, the first one
  /// moves into the conjugator and the last syllable of core becomes
  /// (last * first).
  FPCyclicSplit cyclic_split(const FPElement& a) const;

  /// Every v with v^q = z. Throws InfiniteRootSet if that set is infinite.
  std::vector<FPElement> qth_roots(const FPElement& z, int q) const;

  /// Identity roots that the infinite case consists of: nontrivial x in some
  /// factor with x^q = 1 (up to conjugation).
  std::vector<FPElement> torsion_roots(int q) const;

  std::optional<FPElement> parse_token(const WordToken& token) const;
  FPElement parse(std::string_view text) const;
  std::string format(const FPElement& g) const;

 private:
  void validate_element(std::size_t factor, const FactorElement& x) const;

  std::vector<std::shared_ptr<const FactorGroup>> factors_;
  std::vector<std::string> side_names_;
  std::string name_;
};

/// Regroups g into the product where every composite factor of `nested` is
/// replaced by its own factors, in order: (G_1 * G_2) * H becomes G_1 * G_2 * H.
FPElement flatten(const FreeProductGroup& nested, const FPElement& g);

}  // namespace noneq
