#pragma once

// Bounded searches for u^p v^q = target with [u, v] != 1 in a free product.

#include <optional>
#include <span>
#include <vector>

#include "noneq/free_product.hpp"

namespace noneq {

struct ConjugatorStrip {
  FPElement u;
  FPElement v;
  FPElement gamma;
};

/// Peels syllables c off both elements while u = c u' c^-1 and v = c v' c^-1
/// hold as reduced normal forms (first syllable c, last syllable c^-1).
/// Afterwards u = gamma u' gamma^-1 and v = gamma v' gamma^-1.
ConjugatorStrip strip_common_conjugator(const FreeProductGroup& g, const FPElement& u, const FPElement& v);

struct PowerDecomposition {
  FPElement u;
  FPElement v;
};

/// Normal forms whose syllables are single alphabet elements, by syllable
/// count and then lexicographically by alphabet position; the identity first.
std::vector<FPElement> enumerate_normal_forms(const FreeProductGroup& g, std::span<const FPElement> alphabet,
                                              std::size_t max_syl);

/// First (u, v) with u^p v^q = target and [u, v] != 1, u ranging over
/// enumerate_normal_forms(alphabet, syl_bound) and v over all q-th roots of
/// u^-p target. When that root set is infinite (torsion of order dividing q
/// around a trivial core) the conjugating elements are limited to the same
/// enumeration. Throws std::invalid_argument for an empty alphabet or an
/// alphabet element that is not a single nontrivial syllable.
std::optional<PowerDecomposition> search_power_decomposition(const FreeProductGroup& g, const FPElement& target, int p,
                                                             int q, std::size_t syl_bound,
                                                             std::span<const FPElement> alphabet);

bool check_decomposition(const FreeProductGroup& g, const FPElement& target, int p, int q,
                         const PowerDecomposition& d);

}  // namespace noneq
