#pragma once

// Primitivity testing in finite-rank free groups by Whitehead's algorithm.

#include <cstdint>
#include <span>
#include <vector>

#include "noneq/free_word.hpp"

namespace noneq {

/// A Whitehead automorphism of F_rank.
///
/// A multiplier move with multiplier a and affected set A (a set of letters
/// not involving a's generator) sends a generator x to
///   x a        if x in A and x^-1 not in A,
///   a^-1 x     if x^-1 in A and x not in A,
///   a^-1 x a   if both are in A,
/// and fixes everything else. A permutation-inversion move sends e_i to the
/// signed letter images[i-1].
struct WhiteheadMove {
  enum class Kind { permutation_inversion, multiplier };

  Kind kind = Kind::multiplier;
  int multiplier = 0;           // signed generator; multiplier moves only
  std::uint64_t affected = 0;   // bit letter_bit(x) set iff letter x is in A
  int rank = 0;
  std::vector<int> images;      // permutation-inversion moves only

  bool operator==(const WhiteheadMove&) const = default;
};

/// Bit position of a signed letter inside WhiteheadMove::affected.
constexpr int letter_bit(int letter) { return 2 * ((letter < 0 ? -letter : letter) - 1) + (letter < 0 ? 1 : 0); }

/// All multiplier moves of F_rank, ordered by multiplier bit then affected
/// mask, followed by the inversions of each generator and the adjacent
/// transpositions. Throws std::invalid_argument unless 1 <= rank <= 32.
std::vector<WhiteheadMove> enumerate_moves(int rank);

WhiteheadMove inverse_move(const WhiteheadMove& move);

/// Image of a generator e_index under the move.
FreeWord move_image(const WhiteheadMove& move, int index);
FreeWord apply_move(const WhiteheadMove& move, const FreeWord& w);
FreeWord replay(const FreeWord& w, std::span<const WhiteheadMove> trace);

struct PrimitivityVerdict {
  bool primitive = false;
  /// Moves taking the input to a single letter; empty unless primitive.
  std::vector<WhiteheadMove> trace;
};

/// Decides whether w belongs to a basis of F_rank. Throws
/// std::invalid_argument if w mentions a generator beyond rank.
PrimitivityVerdict is_primitive(const FreeWord& w, int rank);

/// Primitivity in F_omega, tested in the free factor spanned by the
/// generators occurring in w. The trace is expressed in w's own indices.
PrimitivityVerdict primitivity_in_ambient(const FreeWord& w);

}  // namespace noneq
