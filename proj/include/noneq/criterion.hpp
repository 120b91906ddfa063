#pragma once

// The block pattern behind the nonequationality criterion: matrices A_n, B_n
// and a formula phi with phi(a_ij, b_kl) true iff i != k or (i,j) = (k,l).
// Everything here is independent of the group theory that produces the
// satisfaction values.

#include <vector>

#include "json.hpp"

namespace noneq {

/// Position (i, j) in an n x n matrix, 1-based.
struct PairIndex {
  int i;
  int j;
  bool operator==(const PairIndex&) const = default;
};

using BoolRows = std::vector<std::vector<bool>>;

/// Satisfaction values phi(a_ij, b_kl) for all ((i,j),(k,l)).
class SatMatrix {
 public:
  /// All cells false. Throws std::invalid_argument for n < 1.
  explicit SatMatrix(int n);

  int n() const noexcept { return n_; }
  bool at(PairIndex a, PairIndex b) const { return cells_[offset(a, b)] != 0; }
  void set(PairIndex a, PairIndex b, bool value) { cells_[offset(a, b)] = value ? 1 : 0; }

  /// Dense view: row (i-1)*n + (j-1), column (k-1)*n + (l-1).
  BoolRows rows() const;

  bool operator==(const SatMatrix&) const = default;

 private:
  std::size_t offset(PairIndex a, PairIndex b) const;

  int n_;
  std::vector<unsigned char> cells_;
};

/// cell((i,j),(k,l)) = (i != k) || (i,j) == (k,l).
SatMatrix expected_pattern(int n);
bool matches_pattern(const SatMatrix& m);

/// entry(i,j) true for all i < j and entry(i,i) false. Throws
/// std::invalid_argument on a non-square input.
bool check_order_witness(const BoolRows& rows);

/// Slice entry(j,l) = !cell((i0,j),(i0,l)) of a pattern-matching matrix.
/// Throws std::invalid_argument on a pattern mismatch or a bad row.
BoolRows extract_noneq_row(const SatMatrix& m, int i0);

/// Dense form {"n": n, "rows": [[...]]}.
nlohmann::json to_json(const SatMatrix& m);
/// Accepts the dense form or {"n": n, "cells": [[[i,j],[k,l],bool], ...]}
/// listing every cell exactly once.
SatMatrix sat_matrix_from_json(const nlohmann::json& j);

}  // namespace noneq
