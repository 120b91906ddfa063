#pragma once

// Witness matrices for phi_NE(x, y) := forall u,v ([u,v] != 1 -> xy != u^5 v^4)
// in F_omega, per-cell decisions with checkable certificates, and reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "noneq/criterion.hpp"
#include "noneq/free_word.hpp"
#include "noneq/whitehead.hpp"

namespace noneq {

inline constexpr int kPhiFifth = 5;
inline constexpr int kPhiFourth = 4;

/// A[i][j] = e_{i+j}^5 e_i and B[k][l] = e_k^-1 e_{k+l}^-4, 1-based.
struct WitnessMatrices {
  int n = 0;
  std::vector<FreeWord> a;  // row-major
  std::vector<FreeWord> b;

  const FreeWord& A(int i, int j) const { return a.at(static_cast<std::size_t>((i - 1) * n + (j - 1))); }
  const FreeWord& B(int k, int l) const { return b.at(static_cast<std::size_t>((k - 1) * n + (l - 1))); }
};

/// Throws std::invalid_argument for n < 1.
WitnessMatrices build_matrices(int n);

struct Certificate {
  enum class Kind { satisfied, falsified, undecided };

  Kind kind = Kind::undecided;
  std::vector<WhiteheadMove> trace;  // satisfied: reduces xy to one letter
  FreeWord u;                        // falsified: u^5 v^4 = xy, [u,v] != 1
  FreeWord v;
  std::size_t bound = 0;             // undecided: search bound that was exhausted
};

const char* to_string(Certificate::Kind kind);

/// Decides phi_NE(a, b). A primitive product is Satisfied (a primitive element
/// is never a fifth power times a fourth power of non-commuting elements).
/// Otherwise u runs over reduced words of length <= search_bound in the
/// letters of ab (0 means |ab|), and v over fourth roots of u^-5 ab.
Certificate decide_phi_ne(const FreeWord& a, const FreeWord& b, std::size_t search_bound = 0);

/// Recomputes the certificate's claim. Undecided certificates claim nothing
/// and never check.
bool check_certificate(const FreeWord& a, const FreeWord& b, const Certificate& c);

struct CellResult {
  PairIndex a;
  PairIndex b;
  bool sat = false;
  Certificate certificate;
  std::optional<bool> basis_ok;  // present where the pattern expects true
  std::int64_t micros = 0;
};

struct WitnessReport {
  int n = 0;
  SatMatrix matrix{1};
  std::vector<CellResult> cells;  // row-major over ((i,j),(k,l))
  bool pattern_ok = false;

  std::vector<const CellResult*> undecided() const;
};

/// Evaluates every cell; jobs > 1 spreads cells over worker threads without
/// changing the result. search_bound as in decide_phi_ne.
WitnessReport evaluate_matrix(int n, std::size_t search_bound = 0, unsigned jobs = 1);

/// Schema: {"n", "pattern_ok", "cells": [{"a", "b", "sat", "certificate", "basis_ok"?, "micros"}]}.
nlohmann::json to_json(const WitnessReport& report);
/// Plain matrix: rows are A entries, columns B entries, "1"/"0".
std::string render_table(const WitnessReport& report);

}  // namespace noneq
