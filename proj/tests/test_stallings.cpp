#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "noneq/stallings.hpp"
#include "noneq/witness.hpp"
#include "test_support.hpp"

using namespace noneq;
using noneq::testing::random_word;

namespace {

FreeWord w(std::string_view text) { return parse_free_word(text); }

CoreGraph fold_of(std::initializer_list<FreeWord> gens) {
  std::vector<FreeWord> v(gens);
  return fold(v);
}

bool invariants_hold(const CoreGraph& g) {
  return g.folded() && g.is_core() && g.rank() >= 0;
}

// Nielsen reduction conditions on S u S^-1; a Nielsen-reduced set has the
// property that a reduced product of m of its elements has length >= m.
bool nielsen_reduced(const std::vector<FreeWord>& s) {
  std::vector<FreeWord> all;
  for (const auto& x : s) {
    if (x.is_identity()) return false;
    all.push_back(x);
    all.push_back(invert(x));
  }
  for (const auto& u : all) {
    for (const auto& v : all) {
      if (u == invert(v)) continue;
      if ((u * v).length() < std::max(u.length(), v.length())) return false;
      for (const auto& x : all) {
        if (v == invert(x)) continue;
        if ((u * v * x).length() + v.length() <= u.length() + x.length()) return false;
      }
    }
  }
  return true;
}

std::set<FreeWord> products_up_to(const std::vector<FreeWord>& s, int factors) {
  std::vector<FreeWord> letters;
  for (const auto& x : s) {
    letters.push_back(x);
    letters.push_back(invert(x));
  }
  std::set<FreeWord> out{FreeWord{}};
  std::vector<FreeWord> layer{FreeWord{}};
  for (int m = 0; m < factors; ++m) {
    std::vector<FreeWord> next;
    for (const auto& p : layer) {
      for (const auto& x : letters) {
        FreeWord q = p * x;
        if (out.insert(q).second) next.push_back(q);
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("fold examples") {
  const auto empty = fold(std::span<const FreeWord>{});
  CHECK(empty.vertex_count() == 1);
  CHECK(empty.edges().empty());
  CHECK(empty.rank() == 0);

  const auto loop = fold_of({w("e1")});
  CHECK(loop.vertex_count() == 1);
  CHECK(loop.edges().size() == 1);
  CHECK(loop.rank() == 1);

  const auto wedge = fold_of({w("e1"), w("e2")});
  CHECK(wedge.vertex_count() == 1);
  CHECK(wedge.rank() == 2);

  const auto g = fold_of({w("e2^5 e1"), w("e1^-1 e2^-4")});
  CHECK(invariants_hold(g));
  CHECK(g.rank() == 2);
  CHECK(g.contains(w("e1")));
  CHECK(g.contains(w("e2")));
}

TEST_CASE("contains examples") {
  const auto loop = fold_of({w("e1")});
  CHECK(loop.contains(w("e1^3")));
  CHECK(loop.contains(w("e1^-2")));
  CHECK(loop.contains(FreeWord{}));
  CHECK_FALSE(loop.contains(w("e2")));

  const FreeWord p = w("e2^5 e1");
  const FreeWord q = w("e1^-1 e2^-4");
  CHECK(p * q == w("e2"));
  CHECK(fold_of({p, q}).contains(w("e2")));

  const auto squares = fold_of({w("e1^2"), w("e2^2")});
  CHECK(squares.rank() == 2);
  CHECK_FALSE(squares.contains(w("e1")));
  CHECK(squares.contains(w("e1^2 e2^-2 e1^4")));
}

TEST_CASE("contains rejects unfolded graphs") {
  const CoreGraph unfolded(2, {{0, 1, 1}, {0, 1, 1}});
  CHECK_FALSE(unfolded.folded());
  CHECK_THROWS_AS((void)unfolded.contains(w("e1")), std::logic_error);
}

TEST_CASE("folding cancels and prunes") {
  // e1 e2 e1^-1 and e1 e2^2 e1^-1 generate the conjugate of <e2>: one loop on a stem.
  const auto g = fold_of({w("e1 e2 e1^-1"), w("e1 e2^2 e1^-1")});
  CHECK(g.rank() == 1);
  CHECK(g.vertex_count() == 2);
  CHECK(g.contains(w("e1 e2^-3 e1^-1")));
  CHECK_FALSE(g.contains(w("e2")));
  // A generator that is trivial contributes nothing.
  const auto h = fold_of({w("e1 e1^-1"), FreeWord{}});
  CHECK(h.rank() == 0);
  CHECK(h.vertex_count() == 1);
}

TEST_CASE("property: folding is confluent under permutations of the generators") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const int count = 1 + static_cast<int>(rng() % 4);
    std::vector<FreeWord> gens;
    for (int i = 0; i < count; ++i) gens.push_back(random_word(rng, 3, 8));
    const auto reference = fold(gens).canonical_form();
    std::vector<int> order(gens.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    do {
      std::vector<FreeWord> permuted;
      for (int i : order) permuted.push_back(gens[static_cast<std::size_t>(i)]);
      const auto g = fold(permuted);
      CHECK(invariants_hold(g));
      CHECK(g.canonical_form() == reference);
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("property: refolding with subgroup elements changes nothing") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<FreeWord> gens{random_word(rng, 3, 6), random_word(rng, 3, 6)};
    const auto g = fold(gens);
    auto extended = gens;
    extended.push_back(gens[0] * invert(gens[1]) * gens[0]);
    extended.push_back(invert(gens[1]));
    CHECK(fold(extended).canonical_form() == g.canonical_form());
  }
}

TEST_CASE("property: Nielsen-Schreier bound") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<FreeWord> gens;
    const int count = static_cast<int>(rng() % 5);
    for (int i = 0; i < count; ++i) gens.push_back(random_word(rng, 3, 7));
    const auto g = fold(gens);
    CHECK(invariants_hold(g));
    CHECK(g.rank() <= count);
    for (const auto& x : gens) CHECK(g.contains(x));
  }
}

TEST_CASE("property: membership agrees with enumeration of products") {
  const std::vector<std::vector<FreeWord>> sets = {
      {w("e1^2"), w("e2^2")},
      {w("e1 e2"), w("e2 e1")},
      {w("e1^3"), w("e1 e2 e1^-1")},
      {w("e1 e2 e1"), w("e2^2")},
      {w("e1^2"), w("e2 e3"), w("e3 e1 e2^-1")},
      {w("e1 e2^-1"), w("e2 e3^2")},
  };
  constexpr int kLength = 4;
  for (const auto& s : sets) {
    REQUIRE(nielsen_reduced(s));
    const auto g = fold(s);
    const auto products = products_up_to(s, kLength);
    // Completeness: every product of at most kLength factors is accepted.
    for (const auto& p : products) CHECK(g.contains(p));
    // Soundness: an accepted word of length <= kLength has an expression
    // with at most kLength factors, because S is Nielsen reduced.
    noneq::testing::for_each_word(3, kLength, [&](const FreeWord& x) {
      if (g.contains(x)) CHECK_MESSAGE(products.count(x) == 1, to_string(x));
    });
  }
}

TEST_CASE("canonical form distinguishes non-isomorphic graphs") {
  CHECK(fold_of({w("e1^2")}).canonical_form() != fold_of({w("e1^3")}).canonical_form());
  CHECK(fold_of({w("e1"), w("e2")}).canonical_form() == fold_of({w("e2"), w("e1 e2")}).canonical_form());
}

TEST_CASE("basis helper set") {
  CHECK(basis_helper_set(1, 1, 2, 1) == std::vector<int>{3});
  CHECK(basis_helper_set(1, 3, 2, 3) == std::vector<int>{4, 5});
  CHECK(basis_helper_set(1, 1, 1, 1).empty());
  CHECK(basis_helper_set(1, 2, 2, 1) == std::vector<int>{3});
  CHECK(basis_helper_set(2, 1, 1, 2) == std::vector<int>{3});
  CHECK(basis_helper_set(1, 2, 3, 1) == std::vector<int>{4});
}

TEST_CASE("verify_basis_pair examples") {
  CHECK(verify_basis_pair(w("e2^5 e1"), w("e1^-1 e2^-4"), 1, 1, 1, 1));
  CHECK(verify_basis_pair(w("e2^5 e1"), w("e2^-1 e3^-4"), 1, 1, 2, 1));
  CHECK_THROWS_AS((void)verify_basis_pair(w("e2^5 e1"), w("e1^-1 e3^-4"), 1, 1, 1, 2), std::invalid_argument);
  // Outside the hypothesis: only recorded.
  const bool outside = basis_certificate(w("e2^5 e1"), w("e1^-1 e3^-4"), 1, 1, 1, 2);
  MESSAGE("basis certificate at (1,1),(1,2): " << outside);
}

TEST_CASE("property: basis certificates hold on every pattern-true cell for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    const auto m = build_matrices(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            if (i == k && j != l) continue;
            CHECK_MESSAGE(verify_basis_pair(m.A(i, j), m.B(k, l), i, j, k, l),
                          "n=" << n << " (" << i << "," << j << "),(" << k << "," << l << ")");
          }
  }
}
