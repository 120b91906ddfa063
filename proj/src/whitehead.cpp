#include "noneq/whitehead.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace noneq {

namespace {

bool has_letter(std::uint64_t mask, int letter) { return (mask >> letter_bit(letter)) & 1U; }

using Letters = std::vector<int>;

void append_reduced(Letters& out, int x) {
  if (!out.empty() && out.back() == -x) {
    out.pop_back();
  } else {
    out.push_back(x);
  }
}

// Letter images of every generator under one move, for fast repeated use.
struct MoveTable {
  std::vector<Letters> image;    // image[g] for g = 1..rank
  std::vector<Letters> inverse;  // inverse[g] = image of g^-1

  MoveTable(const WhiteheadMove& move, int rank) : image(static_cast<std::size_t>(rank) + 1), inverse(image.size()) {
    for (int g = 1; g <= rank; ++g) {
      image[static_cast<std::size_t>(g)] = move_image(move, g).letters();
      inverse[static_cast<std::size_t>(g)] = invert(move_image(move, g)).letters();
    }
  }

  Letters apply(const Letters& word) const {
    Letters out;
    out.reserve(word.size() + 8);
    for (int x : word) {
      const auto& img = x > 0 ? image[static_cast<std::size_t>(x)] : inverse[static_cast<std::size_t>(-x)];
      for (int y : img) append_reduced(out, y);
    }
    return out;
  }
};

// Bounds [lo, hi) of the cyclically reduced core of a reduced letter word.
std::pair<std::size_t, std::size_t> core_bounds(const Letters& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return {lo, hi};
}

// (cyclic length, length); the greedy phase strictly decreases this.
using Potential = std::pair<std::size_t, std::size_t>;

Potential potential(const Letters& w) {
  auto [lo, hi] = core_bounds(w);
  return {hi - lo, w.size()};
}

// Lexicographically least rotation of a cyclically reduced word.
Letters least_rotation(Letters core) {
  Letters best = core;
  for (std::size_t k = 1; k < core.size(); ++k) {
    std::rotate(core.begin(), core.begin() + 1, core.end());
    if (core < best) best = core;
  }
  return best;
}

Letters cyclic_core(const Letters& w) {
  auto [lo, hi] = core_bounds(w);
  return Letters(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

// Breadth-first search of the conjugacy classes reachable from start through
// moves that keep the cyclic length constant. Returns the move sequence to the
// first image whose cyclic length drops, or nothing if the level set closes.
// Moves commute with conjugation up to conjugation, so nodes are cyclic cores.
std::optional<std::vector<std::size_t>> peak_search(const Letters& start, std::span<const MoveTable> tables) {
  const Letters first = least_rotation(cyclic_core(start));
  const std::size_t level = first.size();
  struct Node {
    Letters core;
    std::size_t parent;
    std::size_t move;
  };
  std::vector<Node> nodes{{first, 0, 0}};
  std::set<Letters> seen{first};
  auto path_to = [&](std::size_t node) {
    std::vector<std::size_t> path;
    while (node != 0) {
      path.push_back(nodes[node].move);
      node = nodes[node].parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (std::size_t m = 0; m < tables.size(); ++m) {
      Letters image = cyclic_core(tables[m].apply(nodes[head].core));
      if (image.size() < level) {
        auto path = path_to(head);
        path.push_back(m);
        return path;
      }
      if (image.size() > level) continue;
      image = least_rotation(std::move(image));
      if (seen.insert(image).second) nodes.push_back({std::move(image), head, m});
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<WhiteheadMove> enumerate_moves(int rank) {
  if (rank < 1 || rank > 32) throw std::invalid_argument("rank must lie in [1, 32]");
  std::vector<WhiteheadMove> moves;
  const int letters = 2 * rank;
  for (int bit = 0; bit < letters; ++bit) {
    const int generator = bit / 2 + 1;
    const int multiplier = bit % 2 ? -generator : generator;
    const std::uint64_t excluded = std::uint64_t{3} << (2 * (generator - 1));
    // Masks are subsets of the 2 * (rank - 1) remaining letters, enumerated
    // through their compressed form so that the order is by mask value.
    const int free_bits = letters - 2;
    for (std::uint64_t compressed = 1; compressed < (std::uint64_t{1} << free_bits); ++compressed) {
      std::uint64_t mask = 0;
      int source = 0;
      for (int target = 0; target < letters; ++target) {
        if ((excluded >> target) & 1U) continue;
        if ((compressed >> source) & 1U) mask |= std::uint64_t{1} << target;
        ++source;
      }
      moves.push_back({WhiteheadMove::Kind::multiplier, multiplier, mask, rank, {}});
    }
  }
  std::vector<int> identity(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) identity[static_cast<std::size_t>(i)] = i + 1;
  for (int i = 0; i < rank; ++i) {
    auto images = identity;
    images[static_cast<std::size_t>(i)] = -(i + 1);
    moves.push_back({WhiteheadMove::Kind::permutation_inversion, 0, 0, rank, std::move(images)});
  }
  for (int i = 0; i + 1 < rank; ++i) {
    auto images = identity;
    std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(i + 1)]);
    moves.push_back({WhiteheadMove::Kind::permutation_inversion, 0, 0, rank, std::move(images)});
  }
  return moves;
}

WhiteheadMove inverse_move(const WhiteheadMove& move) {
  if (move.kind == WhiteheadMove::Kind::multiplier) {
    WhiteheadMove inv = move;
    inv.multiplier = -move.multiplier;
    return inv;
  }
  WhiteheadMove inv = move;
  for (std::size_t i = 0; i < move.images.size(); ++i) {
    const int target = move.images[i];
    const int source = static_cast<int>(i) + 1;
    inv.images[static_cast<std::size_t>(std::abs(target) - 1)] = target < 0 ? -source : source;
  }
  return inv;
}

FreeWord move_image(const WhiteheadMove& move, int index) {
  if (index > move.rank) return FreeWord::generator(index);
  if (move.kind == WhiteheadMove::Kind::permutation_inversion) {
    const int image = move.images[static_cast<std::size_t>(index - 1)];
    return FreeWord::generator(std::abs(image), image < 0 ? -1 : 1);
  }
  const int a = move.multiplier;
  if (std::abs(a) == index) return FreeWord::generator(index);
  const FreeWord mult = FreeWord::generator(std::abs(a), a < 0 ? -1 : 1);
  FreeWord image = FreeWord::generator(index);
  if (has_letter(move.affected, index)) image = image * mult;
  if (has_letter(move.affected, -index)) image = invert(mult) * image;
  return image;
}

FreeWord apply_move(const WhiteheadMove& move, const FreeWord& w) {
  FreeWord out;
  for (const auto& run : w.runs()) out = out * power(move_image(move, run.generator), run.exponent);
  return out;
}

FreeWord replay(const FreeWord& w, std::span<const WhiteheadMove> trace) {
  FreeWord out = w;
  for (const auto& m : trace) out = apply_move(m, out);
  return out;
}

PrimitivityVerdict is_primitive(const FreeWord& w, int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (w.max_generator() > rank) throw std::invalid_argument("word mentions a generator beyond the rank");
  if (w.is_identity()) return {};
  const auto moves = enumerate_moves(rank);
  std::vector<MoveTable> tables;
  tables.reserve(moves.size());
  for (const auto& m : moves) tables.emplace_back(m, rank);

  PrimitivityVerdict verdict;
  Letters current = w.letters();
  while (current.size() > 1) {
    Potential best = potential(current);
    std::optional<std::size_t> chosen;
    Letters best_image;
    for (std::size_t m = 0; m < tables.size(); ++m) {
      Letters image = tables[m].apply(current);
      const Potential p = potential(image);
      if (p < best) {
        best = p;
        chosen = m;
        best_image = std::move(image);
      }
    }
    if (chosen) {
      verdict.trace.push_back(moves[*chosen]);
      current = std::move(best_image);
      continue;
    }
    const auto path = peak_search(current, tables);
    if (!path) return {};
    for (std::size_t m : *path) {
      verdict.trace.push_back(moves[m]);
      current = tables[m].apply(current);
    }
  }
  verdict.primitive = true;
  return verdict;
}

PrimitivityVerdict primitivity_in_ambient(const FreeWord& w) {
  if (w.is_identity()) return {};
  const std::vector<int> support = w.support();
  const int k = static_cast<int>(support.size());
  std::map<int, int> to_local;
  for (int i = 0; i < k; ++i) to_local[support[static_cast<std::size_t>(i)]] = i + 1;
  std::vector<FreeWord::Run> runs;
  for (const auto& r : w.runs()) runs.push_back({to_local[r.generator], r.exponent});
  PrimitivityVerdict local = is_primitive(FreeWord::from_runs(runs), k);

  // Rewrite the trace on the original generator indices.
  const int ambient_rank = w.max_generator();
  auto global = [&](int letter) {
    const int g = support[static_cast<std::size_t>(std::abs(letter) - 1)];
    return letter < 0 ? -g : g;
  };
  PrimitivityVerdict out;
  out.primitive = local.primitive;
  for (const auto& m : local.trace) {
    WhiteheadMove g;
    g.kind = m.kind;
    g.rank = ambient_rank;
    if (m.kind == WhiteheadMove::Kind::multiplier) {
      g.multiplier = global(m.multiplier);
      for (int bit = 0; bit < 2 * k; ++bit) {
        if (!((m.affected >> bit) & 1U)) continue;
        const int letter = bit % 2 ? -(bit / 2 + 1) : bit / 2 + 1;
        g.affected |= std::uint64_t{1} << letter_bit(global(letter));
      }
    } else {
      g.images.resize(static_cast<std::size_t>(ambient_rank));
      for (int i = 1; i <= ambient_rank; ++i) g.images[static_cast<std::size_t>(i - 1)] = i;
      for (int i = 1; i <= k; ++i) {
        g.images[static_cast<std::size_t>(global(i) - 1)] = global(m.images[static_cast<std::size_t>(i - 1)]);
      }
    }
    out.trace.push_back(std::move(g));
  }
  return out;
}

}  // namespace noneq
