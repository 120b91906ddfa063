#include "noneq/stallings.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace noneq {

CoreGraph::CoreGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)), adjacency_(static_cast<std::size_t>(vertex_count)) {
  if (vertex_count < 1) throw std::invalid_argument("a core graph has at least the basepoint");
  for (const Edge& e : edges_) {
    if (e.from < 0 || e.to < 0 || e.from >= vertex_count || e.to >= vertex_count || e.label < 1) {
      throw std::invalid_argument("edge out of range");
    }
    folded_ = adjacency_[static_cast<std::size_t>(e.from)].emplace(e.label, e.to).second && folded_;
    folded_ = adjacency_[static_cast<std::size_t>(e.to)].emplace(-e.label, e.from).second && folded_;
  }
}

bool CoreGraph::is_core() const {
  std::vector<int> degree(static_cast<std::size_t>(vertex_count_), 0);
  for (const Edge& e : edges_) {
    ++degree[static_cast<std::size_t>(e.from)];
    ++degree[static_cast<std::size_t>(e.to)];
  }
  for (int v = 1; v < vertex_count_; ++v) {
    if (degree[static_cast<std::size_t>(v)] < 2) return false;
  }
  return true;
}

bool CoreGraph::contains(const FreeWord& w) const {
  if (!folded_) throw std::logic_error("membership requires a folded graph");
  int at = basepoint();
  for (int letter : w.letters()) {
    const auto& adj = adjacency_[static_cast<std::size_t>(at)];
    auto it = adj.find(letter);
    if (it == adj.end()) return false;
    at = it->second;
  }
  return at == basepoint();
}

std::vector<CoreGraph::Edge> CoreGraph::canonical_form() const {
  std::vector<int> order(static_cast<std::size_t>(vertex_count_), -1);
  std::queue<int> queue;
  order[0] = 0;
  queue.push(0);
  int next = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (const auto& [label, target] : adjacency_[static_cast<std::size_t>(v)]) {
      if (order[static_cast<std::size_t>(target)] < 0) {
        order[static_cast<std::size_t>(target)] = next++;
        queue.push(target);
      }
    }
  }
  std::vector<Edge> out;
  for (const Edge& e : edges_) {
    out.push_back({order[static_cast<std::size_t>(e.from)], order[static_cast<std::size_t>(e.to)], e.label});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  // Keeps the smaller root so the basepoint stays 0.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

CoreGraph fold(std::span<const FreeWord> generators) {
  int vertices = 1;
  std::vector<CoreGraph::Edge> edges;
  for (const FreeWord& w : generators) {
    const std::vector<int> letters = w.letters();
    int at = 0;
    for (std::size_t pos = 0; pos < letters.size(); ++pos) {
      const int to = pos + 1 == letters.size() ? 0 : vertices++;
      const int x = letters[pos];
      if (x > 0) {
        edges.push_back({at, to, x});
      } else {
        edges.push_back({to, at, -x});
      }
      at = to;
    }
  }

  DisjointSets sets{std::vector<int>(static_cast<std::size_t>(vertices))};
  std::iota(sets.parent.begin(), sets.parent.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<int, int>, int> seen;
    for (const auto& e : edges) {
      const int u = sets.find(e.from);
      const int v = sets.find(e.to);
      for (auto [tail, label, head] : {std::tuple{u, e.label, v}, std::tuple{v, -e.label, u}}) {
        auto [it, inserted] = seen.emplace(std::pair{tail, label}, head);
        if (!inserted && sets.find(it->second) != sets.find(head)) {
          sets.unite(it->second, head);
          changed = true;
        }
      }
    }
  }

  std::set<CoreGraph::Edge> merged;
  for (const auto& e : edges) merged.insert({sets.find(e.from), sets.find(e.to), e.label});

  // Prune hanging trees: drop non-basepoint vertices of degree one.
  std::map<int, int> degree;
  for (int v = 0; v < vertices; ++v) {
    if (sets.find(v) == v) degree[v] = 0;
  }
  for (const auto& e : merged) {
    ++degree[e.from];
    ++degree[e.to];
  }
  for (bool pruned = true; pruned;) {
    pruned = false;
    for (auto it = merged.begin(); it != merged.end();) {
      const bool dangling = (it->from != 0 && degree[it->from] == 1) || (it->to != 0 && degree[it->to] == 1);
      if (dangling && it->from != it->to) {
        --degree[it->from];
        --degree[it->to];
        it = merged.erase(it);
        pruned = true;
      } else {
        ++it;
      }
    }
  }

  std::map<int, int> relabel{{0, 0}};
  for (const auto& [v, d] : degree) {
    if (v != 0 && d > 0) relabel.emplace(v, static_cast<int>(relabel.size()));
  }
  std::vector<CoreGraph::Edge> out;
  for (const auto& e : merged) out.push_back({relabel.at(e.from), relabel.at(e.to), e.label});
  return CoreGraph(static_cast<int>(relabel.size()), std::move(out));
}

std::vector<int> basis_helper_set(int i, int j, int k, int l) {
  if (i == k && j == l) return {};
  std::vector<int> taken{i, k};
  std::vector<int> helpers;
  for (int s : {i + j, k + l}) {
    if (std::find(taken.begin(), taken.end(), s) == taken.end()) {
      helpers.push_back(s);
      taken.push_back(s);
    }
  }
  return helpers;
}

bool basis_certificate(const FreeWord& a, const FreeWord& b, int i, int j, int k, int l) {
  if (i < 1 || j < 1 || k < 1 || l < 1) throw std::invalid_argument("matrix positions are 1-based");
  const std::vector<int> helpers = basis_helper_set(i, j, k, l);
  std::vector<FreeWord> generators{a, b};
  for (int s : helpers) generators.push_back(FreeWord::generator(s));

  // Basis elements the generated subgroup has to contain.
  std::vector<int> required;
  if (i == k && j == l) {
    required = {i, i + j};
  } else {
    required = {i, k};
    required.insert(required.end(), helpers.begin(), helpers.end());
  }
  std::sort(required.begin(), required.end());
  required.erase(std::unique(required.begin(), required.end()), required.end());
  if (required.size() != generators.size()) return false;

  const CoreGraph graph = fold(generators);
  if (graph.rank() != static_cast<int>(generators.size())) return false;
  return std::all_of(required.begin(), required.end(), [&](int s) { return graph.contains(FreeWord::generator(s)); });
}

bool verify_basis_pair(const FreeWord& a, const FreeWord& b, int i, int j, int k, int l) {
  if (i == k && j != l) throw std::invalid_argument("basis certificate needs i != k or (i,j) == (k,l)");
  return basis_certificate(a, b, i, j, k, l);
}

}  // namespace noneq
