#pragma once

// Stallings core graphs of finitely generated subgroups of free groups.

#include <map>
#include <span>
#include <vector>

#include "noneq/free_word.hpp"

namespace noneq {

class CoreGraph {
 public:
  struct Edge {
    int from;
    int to;
    int label;  // generator index
    auto operator<=>(const Edge&) const = default;
  };

  /// Graph with the given vertices (0 is the basepoint) and edges, as is.
  CoreGraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const noexcept { return vertex_count_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  static constexpr int basepoint() noexcept { return 0; }
  /// No vertex has two outgoing or two incoming edges with the same label.
  bool folded() const noexcept { return folded_; }
  /// Every vertex other than the basepoint has degree >= 2.
  bool is_core() const;

  int rank() const noexcept { return static_cast<int>(edges_.size()) - vertex_count_ + 1; }

  /// Whether w labels a closed path at the basepoint. Throws std::logic_error
  /// on an unfolded graph.
  bool contains(const FreeWord& w) const;

  /// Edge list after breadth-first relabelling from the basepoint, visiting
  /// neighbours in order of signed label. Equal iff the graphs are isomorphic.
  std::vector<Edge> canonical_form() const;

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  // adjacency_[v][+g] = head of the g-edge leaving v, adjacency_[v][-g] = tail
  // of the g-edge entering v.
  std::vector<std::map<int, int>> adjacency_;
  bool folded_ = true;
};

/// Folded core graph of the subgroup generated by the given words.
CoreGraph fold(std::span<const FreeWord> generators);

/// Helper generators used by verify_basis_pair for the positions (i,j), (k,l).
std::vector<int> basis_helper_set(int i, int j, int k, int l);

/// Sufficient condition for {a, b} to extend to a basis of F_omega, where a
/// and b are the witness entries at positions (i,j) and (k,l). Only positions
/// with i != k or (i,j) == (k,l) are accepted (std::invalid_argument
/// otherwise). A false result means the certificate failed, not that no basis
/// extension exists.
bool verify_basis_pair(const FreeWord& a, const FreeWord& b, int i, int j, int k, int l);

/// Same certificate without the position restriction; used to report the
/// outcome on positions where the pattern expects false.
bool basis_certificate(const FreeWord& a, const FreeWord& b, int i, int j, int k, int l);

}  // namespace noneq
