#pragma once

// The Bass-Serre tree of a two-factor free product G = G_1 * G_2.
//
// Vertices are cosets g G_i, labelled by the normal form of g with any
// trailing syllable from G_i removed. The element g gives the edge between
// g G_1 and g G_2; G acts by left multiplication.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "noneq/free_product.hpp"

namespace noneq {

struct TreeVertex {
  FPElement rep;
  std::size_t side = 0;
  bool operator==(const TreeVertex&) const = default;
  std::strong_ordering operator<=>(const TreeVertex&) const = default;
};

struct Elliptic {
  /// nullopt for the identity, which fixes every vertex.
  std::optional<TreeVertex> fixed;
};

struct Hyperbolic {
  std::size_t translation;
};

using ActionClass = std::variant<Elliptic, Hyperbolic>;

class BassSerreTree {
 public:
  /// Requires exactly two factors.
  explicit BassSerreTree(std::shared_ptr<const FreeProductGroup> group);

  const FreeProductGroup& group() const noexcept { return *group_; }

  TreeVertex canonicalize(const FPElement& g, std::size_t side) const;
  TreeVertex base(std::size_t side) const { return {FPElement{}, side}; }
  TreeVertex act(const FPElement& h, const TreeVertex& v) const;

  std::size_t distance(const TreeVertex& u, const TreeVertex& v) const;
  /// Vertices of the unique path from u to v, both ends included.
  std::vector<TreeVertex> geodesic(const TreeVertex& u, const TreeVertex& v) const;
  /// The distinct neighbours of v: x gG_{1-i} for x in G_i. Requires a finite G_i.
  std::vector<TreeVertex> neighbours(const TreeVertex& v) const;
  bool adjacent(const TreeVertex& u, const TreeVertex& v) const;

  ActionClass classify(const FPElement& h) const;
  /// Throws std::invalid_argument unless h is a nontrivial elliptic element.
  TreeVertex fixed_vertex(const FPElement& h) const;
  /// Throws std::invalid_argument unless h is hyperbolic.
  std::size_t translation_length(const FPElement& h) const;

  /// Window of the axis of h around the translate of G_1 it contains:
  /// geodesics through h0^t G_1, t = -copies..copies, for h = g h0 g^-1,
  /// translated by g. 2 * copies * tr(h) + 1 vertices.
  std::vector<TreeVertex> axis_segment(const FPElement& h, std::size_t copies) const;
  /// Edges shared by the two axis windows of the given radius.
  std::size_t axis_overlap_edges(const FPElement& u, const FPElement& v, std::size_t radius) const;

  /// "<word>.<side-name>", with optional spaces around the final dot.
  TreeVertex parse_vertex(std::string_view text) const;
  std::string format_vertex(const TreeVertex& v) const;

 private:
  std::shared_ptr<const FreeProductGroup> group_;
};

}  // namespace noneq
