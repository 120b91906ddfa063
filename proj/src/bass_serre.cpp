#include "noneq/bass_serre.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace noneq {

BassSerreTree::BassSerreTree(std::shared_ptr<const FreeProductGroup> group) : group_(std::move(group)) {
  if (!group_ || group_->factor_count() != 2) throw std::invalid_argument("a Bass-Serre tree needs exactly two factors");
}

TreeVertex BassSerreTree::canonicalize(const FPElement& g, std::size_t side) const {
  if (side > 1) throw std::invalid_argument("vertex side must be 0 or 1");
  group_->validate(g);
  std::vector<Syllable> s = g.syllables();
  if (!s.empty() && s.back().factor == side) s.pop_back();
  return {FPElement(std::move(s)), side};
}

TreeVertex BassSerreTree::act(const FPElement& h, const TreeVertex& v) const {
  return canonicalize(group_->multiply(h, v.rep), v.side);
}

namespace {

// Normal form of rep(u)^-1 rep(v), with a trailing syllable in side(v) dropped.
FPElement relative_label(const FreeProductGroup& g, const TreeVertex& u, const TreeVertex& v) {
  std::vector<Syllable> s = g.multiply(g.invert(u.rep), v.rep).syllables();
  if (!s.empty() && s.back().factor == v.side) s.pop_back();
  return FPElement(std::move(s));
}

}  // namespace

std::size_t BassSerreTree::distance(const TreeVertex& u, const TreeVertex& v) const {
  const FPElement w = relative_label(*group_, u, v);
  if (w.is_identity()) return u.side == v.side ? 0 : 1;
  return w.syl() + (w.front().factor == u.side ? 0 : 1);
}

std::vector<TreeVertex> BassSerreTree::geodesic(const TreeVertex& u, const TreeVertex& v) const {
  const FPElement w = relative_label(*group_, u, v);
  // Path from base(side(u)) to w G_side(v): one edge per syllable, plus a
  // first hop to the other base vertex when w does not start in side(u).
  std::vector<TreeVertex> local{base(u.side)};
  std::size_t side = u.side;
  std::vector<Syllable> prefix;
  for (const Syllable& s : w.syllables()) {
    if (s.factor != side) {
      side = 1 - side;
      local.push_back({FPElement(prefix), side});
    }
    prefix.push_back(s);
    side = 1 - side;
    local.push_back(canonicalize(FPElement(prefix), side));
  }
  if (side != v.side) local.push_back(canonicalize(FPElement(prefix), v.side));
  std::vector<TreeVertex> out;
  out.reserve(local.size());
  for (const auto& x : local) out.push_back(act(u.rep, x));
  return out;
}

std::vector<TreeVertex> BassSerreTree::neighbours(const TreeVertex& v) const {
  const FactorGroup& stabiliser = group_->factor(v.side);
  const auto elements = stabiliser.elements();
  if (!elements) throw std::invalid_argument("neighbours of a vertex with infinite stabiliser are not enumerable");
  std::vector<TreeVertex> out;
  for (const auto& x : *elements) {
    out.push_back(canonicalize(group_->multiply(v.rep, group_->syllable(v.side, x)), 1 - v.side));
  }
  return out;
}

bool BassSerreTree::adjacent(const TreeVertex& u, const TreeVertex& v) const { return distance(u, v) == 1; }

ActionClass BassSerreTree::classify(const FPElement& h) const {
  const auto [conj, core] = group_->cyclic_split(h);
  if (core.is_identity()) return Elliptic{};
  if (core.syl() == 1) return Elliptic{canonicalize(conj, core.front().factor)};
  return Hyperbolic{core.syl()};
}

TreeVertex BassSerreTree::fixed_vertex(const FPElement& h) const {
  const ActionClass c = classify(h);
  const auto* e = std::get_if<Elliptic>(&c);
  if (!e) throw std::invalid_argument("hyperbolic element has no fixed vertex");
  if (!e->fixed) throw std::invalid_argument("the identity fixes every vertex");
  return *e->fixed;
}

std::size_t BassSerreTree::translation_length(const FPElement& h) const {
  const ActionClass c = classify(h);
  const auto* hyp = std::get_if<Hyperbolic>(&c);
  if (!hyp) throw std::invalid_argument("elliptic element has no translation length");
  return hyp->translation;
}

std::vector<TreeVertex> BassSerreTree::axis_segment(const FPElement& h, std::size_t copies) const {
  translation_length(h);
  if (copies < 1) throw std::invalid_argument("axis window needs at least one copy");
  const auto [conj, core] = group_->cyclic_split(h);
  const auto c = static_cast<std::int64_t>(copies);
  std::vector<TreeVertex> out;
  TreeVertex from = canonicalize(group_->power(core, -c), 0);
  out.push_back(from);
  for (std::int64_t t = -c; t < c; ++t) {
    TreeVertex to = canonicalize(group_->power(core, t + 1), 0);
    auto piece = geodesic(from, to);
    out.insert(out.end(), piece.begin() + 1, piece.end());
    from = std::move(to);
  }
  for (auto& v : out) v = act(conj, v);
  return out;
}

std::size_t BassSerreTree::axis_overlap_edges(const FPElement& u, const FPElement& v, std::size_t radius) const {
  auto edges = [&](const FPElement& h) {
    const auto seg = axis_segment(h, radius);
    std::set<std::pair<TreeVertex, TreeVertex>> out;
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) out.insert(std::minmax(seg[i], seg[i + 1]));
    return out;
  };
  const auto a = edges(u);
  const auto b = edges(v);
  std::size_t shared = 0;
  for (const auto& e : a) shared += b.count(e);
  return shared;
}

TreeVertex BassSerreTree::parse_vertex(std::string_view text) const {
  const std::size_t dot = text.rfind('.');
  if (dot == std::string_view::npos) throw ParseError("vertex needs the form <word>.<side>", 1, text.size() + 1);
  std::string_view word = text.substr(0, dot);
  std::string_view side = text.substr(dot + 1);
  while (!side.empty() && side.front() == ' ') side.remove_prefix(1);
  while (!side.empty() && side.back() == ' ') side.remove_suffix(1);
  const auto& names = group_->side_names();
  auto it = std::find(names.begin(), names.end(), side);
  if (it == names.end()) throw ParseError("unknown side '" + std::string(side) + "'", 1, dot + 2);
  return canonicalize(group_->parse(word), static_cast<std::size_t>(it - names.begin()));
}

std::string BassSerreTree::format_vertex(const TreeVertex& v) const {
  return group_->format(v.rep) + "." + group_->side_names().at(v.side);
}

}  // namespace noneq
