#include "noneq/search.hpp"

#include <functional>

namespace noneq {

ConjugatorStrip strip_common_conjugator(const FreeProductGroup& g, const FPElement& u, const FPElement& v) {
  std::vector<Syllable> us = u.syllables();
  std::vector<Syllable> vs = v.syllables();
  std::vector<Syllable> gamma;
  auto wrapped_by = [&](const std::vector<Syllable>& s, const Syllable& c) {
    if (s.size() < 3 || !(s.front() == c)) return false;
    return s.back().factor == c.factor && g.factor(c.factor).invert(c.element) == s.back().element;
  };
  while (!us.empty() && wrapped_by(us, us.front()) && wrapped_by(vs, us.front())) {
    gamma.push_back(us.front());
    us = std::vector<Syllable>(us.begin() + 1, us.end() - 1);
    vs = std::vector<Syllable>(vs.begin() + 1, vs.end() - 1);
  }
  return {FPElement(std::move(us)), FPElement(std::move(vs)), FPElement(std::move(gamma))};
}

std::vector<FPElement> enumerate_normal_forms(const FreeProductGroup& g, std::span<const FPElement> alphabet,
                                              std::size_t max_syl) {
  std::vector<FPElement> out{FPElement{}};
  std::vector<Syllable> word;
  std::function<void(std::size_t)> extend = [&](std::size_t remaining) {
    if (remaining == 0) {
      out.emplace_back(word);
      return;
    }
    for (const FPElement& x : alphabet) {
      const Syllable& s = x.front();
      if (!word.empty() && word.back().factor == s.factor) continue;
      word.push_back(s);
      extend(remaining - 1);
      word.pop_back();
    }
  };
  for (const FPElement& x : alphabet) {
    g.validate(x);
    if (x.syl() != 1) throw std::invalid_argument("alphabet elements must be single nontrivial syllables");
  }
  for (std::size_t syl = 1; syl <= max_syl; ++syl) extend(syl);
  return out;
}

std::optional<PowerDecomposition> search_power_decomposition(const FreeProductGroup& g, const FPElement& target, int p,
                                                             int q, std::size_t syl_bound,
                                                             std::span<const FPElement> alphabet) {
  if (alphabet.empty()) throw std::invalid_argument("search alphabet is empty");
  if (p < 1 || q < 1) throw std::invalid_argument("exponents must be >= 1");
  const std::vector<FPElement> candidates = enumerate_normal_forms(g, alphabet, syl_bound);
  for (const FPElement& u : candidates) {
    if (u.is_identity()) continue;  // commutes with every v
    const FPElement z = g.multiply(g.power(u, -p), target);
    std::vector<FPElement> roots;
    try {
      roots = g.qth_roots(z, q);
    } catch (const InfiniteRootSet&) {
      // z is trivial; its roots are 1 and the conjugates of torsion x with x^q = 1.
      roots.push_back({});
      for (const FPElement& x : g.torsion_roots(q)) {
        for (const FPElement& c : candidates) roots.push_back(g.multiply(g.multiply(c, x), g.invert(c)));
      }
    }
    for (const FPElement& v : roots) {
      if (!g.commutes(u, v)) return PowerDecomposition{u, v};
    }
  }
  return std::nullopt;
}

bool check_decomposition(const FreeProductGroup& g, const FPElement& target, int p, int q,
                         const PowerDecomposition& d) {
  return g.multiply(g.power(d.u, p), g.power(d.v, q)) == target && !g.commutes(d.u, d.v);
}

}  // namespace noneq
