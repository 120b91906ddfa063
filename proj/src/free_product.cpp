#include "noneq/free_product.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace noneq {

bool operator==(const NestedElement& a, const NestedElement& b) {
  if (a.value == b.value) return true;
  if (!a.value || !b.value) return false;
  return *a.value == *b.value;
}

std::strong_ordering operator<=>(const NestedElement& a, const NestedElement& b) {
  if (!a.value || !b.value) return static_cast<bool>(a.value) <=> static_cast<bool>(b.value);
  return *a.value <=> *b.value;
}

FactorElement FactorGroup::power(const FactorElement& a, std::int64_t n) const {
  FactorElement base = n < 0 ? invert(a) : a;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  FactorElement result = identity();
  while (e > 0) {
    if (e & 1U) result = multiply(result, base);
    e >>= 1U;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

// ---------------------------------------------------------------------------
// TableGroup

TableGroup::TableGroup(std::string name, std::vector<std::string> element_names,
                       std::vector<std::vector<std::size_t>> mul, std::vector<std::size_t> inv, std::size_t identity)
    : name_(std::move(name)), names_(std::move(element_names)), mul_(std::move(mul)), inv_(std::move(inv)),
      identity_(identity) {
  const std::size_t n = names_.size();
  if (n == 0) throw std::invalid_argument(name_ + ": a group needs at least one element");
  if (name_.empty()) throw std::invalid_argument("table group needs a name");
  if (name_.find_first_of(" \t\n*^") != std::string::npos) throw std::invalid_argument("bad group name '" + name_ + "'");
  std::set<std::string> distinct;
  for (const auto& e : names_) {
    if (e.empty() || e.find_first_of(" \t\n*^") != std::string::npos) {
      throw std::invalid_argument(name_ + ": bad element name '" + e + "'");
    }
    if (!distinct.insert(e).second) throw std::invalid_argument(name_ + ": duplicate element '" + e + "'");
  }
  if (mul_.size() != n || inv_.size() != n || identity_ >= n) {
    throw std::invalid_argument(name_ + ": table dimensions do not match the element list");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (mul_[a].size() != n) throw std::invalid_argument(name_ + ": mul is not square");
    std::vector<bool> row(n), column(n);
    for (std::size_t b = 0; b < n; ++b) {
      if (mul_[a][b] >= n) throw std::invalid_argument(name_ + ": mul entry out of range");
      row[mul_[a][b]] = true;
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (mul_[b].size() != n || mul_[b][a] >= n) throw std::invalid_argument(name_ + ": mul is not square");
      column[mul_[b][a]] = true;
    }
    if (std::count(row.begin(), row.end(), false) || std::count(column.begin(), column.end(), false)) {
      throw std::invalid_argument(name_ + ": mul is not a Latin square");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (mul_[identity_][a] != a || mul_[a][identity_] != a) {
      throw std::invalid_argument(name_ + ": identity is not neutral");
    }
    if (inv_[a] >= n || mul_[a][inv_[a]] != identity_ || mul_[inv_[a]][a] != identity_) {
      throw std::invalid_argument(name_ + ": inv is inconsistent with mul");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) throw std::invalid_argument(name_ + ": mul is not associative");
      }
    }
  }
}

std::size_t TableGroup::index(const FactorElement& a) const {
  const auto* i = std::get_if<std::size_t>(&a);
  if (!i || *i >= names_.size()) throw std::invalid_argument(name_ + ": element does not belong to this factor");
  return *i;
}

FactorElement TableGroup::multiply(const FactorElement& a, const FactorElement& b) const {
  return mul_[index(a)][index(b)];
}

FactorElement TableGroup::invert(const FactorElement& a) const { return inv_[index(a)]; }

bool TableGroup::is_identity(const FactorElement& a) const { return index(a) == identity_; }

bool TableGroup::holds(const FactorElement& a) const {
  const auto* i = std::get_if<std::size_t>(&a);
  return i && *i < names_.size();
}

std::optional<std::vector<FactorElement>> TableGroup::elements() const {
  std::vector<FactorElement> all;
  for (std::size_t i = 0; i < names_.size(); ++i) all.emplace_back(i);
  return all;
}

std::vector<FactorElement> TableGroup::roots(const FactorElement& a, int q) const {
  const std::size_t target = index(a);
  std::vector<FactorElement> out;
  for (std::size_t x = 0; x < names_.size(); ++x) {
    if (std::get<std::size_t>(power(x, q)) == target) out.emplace_back(x);
  }
  return out;
}

std::optional<FactorElement> TableGroup::parse_token(const WordToken& token) const {
  const std::string& t = token.name;
  if (t.size() <= name_.size() + 1 || t.compare(0, name_.size(), name_) != 0 || t[name_.size()] != '.') {
    return std::nullopt;
  }
  const std::string element = t.substr(name_.size() + 1);
  auto it = std::find(names_.begin(), names_.end(), element);
  if (it == names_.end()) {
    throw ParseError("unknown element '" + element + "' of " + name_, 1, token.column + name_.size() + 1);
  }
  return power(static_cast<std::size_t>(it - names_.begin()), token.exponent);
}

std::string TableGroup::format(const FactorElement& a) const {
  const std::size_t i = index(a);
  if (i == identity_) return "1";
  return name_ + "." + names_[i];
}

std::shared_ptr<TableGroup> cyclic_group(std::size_t n, std::string name) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  std::vector<std::size_t> inv(n);
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    inv[a] = (n - a) % n;
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  }
  return std::make_shared<TableGroup>(std::move(name), std::move(names), std::move(mul), std::move(inv), 0);
}

// ---------------------------------------------------------------------------
// FreeFactor

FreeFactor::FreeFactor(std::optional<int> rank, std::string prefix) : rank_(rank), prefix_(std::move(prefix)) {
  if (rank_ && *rank_ < 0) throw std::invalid_argument("free factor rank must be >= 0");
  if (prefix_.empty() || prefix_.find_first_of(" \t\n*^.0123456789") != std::string::npos) {
    throw std::invalid_argument("bad free factor prefix '" + prefix_ + "'");
  }
}

void FreeFactor::touch(int index) const {
  if (rank_ && index > *rank_) {
    throw std::invalid_argument(prefix_ + std::to_string(index) + " exceeds rank " + std::to_string(*rank_));
  }
  int seen = in_use_.load(std::memory_order_relaxed);
  while (seen < index && !in_use_.compare_exchange_weak(seen, index, std::memory_order_relaxed)) {
  }
}

FreeWord FreeFactor::generator(int index, std::int64_t exponent) const {
  touch(index);
  return FreeWord::generator(index, exponent);
}

namespace {

const FreeWord& as_word(const FactorElement& a) {
  const auto* w = std::get_if<FreeWord>(&a);
  if (!w) throw std::invalid_argument("element does not belong to a free factor");
  return *w;
}

}  // namespace

FactorElement FreeFactor::multiply(const FactorElement& a, const FactorElement& b) const {
  return as_word(a) * as_word(b);
}

FactorElement FreeFactor::invert(const FactorElement& a) const { return noneq::invert(as_word(a)); }

bool FreeFactor::is_identity(const FactorElement& a) const { return as_word(a).is_identity(); }

bool FreeFactor::holds(const FactorElement& a) const {
  const auto* w = std::get_if<FreeWord>(&a);
  return w && (!rank_ || w->max_generator() <= *rank_);
}

std::vector<FactorElement> FreeFactor::roots(const FactorElement& a, int q) const {
  if (auto r = qth_root(as_word(a), q)) return {*r};
  return {};
}

std::optional<FactorElement> FreeFactor::parse_token(const WordToken& token) const {
  std::string_view t = token.name;
  if (t.size() <= prefix_.size() || t.substr(0, prefix_.size()) != prefix_) return std::nullopt;
  t.remove_prefix(prefix_.size());
  int index = 0;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), index);
  if (ec != std::errc{} || end != t.data() + t.size()) return std::nullopt;
  if (index < 1) throw ParseError("generator index must be positive", 1, token.column);
  if (rank_ && index > *rank_) {
    throw ParseError(token.name + " exceeds rank " + std::to_string(*rank_), 1, token.column);
  }
  return generator(index, token.exponent);
}

std::string FreeFactor::format(const FactorElement& a) const { return to_string(as_word(a), prefix_); }

// ---------------------------------------------------------------------------
// CompositeFactor

CompositeFactor::CompositeFactor(std::shared_ptr<const FreeProductGroup> group) : group_(std::move(group)) {
  if (!group_) throw std::invalid_argument("composite factor needs a group");
}

FactorElement CompositeFactor::wrap(FPElement g) const {
  return NestedElement{std::make_shared<const FPElement>(std::move(g))};
}

const FPElement& CompositeFactor::unwrap(const FactorElement& a) const {
  const auto* n = std::get_if<NestedElement>(&a);
  if (!n || !n->value) throw std::invalid_argument("element does not belong to a composite factor");
  return *n->value;
}

const std::string& CompositeFactor::name() const { return group_->name(); }
FactorElement CompositeFactor::identity() const { return wrap({}); }

FactorElement CompositeFactor::multiply(const FactorElement& a, const FactorElement& b) const {
  return wrap(group_->multiply(unwrap(a), unwrap(b)));
}

FactorElement CompositeFactor::invert(const FactorElement& a) const { return wrap(group_->invert(unwrap(a))); }

bool CompositeFactor::is_identity(const FactorElement& a) const { return unwrap(a).is_identity(); }

bool CompositeFactor::holds(const FactorElement& a) const {
  const auto* n = std::get_if<NestedElement>(&a);
  if (!n || !n->value) return false;
  try {
    group_->validate(*n->value);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

std::vector<FactorElement> CompositeFactor::roots(const FactorElement& a, int q) const {
  std::vector<FactorElement> out;
  for (auto& r : group_->qth_roots(unwrap(a), q)) out.push_back(wrap(std::move(r)));
  return out;
}

std::optional<FactorElement> CompositeFactor::parse_token(const WordToken& token) const {
  if (auto g = group_->parse_token(token)) return wrap(std::move(*g));
  return std::nullopt;
}

std::string CompositeFactor::format(const FactorElement& a) const { return group_->format(unwrap(a)); }

// ---------------------------------------------------------------------------
// FreeProductGroup

FreeProductGroup::FreeProductGroup(std::vector<std::shared_ptr<const FactorGroup>> factors,
                                   std::vector<std::string> side_names, std::string name)
    : factors_(std::move(factors)), side_names_(std::move(side_names)), name_(std::move(name)) {
  if (factors_.empty()) throw std::invalid_argument("a free product needs at least one factor");
  for (const auto& f : factors_) {
    if (!f) throw std::invalid_argument("null factor");
  }
  if (side_names_.empty()) {
    for (std::size_t i = 0; i < factors_.size(); ++i) side_names_.push_back("G" + std::to_string(i + 1));
  }
  if (side_names_.size() != factors_.size()) throw std::invalid_argument("one side name per factor");
  if (name_.empty()) {
    for (std::size_t i = 0; i < factors_.size(); ++i) name_ += (i ? "*" : "") + factors_[i]->name();
  }
}

FPElement FreeProductGroup::syllable(std::size_t i, FactorElement x) const {
  validate_element(i, x);
  if (factors_[i]->is_identity(x)) return {};
  return FPElement({Syllable{i, std::move(x)}});
}

void FreeProductGroup::validate_element(std::size_t factor, const FactorElement& x) const {
  if (factor >= factors_.size()) throw std::invalid_argument("factor index out of range for " + name_);
  if (!factors_[factor]->holds(x)) throw std::invalid_argument("element does not belong to factor " + factors_[factor]->name());
}

void FreeProductGroup::validate(const FPElement& g) const {
  const auto& s = g.syllables();
  for (std::size_t i = 0; i < s.size(); ++i) {
    validate_element(s[i].factor, s[i].element);
    if (factors_[s[i].factor]->is_identity(s[i].element)) throw std::invalid_argument("trivial syllable in normal form");
    if (i > 0 && s[i - 1].factor == s[i].factor) throw std::invalid_argument("adjacent syllables share a factor");
  }
}

FPElement FreeProductGroup::multiply(const FPElement& a, const FPElement& b) const {
  validate(a);
  validate(b);
  std::vector<Syllable> out = a.syllables();
  for (const Syllable& s : b.syllables()) {
    if (!out.empty() && out.back().factor == s.factor) {
      const FactorGroup& f = *factors_[s.factor];
      FactorElement merged = f.multiply(out.back().element, s.element);
      out.pop_back();
      if (!f.is_identity(merged)) out.push_back({s.factor, std::move(merged)});
    } else {
      out.push_back(s);
    }
  }
  return FPElement(std::move(out));
}

FPElement FreeProductGroup::invert(const FPElement& a) const {
  validate(a);
  std::vector<Syllable> out;
  for (auto it = a.syllables().rbegin(); it != a.syllables().rend(); ++it) {
    out.push_back({it->factor, factors_[it->factor]->invert(it->element)});
  }
  return FPElement(std::move(out));
}

FPElement FreeProductGroup::power(const FPElement& a, std::int64_t n) const {
  if (n == 0 || a.is_identity()) return {};
  if (n < 0) return power(invert(a), -n);
  const auto [conj, core] = cyclic_split(a);
  FPElement body;
  if (core.syl() == 1) {
    const Syllable& s = core.front();
    body = syllable(s.factor, factors_[s.factor]->power(s.element, n));
  } else {
    // A cyclically reduced core of syllable length >= 2 concatenates freely.
    std::vector<Syllable> out;
    out.reserve(core.syl() * static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) out.insert(out.end(), core.syllables().begin(), core.syllables().end());
    body = FPElement(std::move(out));
  }
  return multiply(multiply(conj, body), invert(conj));
}

bool FreeProductGroup::commutes(const FPElement& a, const FPElement& b) const {
  return multiply(a, b) == multiply(b, a);
}

FPCyclicSplit FreeProductGroup::cyclic_split(const FPElement& a) const {
  validate(a);
  const auto& s = a.syllables();
  std::size_t lo = 0;
  std::size_t hi = s.size();  // exclusive
  std::vector<Syllable> conj;
  while (hi - lo >= 2 && s[lo].factor == s[hi - 1].factor) {
    const FactorGroup& f = *factors_[s[lo].factor];
    FactorElement merged = f.multiply(s[hi - 1].element, s[lo].element);
    conj.push_back(s[lo]);
    if (f.is_identity(merged)) {
      ++lo;
      --hi;
      continue;
    }
    std::vector<Syllable> core(s.begin() + static_cast<std::ptrdiff_t>(lo + 1), s.begin() + static_cast<std::ptrdiff_t>(hi - 1));
    core.push_back({s[lo].factor, std::move(merged)});
    return {FPElement(std::move(conj)), FPElement(std::move(core))};
  }
  return {FPElement(std::move(conj)),
          FPElement(std::vector<Syllable>(s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi)))};
}

std::vector<FPElement> FreeProductGroup::torsion_roots(int q) const {
  std::vector<FPElement> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (auto& x : factors_[i]->roots(factors_[i]->identity(), q)) {
      if (!factors_[i]->is_identity(x)) out.push_back(syllable(i, std::move(x)));
    }
  }
  return out;
}

std::vector<FPElement> FreeProductGroup::qth_roots(const FPElement& z, int q) const {
  if (q < 1) throw std::invalid_argument("root degree must be >= 1");
  const auto [conj, core] = cyclic_split(z);
  const FPElement conj_inv = invert(conj);
  std::vector<FPElement> local;
  if (core.is_identity()) {
    if (!torsion_roots(q).empty()) throw InfiniteRootSet("identity has infinitely many roots of this degree");
    local.push_back({});
  } else if (core.syl() == 1) {
    // Hyperbolic elements have hyperbolic powers and a conjugated elliptic
    // root would leave a longer normal form, so roots stay in the factor.
    const Syllable& s = core.front();
    for (auto& x : factors_[s.factor]->roots(s.element, q)) local.push_back(syllable(s.factor, std::move(x)));
  } else {
    // A root of a cyclically reduced hyperbolic element is cyclically reduced
    // and its power is plain concatenation.
    const std::size_t n = core.syl();
    const std::size_t qq = static_cast<std::size_t>(q);
    if (n % qq == 0) {
      const std::size_t period = n / qq;
      const auto& s = core.syllables();
      bool periodic = true;
      for (std::size_t k = period; k < n && periodic; ++k) periodic = s[k] == s[k % period];
      if (periodic && (period == 1 || s[0].factor != s[period - 1].factor)) {
        local.push_back(FPElement(std::vector<Syllable>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(period))));
      }
    }
  }
  std::vector<FPElement> out;
  for (const auto& w : local) out.push_back(multiply(multiply(conj, w), conj_inv));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<FPElement> FreeProductGroup::parse_token(const WordToken& token) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (auto x = factors_[i]->parse_token(token)) return syllable(i, std::move(*x));
  }
  return std::nullopt;
}

FPElement FreeProductGroup::parse(std::string_view text) const {
  FPElement out;
  for (const WordToken& token : tokenize_word(text)) {
    auto g = parse_token(token);
    if (!g) throw ParseError("'" + token.name + "' names no element of " + name_, 1, token.column);
    out = multiply(out, *g);
  }
  return out;
}

std::string FreeProductGroup::format(const FPElement& g) const {
  if (g.is_identity()) return "1";
  std::string out;
  for (const Syllable& s : g.syllables()) {
    if (!out.empty()) out += ' ';
    out += factors_[s.factor]->format(s.element);
  }
  return out;
}

FPElement flatten(const FreeProductGroup& nested, const FPElement& g) {
  std::vector<std::size_t> offset;
  std::size_t next = 0;
  for (std::size_t i = 0; i < nested.factor_count(); ++i) {
    offset.push_back(next);
    const auto* composite = dynamic_cast<const CompositeFactor*>(&nested.factor(i));
    next += composite ? composite->group().factor_count() : 1;
  }
  std::vector<Syllable> out;
  for (const Syllable& s : g.syllables()) {
    const auto* composite = dynamic_cast<const CompositeFactor*>(&nested.factor(s.factor));
    if (!composite) {
      out.push_back({offset[s.factor], s.element});
      continue;
    }
    for (const Syllable& inner : composite->unwrap(s.element).syllables()) {
      out.push_back({offset[s.factor] + inner.factor, inner.element});
    }
  }
  return FPElement(std::move(out));
}

}  // namespace noneq
