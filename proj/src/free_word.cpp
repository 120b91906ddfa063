#include "noneq/free_word.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include "noneq/word_parser.hpp"

namespace noneq {

Generator::Generator(int index) : index_(index) {
  if (index < 1) throw std::invalid_argument("generator index must be >= 1");
}

namespace {

int sign(std::int64_t x) { return x < 0 ? -1 : 1; }

// Appends one run to an already reduced run list, cancelling as needed.
void push_run(std::vector<FreeWord::Run>& runs, FreeWord::Run run) {
  if (run.exponent == 0) return;
  if (!runs.empty() && runs.back().generator == run.generator) {
    runs.back().exponent += run.exponent;
    if (runs.back().exponent == 0) runs.pop_back();
    return;
  }
  runs.push_back(run);
}

}  // namespace

FreeWord FreeWord::generator(Generator g, std::int64_t exponent) {
  FreeWord w;
  if (exponent != 0) w.runs_.push_back({g.index(), exponent});
  return w;
}

FreeWord FreeWord::from_runs(std::span<const Run> runs) {
  FreeWord w;
  for (const Run& r : runs) {
    if (r.generator < 1) throw std::invalid_argument("generator index must be >= 1");
    push_run(w.runs_, r);
  }
  return w;
}

FreeWord FreeWord::from_letters(std::span<const int> letters) {
  FreeWord w;
  for (int x : letters) {
    if (x == 0) throw std::invalid_argument("letter 0 is not a generator");
    push_run(w.runs_, {std::abs(x), sign(x)});
  }
  return w;
}

std::vector<int> FreeWord::letters() const {
  std::vector<int> out;
  out.reserve(length());
  for (const Run& r : runs_) {
    const int letter = sign(r.exponent) * r.generator;
    for (std::int64_t k = 0; k < std::abs(r.exponent); ++k) out.push_back(letter);
  }
  return out;
}

std::size_t FreeWord::length() const noexcept {
  std::size_t n = 0;
  for (const Run& r : runs_) n += static_cast<std::size_t>(std::abs(r.exponent));
  return n;
}

int FreeWord::max_generator() const noexcept {
  int m = 0;
  for (const Run& r : runs_) m = std::max(m, r.generator);
  return m;
}

std::vector<int> FreeWord::support() const {
  std::vector<int> s;
  for (const Run& r : runs_) s.push_back(r.generator);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

int FreeWord::first_letter() const {
  if (runs_.empty()) throw std::logic_error("identity has no letters");
  return sign(runs_.front().exponent) * runs_.front().generator;
}

int FreeWord::last_letter() const {
  if (runs_.empty()) throw std::logic_error("identity has no letters");
  return sign(runs_.back().exponent) * runs_.back().generator;
}

FreeWord multiply(const FreeWord& a, const FreeWord& b) {
  std::vector<FreeWord::Run> runs(a.runs().begin(), a.runs().end());
  for (const FreeWord::Run& r : b.runs()) push_run(runs, r);
  return FreeWord::from_runs(runs);
}

FreeWord invert(const FreeWord& a) {
  std::vector<FreeWord::Run> runs(a.runs().rbegin(), a.runs().rend());
  for (auto& r : runs) r.exponent = -r.exponent;
  return FreeWord::from_runs(runs);
}

CyclicSplit cyclic_split(const FreeWord& a) {
  std::vector<FreeWord::Run> runs(a.runs().begin(), a.runs().end());
  if (runs.empty()) return {};
  std::vector<FreeWord::Run> conjugator;
  std::ptrdiff_t lo = 0;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(runs.size()) - 1;
  while (lo < hi && runs[lo].generator == runs[hi].generator &&
         sign(runs[lo].exponent) != sign(runs[hi].exponent)) {
    const std::int64_t strip = std::min(std::abs(runs[lo].exponent), std::abs(runs[hi].exponent));
    conjugator.push_back({runs[lo].generator, sign(runs[lo].exponent) * strip});
    runs[lo].exponent -= sign(runs[lo].exponent) * strip;
    runs[hi].exponent -= sign(runs[hi].exponent) * strip;
    if (runs[lo].exponent == 0) ++lo;
    if (runs[hi].exponent == 0) --hi;
  }
  std::vector<FreeWord::Run> core;
  for (std::ptrdiff_t k = lo; k <= hi; ++k) core.push_back(runs[k]);
  return {FreeWord::from_runs(conjugator), FreeWord::from_runs(core)};
}

std::size_t cyclic_length(const FreeWord& a) { return cyclic_split(a).core.length(); }

FreeWord power(const FreeWord& a, std::int64_t n) {
  if (n == 0 || a.is_identity()) return {};
  if (n < 0) return power(invert(a), -n);
  auto [conj, core] = cyclic_split(a);
  FreeWord body;
  if (core.runs().size() == 1) {
    const auto& r = core.runs().front();
    body = FreeWord::generator(r.generator, r.exponent * n);
  } else {
    std::vector<FreeWord::Run> runs;
    runs.reserve(core.runs().size() * static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) runs.insert(runs.end(), core.runs().begin(), core.runs().end());
    body = FreeWord::from_runs(runs);
  }
  return conj * body * invert(conj);
}

bool commutes(const FreeWord& a, const FreeWord& b) { return a * b == b * a; }

std::optional<FreeWord> qth_root(const FreeWord& z, int q) {
  if (q < 1) throw std::invalid_argument("root degree must be >= 1");
  auto [conj, core] = cyclic_split(z);
  if (core.is_identity()) return FreeWord{};
  const std::vector<int> letters = core.letters();
  if (letters.size() % static_cast<std::size_t>(q) != 0) return std::nullopt;
  const std::size_t period = letters.size() / static_cast<std::size_t>(q);
  for (std::size_t k = period; k < letters.size(); ++k) {
    if (letters[k] != letters[k % period]) return std::nullopt;
  }
  const FreeWord root = FreeWord::from_letters(std::span(letters).first(period));
  return conj * root * invert(conj);
}

std::string to_string(const FreeWord& w, std::string_view prefix) {
  if (w.is_identity()) return "1";
  std::string out;
  for (const auto& r : w.runs()) {
    if (!out.empty()) out += ' ';
    out += prefix;
    out += std::to_string(r.generator);
    if (r.exponent != 1) {
      out += '^';
      out += std::to_string(r.exponent);
    }
  }
  return out;
}

FreeWord parse_free_word(std::string_view text, std::string_view prefix) {
  std::vector<FreeWord::Run> runs;
  for (const WordToken& token : tokenize_word(text)) {
    std::string_view name = token.name;
    if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) {
      throw ParseError("unknown generator '" + token.name + "'", 1, token.column);
    }
    name.remove_prefix(prefix.size());
    int index = 0;
    auto [end, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
    if (ec != std::errc{} || end != name.data() + name.size() || index < 1) {
      throw ParseError("generator index must be a positive integer in '" + token.name + "'", 1, token.column);
    }
    runs.push_back({index, token.exponent});
  }
  return FreeWord::from_runs(runs);
}

}  // namespace noneq
