#include "noneq/criterion.hpp"

#include <stdexcept>

namespace noneq {

SatMatrix::SatMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("matrix size must be >= 1");
  const auto side = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  cells_.assign(side * side, 0);
}

std::size_t SatMatrix::offset(PairIndex a, PairIndex b) const {
  for (int x : {a.i, a.j, b.i, b.j}) {
    if (x < 1 || x > n_) throw std::out_of_range("pair index out of range");
  }
  const auto n = static_cast<std::size_t>(n_);
  const std::size_t row = static_cast<std::size_t>(a.i - 1) * n + static_cast<std::size_t>(a.j - 1);
  const std::size_t col = static_cast<std::size_t>(b.i - 1) * n + static_cast<std::size_t>(b.j - 1);
  return row * n * n + col;
}

BoolRows SatMatrix::rows() const {
  const auto side = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  BoolRows out(side, std::vector<bool>(side));
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) out[r][c] = cells_[r * side + c] != 0;
  }
  return out;
}

SatMatrix expected_pattern(int n) {
  SatMatrix m(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) m.set({i, j}, {k, l}, i != k || j == l);
      }
    }
  }
  return m;
}

bool matches_pattern(const SatMatrix& m) { return m == expected_pattern(m.n()); }

bool check_order_witness(const BoolRows& rows) {
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw std::invalid_argument("order witness must be square");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i][i]) return false;
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (!rows[i][j]) return false;
    }
  }
  return true;
}

BoolRows extract_noneq_row(const SatMatrix& m, int i0) {
  if (i0 < 1 || i0 > m.n()) throw std::invalid_argument("row index out of range");
  if (!matches_pattern(m)) throw std::invalid_argument("matrix does not match the pattern");
  const auto n = static_cast<std::size_t>(m.n());
  BoolRows slice(n, std::vector<bool>(n));
  for (int j = 1; j <= m.n(); ++j) {
    for (int l = 1; l <= m.n(); ++l) {
      slice[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(l - 1)] = !m.at({i0, j}, {i0, l});
    }
  }
  return slice;
}

nlohmann::json to_json(const SatMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : m.rows()) {
    nlohmann::json row = nlohmann::json::array();
    for (bool b : r) row.push_back(b);
    rows.push_back(std::move(row));
  }
  return {{"n", m.n()}, {"rows", std::move(rows)}};
}

namespace {

PairIndex pair_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw std::invalid_argument("pair index must be [i, j]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

SatMatrix sat_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw std::invalid_argument("SatMatrix JSON needs an integer \"n\"");
  }
  SatMatrix m(j["n"].get<int>());
  const auto side = static_cast<std::size_t>(m.n()) * static_cast<std::size_t>(m.n());
  if (j.contains("rows")) {
    const auto& rows = j["rows"];
    if (!rows.is_array() || rows.size() != side) throw std::invalid_argument("\"rows\" must have n^2 rows");
    for (std::size_t r = 0; r < side; ++r) {
      if (!rows[r].is_array() || rows[r].size() != side) throw std::invalid_argument("\"rows\" must have n^2 columns");
      for (std::size_t c = 0; c < side; ++c) {
        if (!rows[r][c].is_boolean()) throw std::invalid_argument("\"rows\" entries must be booleans");
        const auto n = static_cast<int>(m.n());
        m.set({static_cast<int>(r) / n + 1, static_cast<int>(r) % n + 1},
              {static_cast<int>(c) / n + 1, static_cast<int>(c) % n + 1}, rows[r][c].get<bool>());
      }
    }
    return m;
  }
  if (!j.contains("cells") || !j["cells"].is_array()) throw std::invalid_argument("SatMatrix JSON needs \"rows\" or \"cells\"");
  std::vector<bool> seen(side * side);
  for (const auto& cell : j["cells"]) {
    if (!cell.is_array() || cell.size() != 3 || !cell[2].is_boolean()) {
      throw std::invalid_argument("cells entries must be [[i,j],[k,l],bool]");
    }
    const PairIndex a = pair_from_json(cell[0]);
    const PairIndex b = pair_from_json(cell[1]);
    if (a.i < 1 || a.j < 1 || b.i < 1 || b.j < 1 || a.i > m.n() || a.j > m.n() || b.i > m.n() || b.j > m.n()) {
      throw std::invalid_argument("cell index out of range");
    }
    const auto n = static_cast<std::size_t>(m.n());
    const std::size_t key = (static_cast<std::size_t>(a.i - 1) * n + static_cast<std::size_t>(a.j - 1)) * side +
                            static_cast<std::size_t>(b.i - 1) * n + static_cast<std::size_t>(b.j - 1);
    if (seen[key]) throw std::invalid_argument("duplicate cell");
    seen[key] = true;
    m.set(a, b, cell[2].get<bool>());
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("cells must cover every ((i,j),(k,l))");
  }
  return m;
}

}  // namespace noneq
