#include "noneq/witness.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "noneq/stallings.hpp"

namespace noneq {

WitnessMatrices build_matrices(int n) {
  if (n < 1) throw std::invalid_argument("matrix size must be >= 1");
  WitnessMatrices m;
  m.n = n;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      m.a.push_back(FreeWord::generator(i + j, kPhiFifth) * FreeWord::generator(i));
      m.b.push_back(FreeWord::generator(i, -1) * FreeWord::generator(i + j, -kPhiFourth));
    }
  }
  return m;
}

const char* to_string(Certificate::Kind kind) {
  switch (kind) {
    case Certificate::Kind::satisfied:
      return "satisfied";
    case Certificate::Kind::falsified:
      return "falsified";
    case Certificate::Kind::undecided:
      return "undecided";
  }
  return "?";
}

namespace {

// Calls visit on every nontrivial reduced word over the letters, shortest
// first, each length in lexicographic order of letter positions. Stops early
// when visit returns true.
bool for_each_reduced_word(const std::vector<int>& letters, std::size_t max_length,
                           const std::function<bool(const FreeWord&)>& visit) {
  std::vector<int> word;
  std::function<bool(std::size_t)> extend = [&](std::size_t remaining) {
    if (remaining == 0) return visit(FreeWord::from_letters(word));
    for (int x : letters) {
      if (!word.empty() && word.back() == -x) continue;
      word.push_back(x);
      const bool stop = extend(remaining - 1);
      word.pop_back();
      if (stop) return true;
    }
    return false;
  };
  for (std::size_t len = 1; len <= max_length; ++len) {
    if (extend(len)) return true;
  }
  return false;
}

}  // namespace

Certificate decide_phi_ne(const FreeWord& a, const FreeWord& b, std::size_t search_bound) {
  const FreeWord w = a * b;
  Certificate cert;
  PrimitivityVerdict verdict = primitivity_in_ambient(w);
  if (verdict.primitive) {
    cert.kind = Certificate::Kind::satisfied;
    cert.trace = std::move(verdict.trace);
    return cert;
  }
  const std::size_t bound = search_bound == 0 ? w.length() : search_bound;
  std::vector<int> letters;
  for (int g : w.support()) {
    letters.push_back(g);
    letters.push_back(-g);
  }
  const bool found = for_each_reduced_word(letters, bound, [&](const FreeWord& u) {
    const FreeWord z = power(u, -kPhiFifth) * w;
    const auto v = qth_root(z, kPhiFourth);
    if (!v || commutes(u, *v)) return false;
    cert.kind = Certificate::Kind::falsified;
    cert.u = u;
    cert.v = *v;
    return true;
  });
  if (!found) {
    cert.kind = Certificate::Kind::undecided;
    cert.bound = bound;
  }
  return cert;
}

bool check_certificate(const FreeWord& a, const FreeWord& b, const Certificate& c) {
  const FreeWord w = a * b;
  switch (c.kind) {
    case Certificate::Kind::satisfied:
      return replay(w, c.trace).length() == 1;
    case Certificate::Kind::falsified:
      return power(c.u, kPhiFifth) * power(c.v, kPhiFourth) == w && !commutes(c.u, c.v);
    case Certificate::Kind::undecided:
      return false;
  }
  return false;
}

std::vector<const CellResult*> WitnessReport::undecided() const {
  std::vector<const CellResult*> out;
  for (const auto& c : cells) {
    if (c.certificate.kind == Certificate::Kind::undecided) out.push_back(&c);
  }
  return out;
}

WitnessReport evaluate_matrix(int n, std::size_t search_bound, unsigned jobs) {
  const WitnessMatrices m = build_matrices(n);
  WitnessReport report;
  report.n = n;
  report.matrix = SatMatrix(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) report.cells.push_back(CellResult{{i, j}, {k, l}, false, {}, std::nullopt, 0});
      }
    }
  }

  auto evaluate = [&](CellResult& cell) {
    const auto start = std::chrono::steady_clock::now();
    const FreeWord& a = m.A(cell.a.i, cell.a.j);
    const FreeWord& b = m.B(cell.b.i, cell.b.j);
    cell.certificate = decide_phi_ne(a, b, search_bound);
    cell.sat = cell.certificate.kind == Certificate::Kind::satisfied;
    if (cell.a.i != cell.b.i || cell.a == cell.b) {
      cell.basis_ok = verify_basis_pair(a, b, cell.a.i, cell.a.j, cell.b.i, cell.b.j);
    }
    cell.micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  };

  jobs = std::max(1U, jobs);
  if (jobs == 1) {
    for (auto& cell : report.cells) evaluate(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        for (std::size_t idx = next++; idx < report.cells.size(); idx = next++) {
          try {
            evaluate(report.cells[idx]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (const auto& cell : report.cells) report.matrix.set(cell.a, cell.b, cell.sat);
  report.pattern_ok = report.undecided().empty() && matches_pattern(report.matrix);
  return report;
}

nlohmann::json to_json(const WitnessReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json cert{{"type", to_string(c.certificate.kind)}};
    switch (c.certificate.kind) {
      case Certificate::Kind::satisfied:
        cert["trace_len"] = c.certificate.trace.size();
        break;
      case Certificate::Kind::falsified:
        cert["u"] = to_string(c.certificate.u);
        cert["v"] = to_string(c.certificate.v);
        break;
      case Certificate::Kind::undecided:
        cert["bound"] = c.certificate.bound;
        break;
    }
    nlohmann::json cell{{"a", {c.a.i, c.a.j}}, {"b", {c.b.i, c.b.j}}, {"sat", c.sat}, {"certificate", cert}};
    if (c.basis_ok) cell["basis_ok"] = *c.basis_ok;
    cell["micros"] = c.micros;
    cells.push_back(std::move(cell));
  }
  return {{"n", report.n}, {"pattern_ok", report.pattern_ok}, {"cells", std::move(cells)}};
}

std::string render_table(const WitnessReport& report) {
  std::ostringstream out;
  const int n = report.n;
  out << "phi_NE(a_ij, b_kl), n = " << n << "; rows (i,j), columns (k,l)\n";
  out << "      ";
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= n; ++l) out << ' ' << k << l;
  }
  out << '\n';
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      out << "  " << i << j << "  ";
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) out << "  " << (report.matrix.at({i, j}, {k, l}) ? '1' : '0');
      }
      out << '\n';
    }
  }
  const auto undecided = report.undecided();
  out << "undecided cells: " << undecided.size() << '\n';
  out << "pattern: " << (report.pattern_ok ? "ok" : "MISMATCH") << '\n';
  return out.str();
}

}  // namespace noneq
