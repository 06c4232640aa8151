#include "fermatci/linalg.hpp"

#include <utility>

#include "fermatci/errors.hpp"

namespace fermatci {

namespace {

std::size_t check_rectangular(const RatMatrix& m) {
  if (m.empty()) return 0;
  std::size_t cols = m.front().size();
  for (const auto& row : m) {
    if (row.size() != cols) throw StructuralError("ragged matrix");
  }
  if (cols > 0) {
    const RatFunc& ref = m.front().front();
    for (const auto& row : m) {
      for (const RatFunc& x : row) {
        if (!(x.field() == ref.field()) || x.nvars() != ref.nvars()) {
          throw StructuralError("matrix entries from different fields");
        }
      }
    }
  }
  return cols;
}

MultiPoly exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw ArithmeticError("internal: Bareiss step was not an exact division");
  return *q;
}

std::vector<MultiPoly> clear_row(const std::vector<RatFunc>& row) {
  MultiPoly lcm = row.front().den();
  for (const RatFunc& x : row) {
    if (x.den().is_one() || x.is_zero()) continue;
    MultiPoly g = gcd(lcm, x.den());
    lcm = lcm * exact(x.den(), g);
  }
  std::vector<MultiPoly> out;
  out.reserve(row.size());
  for (const RatFunc& x : row) out.push_back(x.num() * exact(lcm, x.den()));
  return out;
}

}  // namespace

std::size_t rank_over_field(const RatMatrix& m) {
  const std::size_t cols = check_rectangular(m);
  const std::size_t rows = m.size();
  if (rows == 0 || cols == 0) return 0;

  std::vector<std::vector<MultiPoly>> a;
  a.reserve(rows);
  for (const auto& row : m) a.push_back(clear_row(row));

  const PrimeField f = m.front().front().field();
  const std::size_t nv = m.front().front().nvars();
  MultiPoly prev = MultiPoly::constant(f, nv, 1);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::size_t pi = rows;
    std::size_t pj = cols;
    for (std::size_t i = k; i < rows; ++i) {
      for (std::size_t j = k; j < cols; ++j) {
        const MultiPoly& x = a[i][j];
        if (x.is_zero()) continue;
        if (pi == rows) {
          pi = i;
          pj = j;
          continue;
        }
        const MultiPoly& best = a[pi][pj];
        if (x.total_degree() < best.total_degree() ||
            (x.total_degree() == best.total_degree() && x.size() < best.size())) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    std::swap(a[k], a[pi]);
    if (pj != k) {
      for (auto& row : a) std::swap(row[k], row[pj]);
    }
    const MultiPoly& piv = a[k][k];
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        MultiPoly v = piv * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = prev.is_one() ? std::move(v) : exact(v, prev);
      }
      a[i][k] = MultiPoly(f, nv);
    }
    prev = a[k][k];
    ++rank;
  }
  return rank;
}

RatMatrix transpose(const RatMatrix& m) {
  const std::size_t cols = check_rectangular(m);
  RatMatrix t;
  if (m.empty()) return t;
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<RatFunc> row;
    row.reserve(m.size());
    for (const auto& r : m) row.push_back(r[j]);
    t.push_back(std::move(row));
  }
  return t;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t inner = check_rectangular(a);
  const std::size_t cols = check_rectangular(b);
  if (inner != b.size()) throw StructuralError("matrix product dimension mismatch");
  if (a.empty() || b.empty()) throw StructuralError("matrix product of empty matrices");
  const RatFunc zero = RatFunc::zero(a.front().front().field(), a.front().front().nvars());
  RatMatrix out;
  for (const auto& row : a) {
    std::vector<RatFunc> r(cols, zero);
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t k = 0; k < inner; ++k) {
        if (row[k].is_zero() || b[k][j].is_zero()) continue;
        r[j] += row[k] * b[k][j];
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<std::vector<RatFunc>> solve(const RatMatrix& m, const std::vector<RatFunc>& rhs) {
  const std::size_t cols = check_rectangular(m);
  const std::size_t rows = m.size();
  if (rhs.size() != rows) throw StructuralError("right-hand side has wrong length");
  if (rows == 0) return std::vector<RatFunc>{};
  RatMatrix a = m;
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(rhs[i]);
  const RatFunc zero = RatFunc::zero(rhs.front().field(), rhs.front().nvars());

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    std::size_t pi = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i][j].is_zero()) continue;
      if (pi == rows || a[i][j].total_degree() < a[pi][j].total_degree()) pi = i;
    }
    if (pi == rows) continue;
    std::swap(a[r], a[pi]);
    RatFunc inv = a[r][j].inverse();
    for (std::size_t c = j; c <= cols; ++c) {
      if (!a[r][c].is_zero()) a[r][c] *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][j].is_zero()) continue;
      RatFunc factor = a[i][j];
      for (std::size_t c = j; c <= cols; ++c) {
        if (!a[r][c].is_zero()) a[i][c] -= factor * a[r][c];
      }
    }
    pivot_col.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (!a[i][cols].is_zero()) return std::nullopt;
  }
  std::vector<RatFunc> x(cols, zero);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i][cols];
  return x;
}

}  // namespace fermatci
