// Multivariate gcd over F_p. Cheap reductions are tried first: monomial
// content, variables that occur in only one argument, and exact
// divisibility. Then the modular algorithm, with recursive primitive-part
// pseudo-remainder sequences as the fallback.

#include <algorithm>
#include <vector>

#include "fermatci/errors.hpp"
#include "fermatci/multipoly.hpp"
#include "modular_gcd.hpp"

namespace fermatci {

namespace {

MultiPoly gcd_nonzero(const MultiPoly& a, const MultiPoly& b);

/// gcd of the coefficients of `a` viewed as a polynomial in `var`.
MultiPoly content_in(const MultiPoly& a, std::size_t var) {
  std::vector<MultiPoly> coeffs = a.to_univariate(var);
  // Smallest coefficients first keeps the running gcd small.
  std::sort(coeffs.begin(), coeffs.end(),
            [](const MultiPoly& x, const MultiPoly& y) { return x.size() < y.size(); });
  MultiPoly g(a.field(), a.nvars());
  for (const MultiPoly& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_nonzero(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MultiPoly divide_or_throw(const MultiPoly& a, const MultiPoly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw ArithmeticError("internal: expected exact division in gcd");
  return *q;
}

/// Pseudo-remainder of a by b in `var` (deg_var(a) >= deg_var(b) not required).
std::vector<MultiPoly> pseudo_remainder(std::vector<MultiPoly> a, const std::vector<MultiPoly>& b) {
  const MultiPoly& lc = b.back();
  std::size_t db = b.size() - 1;
  auto trim = [](std::vector<MultiPoly>& v) {
    while (v.size() > 1 && v.back().is_zero()) v.pop_back();
  };
  trim(a);
  while (a.size() - 1 >= db && !(a.size() == 1 && a[0].is_zero())) {
    std::size_t da = a.size() - 1;
    MultiPoly lead = a.back();
    std::size_t shift = da - db;
    for (auto& c : a) c = c * lc;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= lead * b[k];
    trim(a);
    if (da == 0) break;
    if (a.size() - 1 < db) break;
  }
  return a;
}

MultiPoly primitive_part(const std::vector<MultiPoly>& coeffs, std::size_t var) {
  MultiPoly whole = MultiPoly::from_univariate(coeffs, var);
  MultiPoly cont = content_in(whole, var);
  return divide_or_throw(whole, cont);
}

MultiPoly prs_gcd(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  MultiPoly ca = content_in(a, var);
  MultiPoly cb = content_in(b, var);
  MultiPoly cont = gcd_nonzero(ca, cb);
  MultiPoly pa = divide_or_throw(a, ca);
  MultiPoly pb = divide_or_throw(b, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (true) {
    if (pb.degree_in(var) == 0) {
      // pb is primitive and free of var: it is a unit here.
      return cont.monic();
    }
    std::vector<MultiPoly> rem = pseudo_remainder(pa.to_univariate(var), pb.to_univariate(var));
    bool zero = rem.size() == 1 && rem[0].is_zero();
    if (zero) return (cont * pb).monic();
    MultiPoly next = primitive_part(rem, var);
    pa = std::move(pb);
    pb = std::move(next);
  }
}

MultiPoly gcd_nonzero(const MultiPoly& a_in, const MultiPoly& b_in) {
  const PrimeField& f = a_in.field();
  const std::size_t n = a_in.nvars();
  if (a_in.is_constant() || b_in.is_constant()) return MultiPoly::constant(f, n, 1);
  if (a_in.monic() == b_in.monic()) return a_in.monic();

  Monomial ma = a_in.monomial_content();
  Monomial mb = b_in.monomial_content();
  Monomial mg = ma.gcd(mb);
  MultiPoly mono = MultiPoly::monomial(f, mg, 1);
  MultiPoly a = ma.degree() ? divide_or_throw(a_in, MultiPoly::monomial(f, ma, 1)) : a_in;
  MultiPoly b = mb.degree() ? divide_or_throw(b_in, MultiPoly::monomial(f, mb, 1)) : b_in;
  if (a.is_constant() || b.is_constant()) return mono;

  std::vector<bool> sa = a.support();
  std::vector<bool> sb = b.support();
  for (std::size_t v = 0; v < n; ++v) {
    if (sa[v] && !sb[v]) return mono * gcd_nonzero(content_in(a, v), b);
    if (sb[v] && !sa[v]) return mono * gcd_nonzero(a, content_in(b, v));
  }

  const MultiPoly& small = a.size() <= b.size() ? a : b;
  const MultiPoly& large = a.size() <= b.size() ? b : a;
  if (large.divide_exact(small)) return mono * small.monic();

  if (auto g = detail::modular_gcd(a, b)) return mono * *g;

  // Main variable: the one with the smallest combined degree.
  std::size_t var = n;
  Exponent best = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!sa[v]) continue;
    Exponent d = a.degree_in(v) + b.degree_in(v);
    if (var == n || d < best) {
      var = v;
      best = d;
    }
  }
  return (mono * prs_gcd(a, b, var)).monic();
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (!(a.field() == b.field()) || a.nvars() != b.nvars()) {
    throw StructuralError("gcd of polynomials from different rings");
  }
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  return gcd_nonzero(a, b).monic();
}

}  // namespace fermatci
