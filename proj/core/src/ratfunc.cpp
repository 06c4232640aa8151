#include "fermatci/ratfunc.hpp"

#include <algorithm>

#include "fermatci/errors.hpp"

namespace fermatci {

namespace {

MultiPoly exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw ArithmeticError("internal: inexact division while reducing a fraction");
  return *q;
}

}  // namespace

RatFunc::RatFunc(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(num_.field(), num_.nvars(), 1)) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (!(num_.field() == den_.field()) || num_.nvars() != den_.nvars()) {
    throw StructuralError("numerator and denominator from different rings");
  }
  if (den_.is_zero()) throw ArithmeticError("fraction with zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.field(), num_.nvars(), 1);
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact(num_, g);
      den_ = exact(den_, g);
    }
  }
  Coeff lc = den_.leading_coeff();
  if (lc != 1) {
    Coeff inv = num_.field().inv(lc);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc RatFunc::zero(PrimeField field, std::size_t nvars) { return RatFunc(MultiPoly(field, nvars)); }

RatFunc RatFunc::one(PrimeField field, std::size_t nvars) {
  return RatFunc(MultiPoly::constant(field, nvars, 1));
}

RatFunc RatFunc::constant(PrimeField field, std::size_t nvars, std::int64_t value) {
  return RatFunc(MultiPoly::constant(field, nvars, value));
}

RatFunc RatFunc::variable(PrimeField field, std::size_t nvars, std::size_t index) {
  return RatFunc(MultiPoly::variable(field, nvars, index));
}

std::optional<std::size_t> RatFunc::as_variable() const noexcept {
  if (!den_.is_one()) return std::nullopt;
  return num_.as_variable();
}

std::optional<Coeff> RatFunc::as_constant() const noexcept {
  if (!den_.is_one()) return std::nullopt;
  return num_.as_constant();
}

std::int64_t RatFunc::total_degree() const noexcept {
  return std::max(num_.total_degree(), den_.total_degree());
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw ArithmeticError("inverse of zero");
  Coeff lc = num_.leading_coeff();
  Coeff inv = field().inv(lc);
  return RatFunc(den_.scaled(inv), num_.scaled(inv), Canonical{});
}

RatFunc RatFunc::pow(std::int64_t n) const {
  if (n < 0) return inverse().pow(-n);
  if (n == 0) return one(field(), nvars());
  // Powers of a reduced fraction stay reduced, and a power of a monic is monic.
  return RatFunc(num_.pow(static_cast<std::uint64_t>(n)), den_.pow(static_cast<std::uint64_t>(n)),
                 Canonical{});
}

RatFunc RatFunc::partial(std::size_t var) const {
  if (var >= nvars()) throw StructuralError("partial derivative index out of range");
  MultiPoly dn = num_.partial(var);
  MultiPoly dd = den_.partial(var);
  if (dd.is_zero()) return RatFunc(dn, den_);
  return RatFunc(dn * den_ - num_ * dd, den_ * den_);
}

RatFunc RatFunc::frobenius(unsigned d) const {
  return RatFunc(num_.frobenius(d), den_.frobenius(d), Canonical{});
}

std::optional<RatFunc> RatFunc::pth_root(unsigned d) const {
  auto n = num_.pth_root(d);
  if (!n) return std::nullopt;
  auto m = den_.pth_root(d);
  if (!m) return std::nullopt;
  return RatFunc(std::move(*n), std::move(*m), Canonical{});
}

RatFunc RatFunc::substitute(std::span<const RatFunc> images) const {
  if (images.size() != nvars()) throw StructuralError("substitution needs one image per variable");
  if (images.empty()) return *this;
  const PrimeField& f = field();
  const std::size_t m = images.front().nvars();
  for (const RatFunc& img : images) {
    if (img.nvars() != m || !(img.field() == f)) {
      throw StructuralError("substitution images from different rings");
    }
  }
  const std::size_t n = nvars();
  std::vector<Exponent> top(n, 0);
  for (std::size_t i = 0; i < n; ++i) top[i] = std::max(num_.degree_in(i), den_.degree_in(i));

  // Power tables of image numerators and denominators.
  std::vector<std::vector<MultiPoly>> npow(n);
  std::vector<std::vector<MultiPoly>> dpow(n);
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly one = MultiPoly::constant(f, m, 1);
    npow[i].push_back(one);
    dpow[i].push_back(one);
    for (Exponent k = 1; k <= top[i]; ++k) {
      npow[i].push_back(npow[i].back() * images[i].num());
      if (!images[i].den().is_one()) dpow[i].push_back(dpow[i].back() * images[i].den());
    }
  }
  auto eval = [&](const MultiPoly& poly) {
    MultiPoly acc(f, m);
    for (const Term& t : poly.terms()) {
      MultiPoly prod = MultiPoly::constant(f, m, t.coeff);
      for (std::size_t i = 0; i < n; ++i) {
        Exponent a = t.monomial[i];
        if (a > 0) prod = prod * npow[i][a];
        if (dpow[i].size() > 1 && top[i] > a) prod = prod * dpow[i][top[i] - a];
      }
      acc += prod;
    }
    return acc;
  };
  // Both sides carry the common factor prod_i den_i^top_i, which cancels.
  return RatFunc(eval(num_), eval(den_));
}

RatFunc RatFunc::remap(std::size_t new_nvars, std::span<const std::size_t> mapping) const {
  return RatFunc(num_.remap(new_nvars, mapping), den_.remap(new_nvars, mapping));
}

std::string RatFunc::to_string(std::span<const std::string> names) const {
  std::string n = num_.to_string(names);
  if (den_.is_one()) return n;
  std::string d = den_.to_string(names);
  if (num_.size() > 1) n = "(" + n + ")";
  if (den_.size() > 1 || (den_.is_monomial() && den_.leading_term().monomial.degree() > 1 &&
                          d.find('*') != std::string::npos)) {
    d = "(" + d + ")";
  }
  return n + "/" + d;
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Canonical{}); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (!(a.field() == b.field()) || a.nvars() != b.nvars()) {
    throw StructuralError("rational functions from different fields");
  }
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_one()) return RatFunc(a.num_ + b.num_, a.den_, RatFunc::Canonical{});
    return RatFunc(a.num_ + b.num_, a.den_);
  }
  MultiPoly g = gcd(a.den_, b.den_);
  MultiPoly ad = exact(a.den_, g);
  MultiPoly bd = exact(b.den_, g);
  MultiPoly num = a.num_ * bd + b.num_ * ad;
  MultiPoly den = a.den_ * bd;
  if (g.is_one()) {
    // Coprime monic denominators: the sum is reduced and its denominator monic.
    return RatFunc(std::move(num), std::move(den), RatFunc::Canonical{});
  }
  MultiPoly h = gcd(num, g);
  if (!h.is_one()) {
    num = exact(num, h);
    den = exact(den, h);
  }
  return RatFunc(std::move(num), std::move(den));
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (!(a.field() == b.field()) || a.nvars() != b.nvars()) {
    throw StructuralError("rational functions from different fields");
  }
  if (a.is_zero() || b.is_zero()) return RatFunc::zero(a.field(), a.nvars());
  if (a.den_.is_one() && b.den_.is_one()) {
    return RatFunc(a.num_ * b.num_, a.den_, RatFunc::Canonical{});
  }
  MultiPoly g1 = gcd(a.num_, b.den_);
  MultiPoly g2 = gcd(b.num_, a.den_);
  MultiPoly n1 = g1.is_one() ? a.num_ : exact(a.num_, g1);
  MultiPoly d2 = g1.is_one() ? b.den_ : exact(b.den_, g1);
  MultiPoly n2 = g2.is_one() ? b.num_ : exact(b.num_, g2);
  MultiPoly d1 = g2.is_one() ? a.den_ : exact(a.den_, g2);
  MultiPoly num = n1 * n2;
  MultiPoly den = d1 * d2;
  Coeff lc = den.leading_coeff();
  if (lc != 1) {
    Coeff inv = a.field().inv(lc);
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return RatFunc(std::move(num), std::move(den), RatFunc::Canonical{});
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw ArithmeticError("division by zero");
  return a * b.inverse();
}

}  // namespace fermatci
