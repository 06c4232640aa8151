#include "fermatci/multipoly.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

#include "fermatci/errors.hpp"

namespace fermatci {

namespace {

bool term_greater(const Term& a, const Term& b) { return a.monomial > b.monomial; }

std::uint64_t checked_power(std::uint64_t base, unsigned d) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (result > std::numeric_limits<Exponent>::max() / base) {
      throw ArithmeticError("Frobenius exponent p^" + std::to_string(d) + " overflows");
    }
    result *= base;
  }
  return result;
}

}  // namespace

Monomial::Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
  for (Exponent e : exps_) degree_ += e;
}

void Monomial::set(std::size_t i, Exponent value) {
  degree_ = degree_ - exps_.at(i) + value;
  exps_[i] = value;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t e = static_cast<std::uint64_t>(exps_[i]) + other.exps_[i];
    if (e > std::numeric_limits<Exponent>::max()) throw ArithmeticError("exponent overflow");
    out.exps_[i] = static_cast<Exponent>(e);
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial out(other);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= exps_[i];
  out.degree_ = other.degree_ - degree_;
  return out;
}

Monomial Monomial::gcd(const Monomial& other) const {
  std::vector<Exponent> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) e[i] = std::min(exps_[i], other.exps_[i]);
  return Monomial(std::move(e));
}

Monomial Monomial::scaled(std::uint64_t factor) const {
  std::vector<Exponent> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t v = static_cast<std::uint64_t>(exps_[i]) * factor;
    if (v > std::numeric_limits<Exponent>::max()) throw ArithmeticError("exponent overflow");
    e[i] = static_cast<Exponent>(v);
  }
  return Monomial(std::move(e));
}

MultiPoly::MultiPoly(PrimeField field, std::size_t nvars, std::vector<Term> terms)
    : field_(field), nvars_(nvars) {
  for (const Term& t : terms) {
    if (t.monomial.nvars() != nvars) throw StructuralError("monomial has wrong variable count");
  }
  std::sort(terms.begin(), terms.end(), term_greater);
  terms_.reserve(terms.size());
  for (Term& t : terms) {
    Coeff c = t.coeff % field_.characteristic();
    if (!terms_.empty() && terms_.back().monomial == t.monomial) {
      terms_.back().coeff = field_.add(terms_.back().coeff, c);
    } else {
      if (!terms_.empty() && terms_.back().coeff == 0) terms_.pop_back();
      terms_.push_back(Term{std::move(t.monomial), c});
    }
  }
  if (!terms_.empty() && terms_.back().coeff == 0) terms_.pop_back();
}

MultiPoly MultiPoly::constant(PrimeField field, std::size_t nvars, std::int64_t value) {
  MultiPoly out(field, nvars);
  Coeff c = field.reduce(value);
  if (c != 0) out.terms_.push_back(Term{Monomial(nvars), c});
  return out;
}

MultiPoly MultiPoly::variable(PrimeField field, std::size_t nvars, std::size_t index,
                              Exponent power) {
  if (index >= nvars) throw StructuralError("variable index out of range");
  Monomial m(nvars);
  m.set(index, power);
  return monomial(field, std::move(m), 1);
}

MultiPoly MultiPoly::monomial(PrimeField field, Monomial m, Coeff c) {
  MultiPoly out(field, m.nvars());
  c %= field.characteristic();
  if (c != 0) out.terms_.push_back(Term{std::move(m), c});
  return out;
}

bool MultiPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.degree() == 0);
}

bool MultiPoly::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].monomial.degree() == 0 && terms_[0].coeff == 1;
}

std::optional<std::size_t> MultiPoly::as_variable() const noexcept {
  if (terms_.size() != 1 || terms_[0].coeff != 1 || terms_[0].monomial.degree() != 1) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (terms_[0].monomial[i] == 1) return i;
  }
  return std::nullopt;
}

std::optional<Coeff> MultiPoly::as_constant() const noexcept {
  if (terms_.empty()) return Coeff{0};
  if (terms_.size() == 1 && terms_[0].monomial.degree() == 0) return terms_[0].coeff;
  return std::nullopt;
}

std::int64_t MultiPoly::total_degree() const noexcept {
  if (terms_.empty()) return -1;
  // Graded order: the leading term has maximal total degree.
  return static_cast<std::int64_t>(terms_.front().monomial.degree());
}

Exponent MultiPoly::degree_in(std::size_t var) const {
  if (var >= nvars_) throw StructuralError("variable index out of range");
  Exponent d = 0;
  for (const Term& t : terms_) d = std::max(d, t.monomial[var]);
  return d;
}

bool MultiPoly::depends_on(std::size_t var) const {
  if (var >= nvars_) throw StructuralError("variable index out of range");
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const Term& t) { return t.monomial[var] != 0; });
}

std::vector<bool> MultiPoly::support() const {
  std::vector<bool> used(nvars_, false);
  for (const Term& t : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.monomial[i] != 0) used[i] = true;
    }
  }
  return used;
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw ArithmeticError("leading term of the zero polynomial");
  return terms_.front();
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty() || terms_.front().coeff == 1) return *this;
  return scaled(field_.inv(terms_.front().coeff));
}

MultiPoly MultiPoly::scaled(Coeff c) const {
  c %= field_.characteristic();
  MultiPoly out(field_, nvars_);
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) out.terms_.push_back(Term{t.monomial, field_.mul(t.coeff, c)});
  return out;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m, Coeff c) const {
  if (m.nvars() != nvars_) throw StructuralError("monomial has wrong variable count");
  c %= field_.characteristic();
  MultiPoly out(field_, nvars_);
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the order.
  for (const Term& t : terms_) out.terms_.push_back(Term{t.monomial * m, field_.mul(t.coeff, c)});
  return out;
}

MultiPoly MultiPoly::pow(std::uint64_t n) const {
  MultiPoly result = constant(field_, nvars_, 1);
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::partial(std::size_t var) const {
  if (var >= nvars_) throw StructuralError("partial derivative index out of range");
  std::vector<Term> out;
  for (const Term& t : terms_) {
    Exponent e = t.monomial[var];
    Coeff c = field_.mul(t.coeff, field_.reduce(e));
    if (c == 0) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    out.push_back(Term{std::move(m), c});
  }
  return MultiPoly(field_, nvars_, std::move(out));
}

MultiPoly MultiPoly::frobenius(unsigned d) const {
  if (d == 0) return *this;
  std::uint64_t q = checked_power(field_.characteristic(), d);
  MultiPoly out(field_, nvars_);
  out.terms_.reserve(terms_.size());
  // Coefficients are fixed by Frobenius on F_p; scaling exponents keeps the order.
  for (const Term& t : terms_) out.terms_.push_back(Term{t.monomial.scaled(q), t.coeff});
  return out;
}

std::optional<MultiPoly> MultiPoly::pth_root(unsigned d) const {
  if (d == 0) return *this;
  std::uint64_t q = checked_power(field_.characteristic(), d);
  MultiPoly out(field_, nvars_);
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) {
    std::vector<Exponent> e(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.monomial[i] % q != 0) return std::nullopt;
      e[i] = static_cast<Exponent>(t.monomial[i] / q);
    }
    out.terms_.push_back(Term{Monomial(std::move(e)), t.coeff});
  }
  return out;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
  check_compatible(divisor);
  if (divisor.is_zero()) throw ArithmeticError("division by the zero polynomial");
  if (is_zero()) return *this;
  if (divisor.is_constant()) return scaled(field_.inv(divisor.leading_coeff()));
  if (divisor.total_degree() > total_degree()) return std::nullopt;
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (divisor.degree_in(i) > degree_in(i)) return std::nullopt;
  }
  const Term& lead = divisor.leading_term();
  Coeff lead_inv = field_.inv(lead.coeff);
  if (divisor.is_monomial()) {
    std::vector<Term> q;
    q.reserve(terms_.size());
    for (const Term& t : terms_) {
      if (!lead.monomial.divides(t.monomial)) return std::nullopt;
      q.push_back(Term{lead.monomial.quotient_of(t.monomial), field_.mul(t.coeff, lead_inv)});
    }
    MultiPoly out(field_, nvars_);
    out.terms_ = std::move(q);
    return out;
  }
  std::vector<Term> quotient;
  MultiPoly rest = *this;
  while (!rest.is_zero()) {
    const Term& top = rest.leading_term();
    if (!lead.monomial.divides(top.monomial)) return std::nullopt;
    Monomial m = lead.monomial.quotient_of(top.monomial);
    Coeff c = field_.mul(top.coeff, lead_inv);
    rest = rest - divisor.times_monomial(m, c);
    quotient.push_back(Term{std::move(m), c});
  }
  return MultiPoly(field_, nvars_, std::move(quotient));
}

Monomial MultiPoly::monomial_content() const {
  if (terms_.empty()) return Monomial(nvars_);
  Monomial g = terms_.front().monomial;
  for (const Term& t : terms_) {
    g = g.gcd(t.monomial);
    if (g.degree() == 0) break;
  }
  return g;
}

std::vector<MultiPoly> MultiPoly::to_univariate(std::size_t var) const {
  Exponent deg = degree_in(var);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(deg) + 1);
  for (const Term& t : terms_) {
    Monomial m = t.monomial;
    Exponent k = m[var];
    m.set(var, 0);
    buckets[k].push_back(Term{std::move(m), t.coeff});
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(field_, nvars_, std::move(b));
  return out;
}

MultiPoly MultiPoly::from_univariate(const std::vector<MultiPoly>& coeffs, std::size_t var) {
  if (coeffs.empty()) throw StructuralError("empty coefficient list");
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const Term& t : coeffs[k].terms()) {
      Monomial m = t.monomial;
      m.set(var, m[var] + static_cast<Exponent>(k));
      terms.push_back(Term{std::move(m), t.coeff});
    }
  }
  return MultiPoly(coeffs.front().field(), coeffs.front().nvars(), std::move(terms));
}

MultiPoly MultiPoly::remap(std::size_t new_nvars, std::span<const std::size_t> mapping) const {
  if (mapping.size() != nvars_) throw StructuralError("variable mapping has wrong length");
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const Term& t : terms_) {
    std::vector<Exponent> e(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.monomial[i] == 0) continue;
      if (mapping[i] >= new_nvars) throw StructuralError("variable mapping out of range");
      e[mapping[i]] += t.monomial[i];
    }
    terms.push_back(Term{Monomial(std::move(e)), t.coeff});
  }
  return MultiPoly(field_, new_nvars, std::move(terms));
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (names.size() != nvars_) throw StructuralError("name list has wrong length");
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Term& t = terms_[k];
    if (k > 0) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      Exponent e = t.monomial[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += std::to_string(t.coeff);
    } else if (t.coeff == 1) {
      out += mono;
    } else {
      out += std::to_string(t.coeff) + "*" + mono;
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(field_, nvars_);
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) out.terms_.push_back(Term{t.monomial, field_.neg(t.coeff)});
  return out;
}

void MultiPoly::check_compatible(const MultiPoly& other) const {
  if (!(field_ == other.field_)) throw StructuralError("polynomials over different primes");
  if (nvars_ != other.nvars_) throw StructuralError("polynomials in different variable counts");
}

namespace {

MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
  const PrimeField& f = a.field();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->monomial > ib->monomial)) {
      out.push_back(*ia++);
    } else if (ia == a.terms().end() || ib->monomial > ia->monomial) {
      out.push_back(Term{ib->monomial, subtract ? f.neg(ib->coeff) : ib->coeff});
      ++ib;
    } else {
      Coeff c = subtract ? f.sub(ia->coeff, ib->coeff) : f.add(ia->coeff, ib->coeff);
      if (c != 0) out.push_back(Term{ia->monomial, c});
      ++ia;
      ++ib;
    }
  }
  // Already canonical; the constructor re-sort is linear on sorted input.
  return MultiPoly(f, a.nvars(), std::move(out));
}

}  // namespace

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  return merge(a, b, false);
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  return merge(a, b, true);
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.field(), a.nvars());
  if (b.is_monomial()) return a.times_monomial(b.terms_[0].monomial, b.terms_[0].coeff);
  if (a.is_monomial()) return b.times_monomial(a.terms_[0].monomial, a.terms_[0].coeff);
  const PrimeField& f = a.field();
  std::vector<Term> prod;
  prod.reserve(a.size() * b.size());
  for (const Term& x : a.terms()) {
    for (const Term& y : b.terms()) prod.push_back(Term{x.monomial * y.monomial, f.mul(x.coeff, y.coeff)});
  }
  return MultiPoly(f, a.nvars(), std::move(prod));
}

std::size_t MultiPoly::hash() const noexcept {
  std::size_t h = std::hash<std::size_t>{}(nvars_) ^ (field_.characteristic() * 0x9e3779b97f4a7c15ULL);
  for (const Term& t : terms_) {
    h = h * 1099511628211ULL ^ t.coeff;
    for (Exponent e : t.monomial.exponents()) h = h * 1099511628211ULL ^ e;
  }
  return h;
}

}  // namespace fermatci
