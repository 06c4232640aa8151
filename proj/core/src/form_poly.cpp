#include "fermatci/form_poly.hpp"

#include "fermatci/errors.hpp"

namespace fermatci {

FormPoly::FormPoly(PrimeField field, std::size_t coeff_nvars, std::size_t nvars)
    : field_(field), coeff_nvars_(coeff_nvars), nvars_(nvars) {}

FormPoly FormPoly::variable(PrimeField field, std::size_t coeff_nvars, std::size_t nvars,
                            std::size_t index) {
  return monomial(RatFunc::one(field, coeff_nvars), nvars, index, 1);
}

FormPoly FormPoly::constant(const RatFunc& c, std::size_t nvars) {
  FormPoly out(c.field(), c.nvars(), nvars);
  out.add_term(Monomial(nvars), c);
  return out;
}

FormPoly FormPoly::monomial(const RatFunc& c, std::size_t nvars, std::size_t index, Exponent power) {
  if (index >= nvars) throw StructuralError("coordinate index out of range");
  FormPoly out(c.field(), c.nvars(), nvars);
  Monomial m(nvars);
  m.set(index, power);
  out.add_term(m, c);
  return out;
}

RatFunc FormPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  if (it == terms_.end()) return RatFunc::zero(field_, coeff_nvars_);
  return it->second;
}

void FormPoly::add_term(const Monomial& m, const RatFunc& c) {
  if (m.nvars() != nvars_) throw StructuralError("monomial has wrong coordinate count");
  if (c.nvars() != coeff_nvars_) throw StructuralError("coefficient from a different field");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void FormPoly::check(const FormPoly& o) const {
  if (!(field_ == o.field_) || coeff_nvars_ != o.coeff_nvars_ || nvars_ != o.nvars_) {
    throw StructuralError("forms from different rings");
  }
}

FormPoly FormPoly::scaled(const RatFunc& c) const {
  FormPoly out(field_, coeff_nvars_, nvars_);
  if (c.is_zero()) return out;
  for (const auto& [m, x] : terms_) out.terms_.emplace(m, x * c);
  return out;
}

FormPoly FormPoly::pow(std::uint64_t n) const {
  FormPoly result = constant(RatFunc::one(field_, coeff_nvars_), nvars_);
  FormPoly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

FormPoly FormPoly::frobenius(unsigned d) const {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < d; ++i) q *= field_.characteristic();
  FormPoly out(field_, coeff_nvars_, nvars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m.scaled(q), c.frobenius(d));
  return out;
}

FormPoly FormPoly::substitute(std::span<const FormPoly> images) const {
  if (images.size() != nvars_) throw StructuralError("substitution needs one image per coordinate");
  if (images.empty()) return *this;
  const std::size_t m = images.front().nvars_;
  FormPoly out(field_, coeff_nvars_, m);
  for (const auto& [mono, c] : terms_) {
    FormPoly prod = constant(c, m);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (mono[i] > 0) prod = prod * images[i].pow(mono[i]);
    }
    out = out + prod;
  }
  return out;
}

std::string FormPoly::to_string(std::span<const std::string> coeff_names,
                                std::span<const std::string> var_names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_names[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string cs = c.to_string(coeff_names);
    bool compound = cs.find_first_of("+ ") != std::string::npos;
    if (mono.empty()) {
      out += cs;
    } else if (c.is_one()) {
      out += mono;
    } else {
      out += (compound ? "(" + cs + ")" : cs) + "*" + mono;
    }
  }
  return out;
}

FormPoly FormPoly::operator-() const {
  FormPoly out(field_, coeff_nvars_, nvars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

FormPoly operator+(const FormPoly& a, const FormPoly& b) {
  a.check(b);
  FormPoly out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

FormPoly operator-(const FormPoly& a, const FormPoly& b) { return a + (-b); }

FormPoly operator*(const FormPoly& a, const FormPoly& b) {
  a.check(b);
  FormPoly out(a.field_, a.coeff_nvars_, a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

}  // namespace fermatci
