#ifndef FERMATCI_MULTIPOLY_HPP
#define FERMATCI_MULTIPOLY_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermatci/prime_field.hpp"

namespace fermatci {

using Exponent = std::uint32_t;

/// Exponent vector with its cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps);

  std::size_t nvars() const noexcept { return exps_.size(); }
  std::uint64_t degree() const noexcept { return degree_; }
  Exponent operator[](std::size_t i) const noexcept { return exps_[i]; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }

  void set(std::size_t i, Exponent value);

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const noexcept;
  /// Requires divides(other) == true, i.e. this | other; returns other / this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;
  Monomial scaled(std::uint64_t factor) const;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }
  /// Graded lexicographic order, variable 0 most significant.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.exps_ <=> b.exps_;
  }

 private:
  std::vector<Exponent> exps_;
  std::uint64_t degree_ = 0;
};

struct Term {
  Monomial monomial;
  Coeff coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over F_p in a fixed number of variables.
///
/// Terms are kept strictly decreasing under graded lex with no zero
/// coefficients, so equal polynomials have identical term vectors.
class MultiPoly {
 public:
  MultiPoly(PrimeField field, std::size_t nvars) : field_(field), nvars_(nvars) {}
  /// Canonicalizes: sorts, merges duplicates, drops zeros.
  MultiPoly(PrimeField field, std::size_t nvars, std::vector<Term> terms);

  static MultiPoly constant(PrimeField field, std::size_t nvars, std::int64_t value);
  static MultiPoly variable(PrimeField field, std::size_t nvars, std::size_t index,
                            Exponent power = 1);
  static MultiPoly monomial(PrimeField field, Monomial m, Coeff c = 1);

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t prime() const noexcept { return field_.characteristic(); }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// Single term with coefficient 1 and exponent 1 in one variable.
  std::optional<std::size_t> as_variable() const noexcept;
  std::optional<Coeff> as_constant() const noexcept;

  /// -1 for the zero polynomial.
  std::int64_t total_degree() const noexcept;
  Exponent degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;
  std::vector<bool> support() const;

  const Term& leading_term() const;
  Coeff leading_coeff() const { return leading_term().coeff; }

  /// Scaled to leading coefficient 1 (zero stays zero).
  MultiPoly monic() const;
  MultiPoly scaled(Coeff c) const;
  MultiPoly times_monomial(const Monomial& m, Coeff c = 1) const;
  MultiPoly pow(std::uint64_t n) const;

  MultiPoly partial(std::size_t var) const;
  /// Raises to the p^d-th power; exponents are multiplied by p^d.
  MultiPoly frobenius(unsigned d) const;
  /// g with g^(p^d) == *this, if every exponent is divisible by p^d.
  std::optional<MultiPoly> pth_root(unsigned d) const;

  /// Quotient when `divisor` divides exactly, otherwise nullopt.
  std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

  /// Monomial gcd of all terms (zero polynomial gives the empty monomial).
  Monomial monomial_content() const;

  /// Coefficients in `var`: result[k] is the coefficient of var^k.
  std::vector<MultiPoly> to_univariate(std::size_t var) const;
  static MultiPoly from_univariate(const std::vector<MultiPoly>& coeffs, std::size_t var);

  /// Variable j is sent to variable mapping[j] of a ring with new_nvars variables.
  MultiPoly remap(std::size_t new_nvars, std::span<const std::size_t> mapping) const;

  std::string to_string(std::span<const std::string> names) const;

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) noexcept {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::size_t hash() const noexcept;

 private:
  void check_compatible(const MultiPoly& other) const;

  PrimeField field_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// Monic greatest common divisor; gcd(0, 0) == 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace fermatci

#endif  // FERMATCI_MULTIPOLY_HPP
