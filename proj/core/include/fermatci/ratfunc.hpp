#ifndef FERMATCI_RATFUNC_HPP
#define FERMATCI_RATFUNC_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermatci/multipoly.hpp"

namespace fermatci {

/// Element of F_p(x_0, ..., x_{n-1}) in canonical form.
///
/// The fraction is fully reduced and the denominator is monic under graded
/// lex, so two RatFuncs are equal iff their representations are equal.
class RatFunc {
 public:
  /// Zero of F_2 in no variables; a placeholder until assigned.
  RatFunc() : RatFunc(MultiPoly(PrimeField(2), 0)) {}
  explicit RatFunc(MultiPoly num);
  /// Throws ArithmeticError when den is zero.
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc zero(PrimeField field, std::size_t nvars);
  static RatFunc one(PrimeField field, std::size_t nvars);
  static RatFunc constant(PrimeField field, std::size_t nvars, std::int64_t value);
  static RatFunc variable(PrimeField field, std::size_t nvars, std::size_t index);

  const MultiPoly& num() const noexcept { return num_; }
  const MultiPoly& den() const noexcept { return den_; }
  const PrimeField& field() const noexcept { return num_.field(); }
  std::uint32_t prime() const noexcept { return num_.prime(); }
  std::size_t nvars() const noexcept { return num_.nvars(); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  std::optional<std::size_t> as_variable() const noexcept;
  std::optional<Coeff> as_constant() const noexcept;
  /// max(deg num, deg den); the elimination pivot weight.
  std::int64_t total_degree() const noexcept;
  std::size_t term_count() const noexcept { return num_.size() + den_.size(); }
  bool depends_on(std::size_t var) const { return num_.depends_on(var) || den_.depends_on(var); }

  /// Throws ArithmeticError on zero.
  RatFunc inverse() const;
  /// Negative exponents invert first.
  RatFunc pow(std::int64_t n) const;

  /// Formal partial derivative by the quotient rule.
  RatFunc partial(std::size_t var) const;
  /// f^(p^d).
  RatFunc frobenius(unsigned d) const;
  /// g with g^(p^d) == f, or nullopt when f is not a p^d-th power in this field.
  std::optional<RatFunc> pth_root(unsigned d) const;

  /// Substitutes variable i by images[i]; all images share one ring.
  RatFunc substitute(std::span<const RatFunc> images) const;
  RatFunc remap(std::size_t new_nvars, std::span<const std::size_t> mapping) const;

  std::string to_string(std::span<const std::string> names) const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  /// Throws ArithmeticError when b is zero.
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::size_t hash() const noexcept { return num_.hash() * 31 + den_.hash(); }

 private:
  struct Canonical {};
  RatFunc(MultiPoly num, MultiPoly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

  MultiPoly num_;
  MultiPoly den_;
};

using RatMatrix = std::vector<std::vector<RatFunc>>;

}  // namespace fermatci

#endif  // FERMATCI_RATFUNC_HPP
