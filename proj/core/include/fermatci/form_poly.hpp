#ifndef FERMATCI_FORM_POLY_HPP
#define FERMATCI_FORM_POLY_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fermatci/multipoly.hpp"
#include "fermatci/ratfunc.hpp"

namespace fermatci {

/// Polynomial in the coordinates y_0..y_{m-1} with coefficients in a rational
/// function field. Used for the forms f_i and for the coordinate-change
/// identities, which must vanish as polynomials.
class FormPoly {
 public:
  FormPoly(PrimeField field, std::size_t coeff_nvars, std::size_t nvars);

  static FormPoly variable(PrimeField field, std::size_t coeff_nvars, std::size_t nvars,
                           std::size_t index);
  static FormPoly constant(const RatFunc& c, std::size_t nvars);
  /// c * y_index^power.
  static FormPoly monomial(const RatFunc& c, std::size_t nvars, std::size_t index,
                           Exponent power);

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t coeff_nvars() const noexcept { return coeff_nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::map<Monomial, RatFunc, std::greater<>>& terms() const noexcept { return terms_; }
  RatFunc coefficient(const Monomial& m) const;

  FormPoly scaled(const RatFunc& c) const;
  FormPoly pow(std::uint64_t n) const;
  /// p^d-th power via Frobenius: coefficients to the p^d, exponents times p^d.
  FormPoly frobenius(unsigned d) const;
  /// Replaces y_i by images[i] (all images in the same coordinate ring).
  FormPoly substitute(std::span<const FormPoly> images) const;
  /// Applies the same map to every coefficient (e.g. lifting into a larger field).
  template <class F>
  FormPoly map_coefficients(std::size_t new_coeff_nvars, F&& f) const {
    FormPoly out(field_, new_coeff_nvars, nvars_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  std::string to_string(std::span<const std::string> coeff_names,
                        std::span<const std::string> var_names) const;

  FormPoly operator-() const;
  friend FormPoly operator+(const FormPoly& a, const FormPoly& b);
  friend FormPoly operator-(const FormPoly& a, const FormPoly& b);
  friend FormPoly operator*(const FormPoly& a, const FormPoly& b);
  friend bool operator==(const FormPoly& a, const FormPoly& b) { return a.terms_ == b.terms_; }

  void add_term(const Monomial& m, const RatFunc& c);

 private:
  void check(const FormPoly& o) const;

  PrimeField field_;
  std::size_t coeff_nvars_;
  std::size_t nvars_;
  std::map<Monomial, RatFunc, std::greater<>> terms_;
};

}  // namespace fermatci

#endif  // FERMATCI_FORM_POLY_HPP
