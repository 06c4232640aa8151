#include "fermatci/prime_field.hpp"

#include <string>

#include "fermatci/errors.hpp"

namespace fermatci {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw StructuralError("characteristic " + std::to_string(p) + " is not a supported prime");
  }
}

Coeff PrimeField::pow(Coeff a, std::uint64_t n) const noexcept {
  Coeff result = 1 % p_;
  Coeff base = a;
  while (n > 0) {
    if (n & 1u) result = mul(result, base);
    base = mul(base, base);
    n >>= 1;
  }
  return result;
}

Coeff PrimeField::inv(Coeff a) const {
  if (a % p_ == 0) throw ArithmeticError("inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

}  // namespace fermatci
