#ifndef FERMATCI_INVARIANTS_HPP
#define FERMATCI_INVARIANTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fermatci/fermat_ci.hpp"

namespace fermatci {

using BigInt = boost::multiprecision::cpp_int;

/// Integer arithmetic on divisor degrees of the chain, for e == 1.
struct DegreeArithmetic {
  std::int64_t lhs = 0;    // -(N + 1) + r p
  std::int64_t ky = 0;     // -(N - r + 1)
  std::int64_t upper = 0;  // floor((lhs - ky) / (p - 1))
};

DegreeArithmetic degree_arithmetic(std::uint32_t p, unsigned N, unsigned r);

struct GammaBounds {
  unsigned lower = 0;
  std::optional<unsigned> upper;
  std::optional<DegreeArithmetic> arithmetic;
};

/// Sum of the external degree logs; must equal e * r.
unsigned epsilon_of_chain(const ExtensionChain& chain);

GammaBounds gamma_bounds(const ExtensionChain& chain);

/// frobenius_reduction(ci, d) for d = 1, 2, ... up to the first linear one.
std::vector<FrobeniusReduction> frobenius_trail(FieldRegistry& reg, const FermatCI& ci);

/// (l, m): the least d with frobenius_reduction(ci, d) linear, twice.
std::pair<unsigned, unsigned> frobenius_lengths(FieldRegistry& reg, const FermatCI& ci);

struct ConstraintCheck {
  std::string name;
  bool holds = false;
  bool applicable = true;
  std::string note;
};

struct InvariantReport {
  unsigned epsilon = 0;
  unsigned gamma_lower = 0;
  std::optional<unsigned> gamma_upper;
  std::optional<unsigned> gamma_exact;
  std::optional<DegreeArithmetic> gamma_arithmetic;
  unsigned ell = 0;
  unsigned m = 0;
  /// Transcendence degree (= p-degree) of the base field.
  unsigned deg_imperfection = 0;
  std::vector<FrobeniusReduction> frobenius_trail;
  std::vector<ConstraintCheck> constraints;

  bool constraints_hold() const;
};

std::vector<ConstraintCheck> constraint_checks(const InvariantReport& report);

InvariantReport compute_invariants(FieldRegistry& reg, const FermatCI& ci, const ExtensionChain& chain);

/// n * p^ell.
BigInt qgor_index(std::uint32_t p, unsigned ell, const BigInt& n);

}  // namespace fermatci

#endif  // FERMATCI_INVARIANTS_HPP
