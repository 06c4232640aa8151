// Internal: dense modular gcd by evaluation and interpolation.
#ifndef FERMATCI_SRC_MODULAR_GCD_HPP
#define FERMATCI_SRC_MODULAR_GCD_HPP

#include <optional>

#include "fermatci/multipoly.hpp"

namespace fermatci::detail {

/// Monic gcd of two nonzero polynomials that involve the same variables.
/// Evaluates in F_p, or in F_{p^k} when F_p has too few points. Returns
/// nullopt when it gives up (too many unlucky points, field too large);
/// the caller then falls back to pseudo-remainder sequences.
std::optional<MultiPoly> modular_gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace fermatci::detail

#endif  // FERMATCI_SRC_MODULAR_GCD_HPP
