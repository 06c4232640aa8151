#ifndef FERMATCI_LINALG_HPP
#define FERMATCI_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "fermatci/ratfunc.hpp"

namespace fermatci {

/// Rank over the rational function field.
///
/// Rows are cleared of denominators, then fraction-free (Bareiss) elimination
/// runs over F_p[x] with full pivoting on the lowest-total-degree nonzero
/// entry. Every zero test is exact. Throws StructuralError on ragged input.
std::size_t rank_over_field(const RatMatrix& m);

RatMatrix transpose(const RatMatrix& m);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);

/// Finds x with m * x == rhs, or nullopt when the system is inconsistent.
/// Free variables are set to zero. Plain Gauss-Jordan over the field.
std::optional<std::vector<RatFunc>> solve(const RatMatrix& m, const std::vector<RatFunc>& rhs);

}  // namespace fermatci

#endif  // FERMATCI_LINALG_HPP
