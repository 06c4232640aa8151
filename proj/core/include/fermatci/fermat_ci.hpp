#ifndef FERMATCI_FERMAT_CI_HPP
#define FERMATCI_FERMAT_CI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fermatci/form_poly.hpp"
#include "fermatci/tower.hpp"

namespace fermatci {

/// X = Proj k[x_0..x_N] / (f_1..f_r) with f_i = sum_j s_ij x_j^q, q = p^e.
/// r == 0 stands for P^N itself.
struct FermatCI {
  FieldId field = 0;
  std::uint32_t p = 2;
  unsigned e = 0;
  unsigned N = 0;
  unsigned r = 0;
  /// r rows of N + 1 coefficients, elements of `field`.
  RatMatrix coeffs;
  /// Display names for the coefficients, same shape as coeffs.
  std::vector<std::vector<std::string>> labels;

  std::uint64_t q() const;
  FieldElement coefficient(std::size_t i, std::size_t j) const { return {field, coeffs.at(i).at(j)}; }
  std::vector<FieldElement> all_coefficients() const;
  bool is_linear() const noexcept { return e == 0; }
};

/// Checks shapes, 0 <= r < N, and that every coefficient lives in `field`.
/// Validity in the sense of p-independence is left to validate().
FermatCI make_fermat_ci(const FieldRegistry& reg, FieldId field, unsigned e, unsigned N, unsigned r,
                        RatMatrix coeffs, std::vector<std::vector<std::string>> labels = {});

/// Fresh base field F_p(s_ij) with coefficient s_ij the generator named "s<i><j>"
/// (1-based rows, 0-based columns).
FermatCI generic_fermat_ci(FieldRegistry& reg, std::uint32_t p, unsigned e, unsigned N, unsigned r);

/// The forms f_1..f_r in x_0..x_N.
std::vector<FormPoly> defining_forms(const FieldRegistry& reg, const FermatCI& ci);

struct ValidityCertificate {
  bool trivial = false;  // r == 0
  std::optional<IndependenceCertificate> independence;
  std::size_t coefficient_rank = 0;
  bool independent = false;
  bool rank_ok = false;
  bool valid = false;
};

/// p-independence of all r(N+1) coefficients plus rank(coeffs) == r.
ValidityCertificate validate(const FieldRegistry& reg, const FermatCI& ci);

struct JacobianCertificate {
  bool vacuous = false;
  /// Row i' holds the coefficients (on d/dg_j) of the derivation dual to s_{i'0}.
  RatMatrix derivations;
  /// minor[i][i'] = D_{i'}(f_i) on the chart x_0 = 1, when free of x.
  RatMatrix minor;
  bool constant_entries = false;
  bool is_identity = false;
  bool pass = false;
};

/// Regularity of the chart x_0 = 1: builds derivations D_{i'} with
/// D_{i'}(s_ab) = [a = i', b = 0] from the p-independence of the coefficients
/// and checks the r x r minor (D_{i'} f_i) is the identity matrix.
JacobianCertificate jacobian_regularity_certificate(const FieldRegistry& reg, const FermatCI& ci);

struct IdentityCheck {
  std::string name;
  bool holds = false;
  std::size_t residual_terms = 0;
};

/// The coordinate change y_1 = x_1 + sum_{j>=2} shift[j-2] * x_j over l,
/// and the normalization y_0 -> normalization * y_1 over k'.
struct SigmaRecord {
  FieldId field = 0;
  std::vector<RatFunc> shift;
  FieldId normalization_field = 0;
  std::optional<RatFunc> normalization;
};

struct ElementalStep {
  FermatCI parent;
  /// The parent presented so that its first row consists of generators.
  FermatCI pivot_form;
  FieldId l = 0;
  FieldId k_prime = 0;
  FieldElement t10;
  /// t_ij for 2 <= i <= r, 1 <= j <= N, elements of l.
  RatMatrix T;
  FermatCI child;
  SigmaRecord sigma;
  unsigned internal_degree_log = 0;
  unsigned external_degree_log = 0;
  std::vector<IdentityCheck> identities;
  IndependenceCertificate step_independence;
  std::size_t expected_step_rank = 0;
  ValidityCertificate child_validity;

  bool passed() const;
};

/// One elemental extension k c l c k' of a valid CI with r >= 1 and e >= 1.
/// Every certificate is computed; a failing one throws CertificateFailure.
ElementalStep elemental_step(FieldRegistry& reg, const FermatCI& ci);

struct ExtensionChain {
  FermatCI initial;
  ValidityCertificate initial_validity;
  std::vector<ElementalStep> steps;
  FieldId terminal_field = 0;
  /// The chain ends at P^{terminal_dimension} over terminal_field.
  unsigned terminal_dimension = 0;

  unsigned external_degree_log_sum() const;
};

ExtensionChain build_chain(FieldRegistry& reg, const FermatCI& ci);

struct FrobeniusReduction {
  FermatCI reduced;
  unsigned d = 0;
  IndependenceCertificate independence;
  /// e - d == 0: the forms are linear and the reduced locus is P^{N-r}.
  bool linear = false;
  unsigned reduced_dimension = 0;
};

/// The CI over k^{1/p^d} with exponent e - d and coefficients s_ij^{1/p^d}.
FrobeniusReduction frobenius_reduction(FieldRegistry& reg, const FermatCI& ci, unsigned d);

/// Rows with a coefficient 1 in a common column are multiplied by a fresh
/// transcendental u_i, yielding a CI whose coefficients can be independent.
/// Input without unit coefficients is returned unchanged.
FermatCI homogenize_parameters(FieldRegistry& reg, const FermatCI& affine);

}  // namespace fermatci

#endif  // FERMATCI_FERMAT_CI_HPP
