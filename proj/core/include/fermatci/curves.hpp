#ifndef FERMATCI_CURVES_HPP
#define FERMATCI_CURVES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fermatci/invariants.hpp"
#include "fermatci/tower.hpp"

namespace fermatci {

using BigRational = boost::multiprecision::cpp_rational;

/// Genus of the complete intersection curve of r = N - 1 forms of degree q = p^e in P^N.
BigInt ci_curve_genus(std::uint32_t p, unsigned e, unsigned N, unsigned r);

struct GenusChangeCheck {
  std::uint32_t p = 2;
  unsigned epsilon = 0;
  unsigned gamma = 0;
  BigInt g_X;
  BigInt g_Y;
  /// Sum of the conductor degrees, solved from the genus identity.
  BigRational sum_deg;
  bool consistent = false;
};

/// Solves 2 g_Y - 2 + (p - 1) sum_deg = (2 g_X - 2) / p^epsilon.
/// Throws NotApplicable when gamma == 0.
GenusChangeCheck genus_change_check(std::uint32_t p, unsigned epsilon, unsigned gamma, const BigInt& g_X,
                                    const BigInt& g_Y);

struct IntegralityVerdict {
  bool guaranteed = false;
  /// "p does not divide 2g-2", "g below threshold" or "inconclusive".
  std::string reason;
};

IntegralityVerdict integrality_criteria(std::uint32_t p, const BigInt& g);

/// a x^2 + b y^2 + c z^2 + alpha yz + beta zx + gamma xy.
struct ConicForm {
  FieldElement a, b, c, alpha, beta, gamma;
};

enum class ConicTag { SmoothOddChar, SmoothMixedTerm, NonSmoothRegular, NotReduced, IntermediateDegree2, NotApplicable };

const char* to_string(ConicTag tag) noexcept;

struct ConicClass {
  ConicTag tag = ConicTag::NotApplicable;
  std::string reason;
  /// Regularity of the conic is assumed, not checked.
  bool regularity_assumed = true;
  std::optional<IndependenceCertificate> independence;
};

ConicClass classify_conic(const FieldRegistry& reg, const ConicForm& form);

/// The admissible (gamma, ell, m) triples of a non-smooth regular genus-one curve.
bool genus_one_table_check(std::uint32_t p, unsigned gamma, unsigned ell, unsigned m);
std::vector<std::array<unsigned, 3>> genus_one_table(std::uint32_t p);

/// Bound on deg H for the genus-one curves; throws NotApplicable unless p is 2 or 3.
BigRational genus_one_degree_bound(std::uint32_t p, unsigned M);

/// k = F_p(s, t) and K = k^(1/p) = F_p(s_rt<p>, t_rt<p>), where avoided points live.
struct PFermatFields {
  std::uint32_t p = 2;
  FieldId k = 0;
  FieldId K = 0;
};

PFermatFields pfermat_fields(FieldRegistry& reg, std::uint32_t p);

using ProjectivePoint = std::array<RatFunc, 3>;

/// True when the two triples agree up to a nonzero scalar.
bool same_projective_point(const ProjectivePoint& x, const ProjectivePoint& y);

struct PFermatOptions {
  /// Only this a (an element of k) is tried when set.
  std::optional<RatFunc> a;
  std::vector<ProjectivePoint> avoid;
  std::size_t search_bound = 64;
};

struct PFermatRejection {
  RatFunc a;
  std::string reason;
};

struct DecompositionReport {
  std::uint32_t p = 2;
  RatFunc a;
  /// l = k((s - a^p t)^(1/p)) = F_p(v, t).
  FieldId l = 0;
  FieldId k_prime = 0;
  RatFunc v_pth_power;
  /// x' = x, y' = a x + y, z' = v x + z.
  bool identity_holds = false;
  std::string transformed_form;
  ProjectivePoint singular_point;  // [1:0:0] in the primed coordinates, over l
  ProjectivePoint fingerprint;     // [1:a:v] over l
  ProjectivePoint fingerprint_K;   // the same point over K
  unsigned degree_log_l_over_k = 0;
  unsigned degree_log_kprime_over_l = 0;
  std::size_t candidates_tried = 0;
  std::vector<PFermatRejection> rejected;
};

DecompositionReport pfermat_decomposition(FieldRegistry& reg, const PFermatFields& fields,
                                          const PFermatOptions& options = {});

}  // namespace fermatci

#endif  // FERMATCI_CURVES_HPP
