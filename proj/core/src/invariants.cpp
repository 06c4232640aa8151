#include "fermatci/invariants.hpp"

#include <algorithm>

#include "fermatci/errors.hpp"

namespace fermatci {

DegreeArithmetic degree_arithmetic(std::uint32_t p, unsigned N, unsigned r) {
  if (p < 2) throw StructuralError("characteristic must be prime");
  DegreeArithmetic out;
  const auto n = static_cast<std::int64_t>(N);
  const auto rr = static_cast<std::int64_t>(r);
  out.lhs = -(n + 1) + rr * static_cast<std::int64_t>(p);
  out.ky = -(n - rr + 1);
  const std::int64_t diff = out.lhs - out.ky;
  const auto den = static_cast<std::int64_t>(p) - 1;
  // floor division; diff is r (p - 1) here, but stay general.
  out.upper = diff >= 0 ? diff / den : -((-diff + den - 1) / den);
  return out;
}

unsigned epsilon_of_chain(const ExtensionChain& chain) {
  unsigned eps = chain.external_degree_log_sum();
  unsigned expected = chain.initial.e * static_cast<unsigned>(chain.steps.size());
  if (chain.initial.e > 0 && chain.steps.size() != chain.initial.r) {
    throw CertificateFailure("chain has " + std::to_string(chain.steps.size()) + " steps, expected " +
                             std::to_string(chain.initial.r));
  }
  if (eps != expected) {
    throw CertificateFailure("epsilon " + std::to_string(eps) + " differs from e * r = " + std::to_string(expected));
  }
  return eps;
}

GammaBounds gamma_bounds(const ExtensionChain& chain) {
  GammaBounds out;
  for (const auto& s : chain.steps) {
    if (s.external_degree_log > 0) ++out.lower;
  }
  if (chain.initial.e == 1) {
    DegreeArithmetic a = degree_arithmetic(chain.initial.p, chain.initial.N, chain.initial.r);
    if (a.upper < 0) throw CertificateFailure("negative upper bound for gamma");
    out.upper = static_cast<unsigned>(a.upper);
    out.arithmetic = a;
  }
  return out;
}

std::vector<FrobeniusReduction> frobenius_trail(FieldRegistry& reg, const FermatCI& ci) {
  std::vector<FrobeniusReduction> trail;
  if (ci.r == 0 || ci.e == 0) return trail;
  for (unsigned d = 1; d <= ci.e; ++d) {
    trail.push_back(frobenius_reduction(reg, ci, d));
    if (trail.back().linear) break;
  }
  return trail;
}

namespace {

unsigned length_from_trail(const FermatCI& ci, const std::vector<FrobeniusReduction>& trail) {
  if (ci.r == 0 || ci.e == 0) return 0;
  unsigned found = trail.empty() || !trail.back().linear ? 0 : trail.back().d;
  if (found != ci.e) {
    throw CertificateFailure("least linearizing Frobenius twist is " + std::to_string(found) + ", expected " +
                             std::to_string(ci.e));
  }
  return found;
}

}  // namespace

std::pair<unsigned, unsigned> frobenius_lengths(FieldRegistry& reg, const FermatCI& ci) {
  unsigned len = length_from_trail(ci, frobenius_trail(reg, ci));
  return {len, len};
}

std::vector<ConstraintCheck> constraint_checks(const InvariantReport& rep) {
  std::vector<ConstraintCheck> out;
  out.push_back({"m <= ell", rep.m <= rep.ell, true, ""});
  // gamma itself may be unknown; compare against what is known from above.
  if (rep.gamma_exact) {
    out.push_back({"ell <= gamma", rep.ell <= *rep.gamma_exact, true, "gamma exact"});
  } else if (rep.gamma_upper) {
    out.push_back({"ell <= gamma", rep.ell <= *rep.gamma_upper, true, "against the upper bound"});
  } else {
    out.push_back({"ell <= gamma", true, false,
                   "gamma >= " + std::to_string(std::max(rep.gamma_lower, rep.ell)) + " implied"});
  }
  const bool has_m = rep.deg_imperfection >= 1;
  out.push_back({"epsilon <= m (M - 1)",
                 !has_m || rep.epsilon <= static_cast<unsigned long>(rep.m) * (rep.deg_imperfection - 1), has_m, ""});
  out.push_back({"epsilon = 0 iff m = 0", (rep.epsilon == 0) == (rep.m == 0), true, ""});
  out.push_back({"gamma = 0 iff ell = 0", (rep.gamma_lower == 0) == (rep.ell == 0), true, ""});
  return out;
}

bool InvariantReport::constraints_hold() const {
  for (const auto& c : constraints) {
    if (c.applicable && !c.holds) return false;
  }
  return true;
}

InvariantReport compute_invariants(FieldRegistry& reg, const FermatCI& ci, const ExtensionChain& chain) {
  InvariantReport rep;
  rep.epsilon = epsilon_of_chain(chain);
  GammaBounds g = gamma_bounds(chain);
  rep.gamma_lower = g.lower;
  rep.gamma_upper = g.upper;
  rep.gamma_arithmetic = g.arithmetic;
  if (g.upper && *g.upper == g.lower) rep.gamma_exact = g.lower;
  rep.frobenius_trail = frobenius_trail(reg, ci);
  rep.ell = rep.m = length_from_trail(ci, rep.frobenius_trail);
  rep.deg_imperfection = static_cast<unsigned>(reg.field(ci.field).gen_count());
  rep.constraints = constraint_checks(rep);
  return rep;
}

BigInt qgor_index(std::uint32_t p, unsigned ell, const BigInt& n) {
  if (n < 1) throw StructuralError("index multiplier must be positive");
  return n * boost::multiprecision::pow(BigInt(p), ell);
}

}  // namespace fermatci
