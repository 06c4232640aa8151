#include "fermatci/curves.hpp"

#include <algorithm>

#include "fermatci/errors.hpp"
#include "fermatci/form_poly.hpp"

namespace fermatci {

namespace {

BigInt big_pow(std::uint64_t base, unsigned exp) { return boost::multiprecision::pow(BigInt(base), exp); }

}  // namespace

BigInt ci_curve_genus(std::uint32_t p, unsigned e, unsigned N, unsigned r) {
  if (N < 2 || r + 1 != N) throw StructuralError("genus needs a curve: r = N - 1 and N >= 2");
  if (!is_prime(p)) throw StructuralError("characteristic must be prime");
  const BigInt q = big_pow(p, e);
  // 2g - 2 = q^(N-1) ((N-1) q - (N+1))
  BigInt two_g_minus_two = boost::multiprecision::pow(q, N - 1) * ((N - 1) * q - (N + 1));
  BigInt twice = two_g_minus_two + 2;
  if (twice < 0 || twice % 2 != 0) throw ArithmeticError("genus formula produced a non-integer genus");
  return twice / 2;
}

GenusChangeCheck genus_change_check(std::uint32_t p, unsigned epsilon, unsigned gamma, const BigInt& g_X,
                                    const BigInt& g_Y) {
  if (p < 2) throw StructuralError("characteristic must be at least 2");
  if (gamma == 0) throw NotApplicable("genus change needs a curve that is not geometrically normal (gamma >= 1)");
  if (g_X < 0 || g_Y < 0) throw StructuralError("genus must be non-negative");
  GenusChangeCheck out;
  out.p = p;
  out.epsilon = epsilon;
  out.gamma = gamma;
  out.g_X = g_X;
  out.g_Y = g_Y;
  BigRational rhs(BigInt(2 * g_X - 2), big_pow(p, epsilon));
  out.sum_deg = (rhs - BigRational(2 * g_Y - 2)) / BigRational(p - 1);
  out.consistent = boost::multiprecision::denominator(out.sum_deg) == 1 && out.sum_deg > 0 &&
                   out.sum_deg >= BigRational(gamma);
  return out;
}

IntegralityVerdict integrality_criteria(std::uint32_t p, const BigInt& g) {
  if (g < 0) throw StructuralError("genus must be non-negative");
  BigInt two_g_minus_two = 2 * g - 2;
  if (two_g_minus_two % p != 0) return {true, "p does not divide 2g-2"};
  BigInt threshold = BigInt(p - 1) * (p - 2) / 2;
  if (g < threshold) return {true, "g below threshold (p-1)(p-2)/2"};
  return {false, "inconclusive"};
}

const char* to_string(ConicTag tag) noexcept {
  switch (tag) {
    case ConicTag::SmoothOddChar: return "SmoothOddChar";
    case ConicTag::SmoothMixedTerm: return "SmoothMixedTerm";
    case ConicTag::NonSmoothRegular: return "NonSmoothRegular";
    case ConicTag::NotReduced: return "NotReduced";
    case ConicTag::IntermediateDegree2: return "IntermediateDegree2";
    case ConicTag::NotApplicable: return "NotApplicable";
  }
  return "?";
}

ConicClass classify_conic(const FieldRegistry& reg, const ConicForm& form) {
  const std::array<const FieldElement*, 6> all{&form.a, &form.b, &form.c, &form.alpha, &form.beta, &form.gamma};
  const FieldId k = form.a.field;
  for (const FieldElement* x : all) {
    if (x->field != k) throw StructuralError("conic coefficients from different fields");
    if (x->value.nvars() != reg.field(k).gen_count()) throw StructuralError("conic coefficient does not match its field");
  }
  ConicClass out;
  const std::uint32_t p = reg.field(k).characteristic();
  if (p != 2) {
    out.tag = ConicTag::SmoothOddChar;
    out.reason = "odd characteristic";
    return out;
  }
  if (!form.alpha.value.is_zero() || !form.beta.value.is_zero() || !form.gamma.value.is_zero()) {
    out.tag = ConicTag::SmoothMixedTerm;
    out.reason = "a mixed term is present";
    return out;
  }
  if (form.a.value.is_zero() || form.b.value.is_zero() || form.c.value.is_zero()) {
    out.tag = ConicTag::NotApplicable;
    out.reason = "one of a, b, c vanishes";
    return out;
  }
  const RatFunc& c = form.c.value;
  out.independence = p_independence(reg, k, {FieldElement{k, form.a.value / c}, FieldElement{k, form.b.value / c}});
  switch (out.independence->rank) {
    case 2:
      out.tag = ConicTag::NonSmoothRegular;
      out.reason = "a/c, b/c p-independent: square roots generate a degree 4 extension";
      break;
    case 0:
      out.tag = ConicTag::NotReduced;
      out.reason = "a/c, b/c are squares: the form is a square";
      break;
    default:
      out.tag = ConicTag::IntermediateDegree2;
      out.reason = "a/c, b/c span a degree 2 extension";
      break;
  }
  return out;
}

std::vector<std::array<unsigned, 3>> genus_one_table(std::uint32_t p) {
  if (p == 2) return {{1, 1, 0}, {1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {2, 2, 2}};
  if (p == 3) return {{1, 1, 0}, {1, 1, 1}};
  return {};
}

bool genus_one_table_check(std::uint32_t p, unsigned gamma, unsigned ell, unsigned m) {
  const auto table = genus_one_table(p);
  return std::find(table.begin(), table.end(), std::array<unsigned, 3>{gamma, ell, m}) != table.end();
}

BigRational genus_one_degree_bound(std::uint32_t p, unsigned M) {
  if (M == 0) throw StructuralError("degree of imperfection must be at least 1");
  const BigInt pm = big_pow(p, M);
  if (p == 2) return BigRational(5 * pm * pm);
  if (p == 3) return BigRational(5 * pm, 3);
  throw NotApplicable("genus-one degree bounds exist only for p = 2 and p = 3");
}

PFermatFields pfermat_fields(FieldRegistry& reg, std::uint32_t p) {
  PFermatFields out;
  out.p = p;
  out.k = reg.add_base(PrimeField(p), {"s", "t"});
  const TowerField& k = reg.field(out.k);
  out.K = adjoin_qth_roots(reg, out.k, {FieldElement{out.k, k.gen(0)}, FieldElement{out.k, k.gen(1)}}, 1).field;
  return out;
}

bool same_projective_point(const ProjectivePoint& x, const ProjectivePoint& y) {
  auto zero = [](const ProjectivePoint& pt) {
    return std::all_of(pt.begin(), pt.end(), [](const RatFunc& c) { return c.is_zero(); });
  };
  if (zero(x) || zero(y)) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (!(x[i] * y[j] - x[j] * y[i]).is_zero()) return false;
    }
  }
  return true;
}

namespace {

std::vector<RatFunc> candidate_list(const TowerField& k, std::size_t bound, const std::optional<RatFunc>& fixed) {
  if (fixed) return {*fixed};
  std::vector<RatFunc> out;
  for (std::uint32_t c = 0; c < k.characteristic() && out.size() < bound; ++c) out.push_back(k.constant(c));
  for (unsigned d = 1; out.size() < bound; ++d) {
    for (unsigned i = d + 1; i-- > 0 && out.size() < bound;) {
      out.push_back(k.gen(0).pow(i) * k.gen(1).pow(d - i));
    }
  }
  return out;
}

}  // namespace

DecompositionReport pfermat_decomposition(FieldRegistry& reg, const PFermatFields& fields,
                                          const PFermatOptions& options) {
  const TowerField& k = reg.field(fields.k);
  const TowerField& K = reg.field(fields.K);
  const std::uint32_t p = fields.p;
  if (options.a && (options.a->nvars() != 2 || !(options.a->field() == k.prime()))) {
    throw StructuralError("parameter a must be an element of F_p(s, t)");
  }
  for (const auto& pt : options.avoid) {
    for (const RatFunc& c : pt) {
      if (c.nvars() != K.gen_count()) throw StructuralError("avoided points must have coordinates in k^(1/p)");
    }
  }
  const RatFunc s = k.gen(0);
  const RatFunc t = k.gen(1);
  DecompositionReport rep;
  rep.p = p;
  for (const RatFunc& a : candidate_list(k, options.search_bound, options.a)) {
    ++rep.candidates_tried;
    const RatFunc rel = s - a.frobenius(1) * t;
    RebaseResult rb;
    try {
      rb = rebase(reg, fields.k, {RebaseSlot{"v", rel}, RebaseSlot{"t", std::nullopt}});
    } catch (const NoRewriting& err) {
      if (options.a) throw;
      rep.rejected.push_back({a, "not admissible: " + std::string(err.what())});
      continue;
    }
    const TowerField& l = reg.field(rb.field);
    const RatFunc a_l = lift(reg, FieldElement{fields.k, a}, rb.field).value;
    const RatFunc v = l.gen(0);

    // l -> K: v = S - a T, t = T^p.
    const RatFunc a_K = lift(reg, FieldElement{fields.k, a}, fields.K).value;
    const std::vector<RatFunc> to_K{K.gen(0) - a_K * K.gen(1), K.gen(1).frobenius(1)};
    ProjectivePoint fp{l.one(), a_l, v};
    ProjectivePoint fp_K{K.one(), a_K, v.substitute(to_K)};
    auto hit = std::find_if(options.avoid.begin(), options.avoid.end(),
                            [&](const ProjectivePoint& q) { return same_projective_point(fp_K, q); });
    if (hit != options.avoid.end()) {
      if (options.a) throw SearchExhausted("the non-regular point for the given a is avoided");
      rep.rejected.push_back({a, "non-regular point collides with an avoided point"});
      continue;
    }

    const PrimeField& fpf = l.prime();
    const std::size_t cv = l.gen_count();
    const FormPoly x = FormPoly::variable(fpf, cv, 3, 0);
    const FormPoly y = FormPoly::variable(fpf, cv, 3, 1);
    const FormPoly z = FormPoly::variable(fpf, cv, 3, 2);
    const RatFunc s_l = lift(reg, FieldElement{fields.k, s}, rb.field).value;
    const RatFunc t_l = lift(reg, FieldElement{fields.k, t}, rb.field).value;
    // Old coordinates in the new ones: x = x', y = y' - a x', z = z' - v x'.
    const FormPoly xo = x;
    const FormPoly yo = y - x.scaled(a_l);
    const FormPoly zo = z - x.scaled(v);
    FormPoly original = xo.pow(p).scaled(s_l) + yo.pow(p).scaled(t_l) + zo.pow(p);
    FormPoly expected = y.pow(p).scaled(t_l) + z.pow(p);

    rep.a = a;
    rep.l = rb.field;
    rep.v_pth_power = rel;
    rep.identity_holds = original == expected;
    const std::vector<std::string> coords{"x'", "y'", "z'"};
    rep.transformed_form = original.to_string(l.gens(), coords);
    rep.singular_point = ProjectivePoint{l.one(), l.zero(), l.zero()};
    rep.fingerprint = fp;
    rep.fingerprint_K = fp_K;
    rep.k_prime = adjoin_qth_roots(reg, rb.field, {FieldElement{rb.field, t_l}}, 1).field;
    rep.degree_log_l_over_k = reg.degree_log_between(fields.k, rb.field);
    rep.degree_log_kprime_over_l = reg.degree_log_between(rb.field, rep.k_prime);
    if (!rep.identity_holds) throw CertificateFailure("transformed form is not t y'^p + z'^p");
    return rep;
  }
  throw SearchExhausted("no admissible a among " + std::to_string(rep.candidates_tried) + " candidates");
}

}  // namespace fermatci
