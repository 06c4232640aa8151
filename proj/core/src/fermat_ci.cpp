#include "fermatci/fermat_ci.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "fermatci/errors.hpp"

namespace fermatci {

namespace {

std::string index_label(const char* prefix, std::size_t i, std::size_t j) {
  return std::string(prefix) + std::to_string(i) + std::to_string(j);
}

std::vector<std::vector<std::string>> default_labels(unsigned r, unsigned N) {
  std::vector<std::vector<std::string>> out(r);
  for (unsigned i = 0; i < r; ++i) {
    for (unsigned j = 0; j <= N; ++j) out[i].push_back(index_label("s", i + 1, j));
  }
  return out;
}

FermatCI lift_ci(const FieldRegistry& reg, const FermatCI& ci, FieldId target) {
  if (ci.field == target) return ci;
  FermatCI out = ci;
  out.field = target;
  for (auto& row : out.coeffs) {
    for (RatFunc& c : row) c = lift(reg, FieldElement{ci.field, c}, target).value;
  }
  return out;
}

/// sum_j row[j] * y_j^q with row[j] already in the coordinate field.
FormPoly fermat_form(const TowerField& f, const std::vector<RatFunc>& row, std::uint64_t q) {
  FormPoly out(f.prime(), f.gen_count(), row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    out = out + FormPoly::monomial(row[j], row.size(), j, static_cast<Exponent>(q));
  }
  return out;
}

IdentityCheck check_zero(std::string name, const FormPoly& residual) {
  return IdentityCheck{std::move(name), residual.is_zero(), residual.term_count()};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw CertificateFailure(what);
}

}  // namespace

std::uint64_t FermatCI::q() const {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) out *= p;
  return out;
}

std::vector<FieldElement> FermatCI::all_coefficients() const {
  std::vector<FieldElement> out;
  for (const auto& row : coeffs) {
    for (const RatFunc& c : row) out.push_back(FieldElement{field, c});
  }
  return out;
}

FermatCI make_fermat_ci(const FieldRegistry& reg, FieldId field, unsigned e, unsigned N, unsigned r,
                        RatMatrix coeffs, std::vector<std::vector<std::string>> labels) {
  const TowerField& f = reg.field(field);
  if (N == 0) throw StructuralError("ambient dimension N must be at least 1");
  if (r >= N) throw StructuralError("need 0 <= r < N, got r = " + std::to_string(r) + ", N = " + std::to_string(N));
  if (coeffs.size() != r) throw StructuralError("expected " + std::to_string(r) + " coefficient rows");
  if (e > 0) {
    // q must fit comfortably in an exponent.
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
      q *= f.characteristic();
      if (q > (1u << 20)) throw StructuralError("q = p^e is too large");
    }
  }
  for (const auto& row : coeffs) {
    if (row.size() != N + 1) throw StructuralError("each coefficient row needs N + 1 entries");
    for (const RatFunc& c : row) {
      if (c.nvars() != f.gen_count() || !(c.field() == f.prime())) {
        throw StructuralError("coefficient does not belong to the base field");
      }
    }
  }
  if (labels.empty()) labels = default_labels(r, N);
  if (labels.size() != r) throw StructuralError("label rows do not match coefficient rows");
  for (const auto& row : labels) {
    if (row.size() != N + 1) throw StructuralError("label row has the wrong length");
  }
  return FermatCI{field, f.characteristic(), e, N, r, std::move(coeffs), std::move(labels)};
}

FermatCI generic_fermat_ci(FieldRegistry& reg, std::uint32_t p, unsigned e, unsigned N, unsigned r) {
  auto labels = default_labels(r, N);
  std::vector<std::string> gens;
  for (const auto& row : labels) gens.insert(gens.end(), row.begin(), row.end());
  FieldId k = reg.add_base(PrimeField(p), gens);
  const TowerField& f = reg.field(k);
  RatMatrix coeffs(r);
  std::size_t g = 0;
  for (unsigned i = 0; i < r; ++i) {
    for (unsigned j = 0; j <= N; ++j) coeffs[i].push_back(f.gen(g++));
  }
  return make_fermat_ci(reg, k, e, N, r, std::move(coeffs), std::move(labels));
}

std::vector<FormPoly> defining_forms(const FieldRegistry& reg, const FermatCI& ci) {
  const TowerField& f = reg.field(ci.field);
  std::vector<FormPoly> out;
  for (const auto& row : ci.coeffs) out.push_back(fermat_form(f, row, ci.q()));
  return out;
}

ValidityCertificate validate(const FieldRegistry& reg, const FermatCI& ci) {
  ValidityCertificate cert;
  if (ci.r == 0) {
    cert.trivial = cert.independent = cert.rank_ok = cert.valid = true;
    return cert;
  }
  cert.independence = p_independence(reg, ci.field, ci.all_coefficients());
  cert.independent = cert.independence->independent;
  cert.coefficient_rank = rank_over_field(ci.coeffs);
  cert.rank_ok = cert.coefficient_rank == ci.r;
  cert.valid = cert.independent && cert.rank_ok;
  return cert;
}

JacobianCertificate jacobian_regularity_certificate(const FieldRegistry& reg, const FermatCI& ci) {
  JacobianCertificate cert;
  if (ci.r == 0) {
    cert.vacuous = cert.constant_entries = cert.is_identity = cert.pass = true;
    return cert;
  }
  const TowerField& f = reg.field(ci.field);
  const auto coeffs = ci.all_coefficients();
  IndependenceCertificate ind = p_independence(reg, ci.field, coeffs);
  if (!ind.independent) throw StructuralError("Jacobian certificate needs p-independent coefficients");

  const std::size_t width = ci.N + 1;
  std::vector<FormPoly> forms = defining_forms(reg, ci);
  cert.constant_entries = true;
  cert.is_identity = true;
  cert.minor.assign(ci.r, std::vector<RatFunc>(ci.r, f.zero()));
  for (unsigned ip = 0; ip < ci.r; ++ip) {
    std::vector<RatFunc> rhs(coeffs.size(), f.zero());
    rhs[ip * width] = f.one();
    auto lambda = solve(ind.jacobian, rhs);
    if (!lambda) throw CertificateFailure("no derivation dual to s_" + std::to_string(ip + 1) + "0");
    cert.derivations.push_back(*lambda);

    auto derive = [&](const RatFunc& c) {
      RatFunc acc = f.zero();
      for (std::size_t g = 0; g < f.gen_count(); ++g) {
        if ((*lambda)[g].is_zero() || !c.depends_on(g)) continue;
        acc += (*lambda)[g] * c.partial(g);
      }
      return acc;
    };
    for (unsigned i = 0; i < ci.r; ++i) {
      // x_0 = 1 turns the x_0 term into its coefficient; the others keep x_j^q.
      FormPoly image = forms[i].map_coefficients(f.gen_count(), derive);
      RatFunc constant = f.zero();
      for (const auto& [m, c] : image.terms()) {
        bool only_x0 = true;
        for (std::size_t j = 1; j < m.nvars(); ++j) {
          if (m[j] != 0) only_x0 = false;
        }
        if (only_x0) {
          constant += c;
        } else {
          cert.constant_entries = false;
        }
      }
      cert.minor[i][ip] = constant;
      if (!(constant == (i == ip ? f.one() : f.zero()))) cert.is_identity = false;
    }
  }
  cert.pass = cert.constant_entries && cert.is_identity;
  return cert;
}

bool ElementalStep::passed() const {
  bool ok = child_validity.valid && step_independence.rank == expected_step_rank;
  for (const auto& c : identities) ok = ok && c.holds;
  return ok;
}

namespace {

ElementalStep step_impl(FieldRegistry& reg, const FermatCI& ci, bool parent_checked) {
  if (ci.r == 0) throw StructuralError("elemental step needs r >= 1");
  if (ci.e == 0) throw StructuralError("elemental step needs e >= 1");
  if (!parent_checked) {
    auto v = validate(reg, ci);
    if (!v.valid) throw CertificateFailure("input is not a valid p-Fermat complete intersection");
  }
  ElementalStep step;
  step.parent = ci;
  const unsigned N = ci.N;
  const unsigned r = ci.r;
  const unsigned e = ci.e;
  const std::uint64_t q = ci.q();

  // Present k so the first row consists of generators.
  std::vector<FieldElement> row1;
  for (unsigned j = 0; j <= N; ++j) row1.push_back(ci.coefficient(0, j));
  Reparametrization rep = reparametrize(reg, ci.field, row1, ci.labels[0]);
  step.pivot_form = lift_ci(reg, ci, rep.field);
  const FieldId k = rep.field;

  // l = k(s_11^(1/q), ..., s_1N^(1/q)).
  std::vector<FieldElement> targets;
  for (unsigned j = 1; j <= N; ++j) targets.push_back(step.pivot_form.coefficient(0, j));
  Adjunction adj = adjoin_qth_roots(reg, k, targets, e);
  step.l = adj.field;
  const TowerField& l = reg.field(step.l);
  const FermatCI S = lift_ci(reg, step.pivot_form, step.l);
  const auto& s = S.coeffs;

  const RatFunc t10 = s[0][0] / s[0][1];
  step.t10 = FieldElement{step.l, t10};
  for (unsigned i = 1; i < r; ++i) {
    std::vector<RatFunc> row;
    row.push_back(s[i][1] - s[i][0] / t10);
    for (unsigned j = 2; j <= N; ++j) row.push_back(s[i][j] - s[i][1] * s[0][j] / s[0][1]);
    step.T.push_back(std::move(row));
  }

  // c_j = (s_1j / s_11)^(1/q) = sigma_j / sigma_1.
  step.sigma.field = step.l;
  for (unsigned j = 2; j <= N; ++j) {
    auto c = (s[0][j] / s[0][1]).pth_root(e);
    require(c.has_value(), "s_1" + std::to_string(j) + "/s_11 has no q-th root in l");
    step.sigma.shift.push_back(*c);
  }

  // sigma(x_1) = y_1 - sum c_j y_j, sigma(x_j) = y_j otherwise.
  const std::size_t nv = N + 1;
  const std::size_t cv = l.gen_count();
  const PrimeField& fp = l.prime();
  FormPoly x1 = FormPoly::variable(fp, cv, nv, 1);
  for (unsigned j = 2; j <= N; ++j) {
    x1 = x1 - FormPoly::variable(fp, cv, nv, j).scaled(step.sigma.shift[j - 2]);
  }
  const FormPoly x1q = x1.frobenius(e);
  auto sigma_form = [&](const std::vector<RatFunc>& row) {
    FormPoly out = x1q.scaled(row[1]);
    for (unsigned j = 0; j <= N; ++j) {
      if (j == 1) continue;
      out = out + FormPoly::monomial(row[j], nv, j, static_cast<Exponent>(q));
    }
    return out;
  };
  const FormPoly g1 = FormPoly::monomial(t10, nv, 0, static_cast<Exponent>(q)) +
                      FormPoly::monomial(l.one(), nv, 1, static_cast<Exponent>(q));
  step.identities.push_back(
      check_zero("sigma(f_1)/s_11 = t_10 y_0^q + y_1^q", sigma_form(s[0]).scaled(s[0][1].inverse()) - g1));
  for (unsigned i = 1; i < r; ++i) {
    std::vector<RatFunc> grow(nv, l.zero());
    for (unsigned j = 1; j <= N; ++j) grow[j] = step.T[i - 1][j - 1];
    FormPoly gi = fermat_form(l, grow, q);
    FormPoly residual = sigma_form(s[i]) - g1.scaled(s[i][0] / t10) - gi;
    step.identities.push_back(check_zero("sigma(f_" + std::to_string(i + 1) + ") = s_" +
                                             std::to_string(i + 1) + "0/t_10 g_1 + g_" +
                                             std::to_string(i + 1),
                                         residual));
  }

  // k' = l(t_10^(1/q)).
  Adjunction ext = adjoin_qth_roots(reg, step.l, {step.t10}, e, {fresh_name("tau", l.gens())});
  step.k_prime = ext.field;
  const TowerField& kp = reg.field(step.k_prime);
  const RatFunc tau = ext.roots.front();
  step.sigma.normalization_field = step.k_prime;
  step.sigma.normalization = -tau.inverse();
  {
    FormPoly g1k = g1.map_coefficients(kp.gen_count(), [&](const RatFunc& c) {
      return lift(reg, FieldElement{step.l, c}, step.k_prime).value;
    });
    std::vector<FormPoly> images;
    images.push_back(FormPoly::variable(fp, kp.gen_count(), nv, 1).scaled(*step.sigma.normalization));
    for (std::size_t j = 1; j < nv; ++j) images.push_back(FormPoly::variable(fp, kp.gen_count(), nv, j));
    step.identities.push_back(check_zero("g_1(-y_1/tau, y_1, ...) = 0", g1k.substitute(images)));
  }

  // Child over k' in the coordinates y_1..y_N.
  RatMatrix child_coeffs;
  std::vector<std::vector<std::string>> child_labels;
  std::vector<std::string> taken = kp.gens();
  for (unsigned i = 1; i < r; ++i) {
    std::vector<RatFunc> row;
    std::vector<std::string> names;
    for (unsigned j = 1; j <= N; ++j) {
      row.push_back(lift(reg, FieldElement{step.l, step.T[i - 1][j - 1]}, step.k_prime).value);
      std::string nm = fresh_name(index_label("t", i + 1, j), taken);
      taken.push_back(nm);
      names.push_back(std::move(nm));
    }
    child_coeffs.push_back(std::move(row));
    child_labels.push_back(std::move(names));
  }
  step.child = make_fermat_ci(reg, step.k_prime, e, N - 1, r - 1, std::move(child_coeffs), std::move(child_labels));
  step.child_validity = validate(reg, step.child);

  std::vector<FieldElement> cert_elems{step.t10};
  for (const auto& row : step.T) {
    for (const RatFunc& t : row) cert_elems.push_back(FieldElement{step.l, t});
  }
  step.step_independence = p_independence(reg, step.l, cert_elems);
  step.expected_step_rank = static_cast<std::size_t>(N) * (r - 1) + 1;

  step.internal_degree_log = reg.degree_log_between(k, step.l);
  step.external_degree_log = reg.degree_log_between(step.l, step.k_prime);

  for (const auto& c : step.identities) require(c.holds, "identity failed: " + c.name);
  require(step.step_independence.rank == step.expected_step_rank,
          "t_10 and T have rank " + std::to_string(step.step_independence.rank) + ", expected " +
              std::to_string(step.expected_step_rank));
  require(step.child_validity.valid, "child complete intersection is not valid");
  require(step.internal_degree_log == N * e, "unexpected degree of l over k");
  require(step.external_degree_log == e, "unexpected degree of k' over l");
  return step;
}

}  // namespace

ElementalStep elemental_step(FieldRegistry& reg, const FermatCI& ci) { return step_impl(reg, ci, false); }

unsigned ExtensionChain::external_degree_log_sum() const {
  unsigned total = 0;
  for (const auto& s : steps) total += s.external_degree_log;
  return total;
}

ExtensionChain build_chain(FieldRegistry& reg, const FermatCI& ci) {
  ExtensionChain chain;
  chain.initial = ci;
  chain.initial_validity = validate(reg, ci);
  if (!chain.initial_validity.valid) {
    throw CertificateFailure("input is not a valid p-Fermat complete intersection");
  }
  FermatCI cur = ci;
  if (ci.e > 0) {
    while (cur.r > 0) {
      chain.steps.push_back(step_impl(reg, cur, true));
      cur = chain.steps.back().child;
    }
  }
  chain.terminal_field = cur.field;
  chain.terminal_dimension = cur.N - cur.r;
  return chain;
}

FrobeniusReduction frobenius_reduction(FieldRegistry& reg, const FermatCI& ci, unsigned d) {
  if (d > ci.e) throw StructuralError("Frobenius reduction by d > e");
  FrobeniusReduction out;
  out.d = d;
  FieldId target = ci.field;
  RatMatrix roots = ci.coeffs;
  if (d > 0) {
    const TowerField& k = reg.field(ci.field);
    std::vector<FieldElement> gens;
    for (std::size_t g = 0; g < k.gen_count(); ++g) gens.push_back(FieldElement{ci.field, k.gen(g)});
    target = adjoin_qth_roots(reg, ci.field, gens, d).field;
    for (auto& row : roots) {
      for (RatFunc& c : row) {
        auto root = lift(reg, FieldElement{ci.field, c}, target).value.pth_root(d);
        require(root.has_value(), "coefficient has no p^d-th root in k^(1/p^d)");
        c = *root;
      }
    }
  }
  out.reduced = make_fermat_ci(reg, target, ci.e - d, ci.N, ci.r, std::move(roots), ci.labels);
  out.independence = p_independence(reg, target, out.reduced.all_coefficients());
  require(out.independence.independent || ci.r == 0, "reduced coefficients are not p-independent");
  out.linear = out.reduced.e == 0;
  out.reduced_dimension = ci.N - ci.r;
  return out;
}

FermatCI homogenize_parameters(FieldRegistry& reg, const FermatCI& affine) {
  std::vector<std::set<std::size_t>> units(affine.r);
  bool any = false;
  for (unsigned i = 0; i < affine.r; ++i) {
    for (unsigned j = 0; j <= affine.N; ++j) {
      if (affine.coeffs[i][j].is_one()) units[i].insert(j);
    }
    any = any || !units[i].empty();
  }
  if (!any) return affine;
  std::optional<std::size_t> column;
  for (unsigned i = 0; i < affine.r; ++i) {
    if (units[i].size() != 1) throw StructuralError("row " + std::to_string(i + 1) + " has no single unit coefficient");
    if (column && *column != *units[i].begin()) throw StructuralError("unit coefficients sit in different columns");
    column = *units[i].begin();
  }
  std::vector<std::string> names;
  if (affine.r == 1) {
    names.push_back("u");
  } else {
    for (unsigned i = 0; i < affine.r; ++i) names.push_back("u" + std::to_string(i + 1));
  }
  FieldId k = adjoin_transcendentals(reg, affine.field, names);
  const TowerField& f = reg.field(k);
  FermatCI lifted = lift_ci(reg, affine, k);
  const std::size_t first_new = f.gen_count() - affine.r;
  for (unsigned i = 0; i < affine.r; ++i) {
    for (RatFunc& c : lifted.coeffs[i]) c *= f.gen(first_new + i);
  }
  return make_fermat_ci(reg, k, affine.e, affine.N, affine.r, std::move(lifted.coeffs), affine.labels);
}

}  // namespace fermatci
