#include "fermatci_app/runner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fermatci/curves.hpp"
#include "fermatci/errors.hpp"
#include "fermatci/fermat_ci.hpp"
#include "fermatci/invariants.hpp"
#include "fermatci_app/report.hpp"

namespace fermatci::app {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::CertificateFailure: return "certificate-failure";
    case Status::InputError: return "input-error";
    case Status::InternalError: return "internal-error";
  }
  return "?";
}

Status worst(Status a, Status b) noexcept { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

int exit_code(Status s) noexcept { return static_cast<int>(s); }

namespace {

bool needs_ci(Command c) {
  return c == Command::Validate || c == Command::Chain || c == Command::Invariants || c == Command::GenusChange;
}

bool is_curve(const JobSpec& job) { return job.has_ci() && *job.N >= 2 && *job.r + 1 == *job.N && *job.e >= 1; }

std::vector<Command> dependencies(Command c, const JobSpec& job) {
  switch (c) {
    case Command::Chain: return {Command::Validate};
    case Command::Invariants: return {Command::Chain};
    case Command::GenusChange: return {Command::Invariants};
    case Command::Bounds:
      if (job.has_ci()) return {Command::Invariants};
      return {};
    default: return {};
  }
}

Json ci_json(const FieldRegistry& reg, const FermatCI& ci) {
  Json j;
  j["field"] = ci.field;
  j["e"] = ci.e;
  j["N"] = ci.N;
  j["r"] = ci.r;
  j["q"] = ci.q();
  j["coefficients"] = matrix_json(reg, ci.field, ci.coeffs, 64);
  return j;
}

Json independence_json(const IndependenceCertificate& c, std::size_t expected) {
  Json j;
  j["elements"] = c.elements.size();
  j["rank"] = c.rank;
  j["expected"] = expected;
  j["independent"] = c.independent;
  return j;
}

/// Everything a single job computes, shared between commands.
class Pipeline {
 public:
  Pipeline(const JobSpec& job, const RunOptions& options) : job_(job), options_(options) {
    base_ = reg_.add_base(PrimeField(job.prime), job.params);
  }

  Json run_command(Command c, Status& status) {
    switch (c) {
      case Command::Validate: return validate_cmd(status);
      case Command::Chain: return chain_cmd(status);
      case Command::Invariants: return invariants_cmd(status);
      case Command::GenusChange: return genus_change_cmd(status);
      case Command::ClassifyConic: return conic_cmd();
      case Command::PFermat: return pfermat_cmd(status);
      case Command::Bounds: return bounds_cmd(status);
    }
    throw std::logic_error("unknown command");
  }

  const FermatCI& ci() {
    if (!ci_) {
      if (!job_.has_ci()) throw StructuralError("this command needs e, N, r and coefficient rows");
      FermatCI ci = make_fermat_ci(reg_, base_, *job_.e, *job_.N, *job_.r, job_.coeffs);
      if (job_.homogenize) ci = homogenize_parameters(reg_, ci);
      ci_ = std::move(ci);
    }
    return *ci_;
  }

 private:
  Json validate_cmd(Status& status) {
    const FermatCI& c = ci();
    ValidityCertificate v = validate(reg_, c);
    Json j;
    j["field"] = field_json(reg_, c.field);
    if (job_.homogenize) j["homogenized"] = ci_json(reg_, c);
    j["trivial"] = v.trivial;
    if (v.independence) j["independence"] = independence_json(*v.independence, c.r * (c.N + 1));
    j["coefficient_rank"] = v.coefficient_rank;
    j["rank_ok"] = v.rank_ok;
    j["valid"] = v.valid;
    if (v.valid) {
      JacobianCertificate jac = jacobian_regularity_certificate(reg_, c);
      Json jj;
      jj["vacuous"] = jac.vacuous;
      jj["constant_entries"] = jac.constant_entries;
      jj["is_identity"] = jac.is_identity;
      if (!jac.vacuous) jj["minor"] = matrix_json(reg_, c.field, jac.minor);
      jj["pass"] = jac.pass;
      j["jacobian_regularity"] = jj;
      if (!jac.pass) status = worst(status, Status::CertificateFailure);
    } else {
      status = worst(status, Status::CertificateFailure);
    }
    valid_ = v.valid;
    return j;
  }

  Json step_json(const ElementalStep& s, std::size_t index) {
    Json j;
    j["index"] = index;
    if (s.pivot_form.field != s.parent.field) j["reparametrized"] = field_json(reg_, s.pivot_form.field);
    j["l"] = field_json(reg_, s.l);
    j["k_prime"] = field_json(reg_, s.k_prime);
    j["t10"] = reg_.field(s.l).format(s.t10.value);
    j["T"] = matrix_json(reg_, s.l, s.T);
    Json shift = Json::array();
    for (const RatFunc& c : s.sigma.shift) shift.push_back(reg_.field(s.l).format(c));
    j["sigma_shift"] = shift;
    if (s.sigma.normalization) {
      j["normalization"] = reg_.field(s.sigma.normalization_field).format(*s.sigma.normalization);
    }
    Json ids = Json::array();
    for (const auto& c : s.identities) {
      Json x;
      x["name"] = c.name;
      x["holds"] = c.holds;
      x["residual_terms"] = c.residual_terms;
      ids.push_back(x);
    }
    j["identities"] = ids;
    j["step_independence"] = independence_json(s.step_independence, s.expected_step_rank);
    j["internal_degree_log"] = s.internal_degree_log;
    j["external_degree_log"] = s.external_degree_log;
    j["child"] = ci_json(reg_, s.child);
    j["child_valid"] = s.child_validity.valid;
    j["pass"] = s.passed();
    return j;
  }

  Json chain_cmd(Status& status) {
    (void)status;
    chain_ = build_chain(reg_, ci());
    Json j;
    Json steps = Json::array();
    for (std::size_t i = 0; i < chain_->steps.size(); ++i) steps.push_back(step_json(chain_->steps[i], i + 1));
    j["steps"] = steps;
    Json term;
    term["field"] = field_json(reg_, chain_->terminal_field);
    term["dimension"] = chain_->terminal_dimension;
    j["terminal"] = term;
    j["external_degree_log_sum"] = chain_->external_degree_log_sum();
    return j;
  }

  Json invariants_cmd(Status& status) {
    if (!chain_) throw StructuralError("invariants need a chain");
    inv_ = compute_invariants(reg_, ci(), *chain_);
    const InvariantReport& r = *inv_;
    Json j;
    j["epsilon"] = r.epsilon;
    Json g;
    g["lower"] = r.gamma_lower;
    g["upper"] = r.gamma_upper ? Json(*r.gamma_upper) : Json();
    g["exact"] = r.gamma_exact ? Json(*r.gamma_exact) : Json();
    if (r.gamma_arithmetic) {
      Json a;
      a["lhs"] = r.gamma_arithmetic->lhs;
      a["ky"] = r.gamma_arithmetic->ky;
      a["upper"] = r.gamma_arithmetic->upper;
      g["arithmetic"] = a;
    }
    j["gamma"] = g;
    j["ell"] = r.ell;
    j["m"] = r.m;
    j["deg_imperfection"] = r.deg_imperfection;
    Json trail = Json::array();
    for (const auto& fr : r.frobenius_trail) {
      Json t;
      t["d"] = fr.d;
      t["exponent"] = fr.reduced.e;
      t["field"] = fr.reduced.field;
      t["independence_rank"] = fr.independence.rank;
      t["linear"] = fr.linear;
      trail.push_back(t);
    }
    j["frobenius_trail"] = trail;
    Json cs = Json::array();
    for (const auto& c : r.constraints) {
      Json x;
      x["name"] = c.name;
      x["holds"] = c.holds;
      x["applicable"] = c.applicable;
      if (!c.note.empty()) x["note"] = c.note;
      cs.push_back(x);
    }
    j["constraints"] = cs;
    if (!r.constraints_hold()) status = worst(status, Status::CertificateFailure);
    return j;
  }

  unsigned gamma_value() const { return inv_->gamma_exact ? *inv_->gamma_exact : inv_->gamma_lower; }

  Json genus_change_cmd(Status& status) {
    if (!is_curve(job_)) throw NotApplicable("genus change needs a curve (r = N - 1, e >= 1)");
    if (!inv_) throw StructuralError("genus change needs invariants");
    const FermatCI& c = ci();
    BigInt g = ci_curve_genus(c.p, c.e, c.N, c.r);
    GenusChangeCheck chk = genus_change_check(c.p, inv_->epsilon, gamma_value(), g, 0);
    Json j;
    j["g_X"] = big_json(chk.g_X);
    j["g_Y"] = big_json(chk.g_Y);
    j["epsilon"] = chk.epsilon;
    j["gamma"] = chk.gamma;
    j["gamma_source"] = inv_->gamma_exact ? "exact" : "lower bound";
    j["sum_deg"] = rational_string(chk.sum_deg);
    j["consistent"] = chk.consistent;
    if (!chk.consistent) status = worst(status, Status::CertificateFailure);
    return j;
  }

  Json conic_cmd() {
    if (!job_.conic) throw StructuralError("classify-conic needs a 'conic = a b c alpha beta gamma' line");
    const auto& v = *job_.conic;
    auto el = [&](std::size_t i) { return FieldElement{base_, v[i]}; };
    ConicClass cls = classify_conic(reg_, ConicForm{el(0), el(1), el(2), el(3), el(4), el(5)});
    Json j;
    Json form = Json::array();
    for (const RatFunc& x : v) form.push_back(reg_.field(base_).format(x));
    j["form"] = form;
    j["class"] = to_string(cls.tag);
    j["reason"] = cls.reason;
    j["regularity_assumed"] = cls.regularity_assumed;
    if (cls.independence) j["independence_rank"] = cls.independence->rank;
    return j;
  }

  Json point_json(FieldId f, const ProjectivePoint& pt) {
    return Json::array({reg_.field(f).format(pt[0]), reg_.field(f).format(pt[1]), reg_.field(f).format(pt[2])});
  }

  Json pfermat_cmd(Status& status) {
    PFermatFields fields = pfermat_fields(reg_, job_.prime);
    PFermatOptions opts;
    opts.a = job_.pfermat_a;
    opts.avoid.assign(job_.pfermat_avoid.begin(), job_.pfermat_avoid.end());
    opts.search_bound = options_.search_bound.value_or(job_.search_bound);
    Json j;
    j["k"] = field_json(reg_, fields.k);
    j["k_root"] = field_json(reg_, fields.K);
    Json avoid = Json::array();
    for (const auto& pt : opts.avoid) avoid.push_back(point_json(fields.K, pt));
    j["avoid"] = avoid;
    j["search_bound"] = opts.search_bound;
    DecompositionReport rep;
    try {
      rep = pfermat_decomposition(reg_, fields, opts);
    } catch (const SearchExhausted& err) {
      j["error"] = err.what();
      status = worst(status, Status::CertificateFailure);
      return j;
    }
    const TowerField& k = reg_.field(fields.k);
    j["a"] = k.format(rep.a);
    j["v_pth_power"] = k.format(rep.v_pth_power);
    j["l"] = field_json(reg_, rep.l);
    j["k_prime"] = field_json(reg_, rep.k_prime);
    j["identity_holds"] = rep.identity_holds;
    j["transformed_form"] = rep.transformed_form;
    j["singular_point"] = point_json(rep.l, rep.singular_point);
    j["fingerprint"] = point_json(rep.l, rep.fingerprint);
    j["fingerprint_k_root"] = point_json(fields.K, rep.fingerprint_K);
    j["degree_log_l_over_k"] = rep.degree_log_l_over_k;
    j["degree_log_k_prime_over_l"] = rep.degree_log_kprime_over_l;
    j["candidates_tried"] = rep.candidates_tried;
    Json rej = Json::array();
    for (const auto& r : rep.rejected) {
      Json x;
      x["a"] = k.format(r.a);
      x["reason"] = r.reason;
      rej.push_back(x);
    }
    j["rejected"] = rej;
    return j;
  }

  Json bounds_cmd(Status& status) {
    Json j;
    unsigned M = static_cast<unsigned>(job_.params.size());
    if (job_.has_ci()) {
      if (!inv_) throw StructuralError("bounds need invariants");
      M = inv_->deg_imperfection;
      Json q;
      q["n"] = job_.index_multiplier;
      q["ell"] = inv_->ell;
      q["value"] = big_json(qgor_index(job_.prime, inv_->ell, BigInt(job_.index_multiplier)));
      j["qgor_index"] = q;
    }
    Json d;
    d["M"] = M;
    try {
      d["value"] = rational_string(genus_one_degree_bound(job_.prime, M));
    } catch (const NotApplicable& err) {
      d["not_applicable"] = err.what();
    } catch (const StructuralError& err) {
      d["not_applicable"] = err.what();
    }
    j["genus_one_degree_bound"] = d;
    if (is_curve(job_)) {
      const FermatCI& c = ci();
      BigInt g = ci_curve_genus(c.p, c.e, c.N, c.r);
      IntegralityVerdict v = integrality_criteria(c.p, g);
      Json in;
      in["g"] = big_json(g);
      in["guaranteed"] = v.guaranteed;
      in["reason"] = v.reason;
      j["integrality"] = in;
      Json t;
      if (g == 1 && inv_ && gamma_value() >= 1) {
        bool ok = genus_one_table_check(c.p, gamma_value(), inv_->ell, inv_->m);
        t["triple"] = Json::array({gamma_value(), inv_->ell, inv_->m});
        t["pass"] = ok;
        if (!ok) status = worst(status, Status::CertificateFailure);
      } else {
        t["not_applicable"] = "not a non-smooth genus-one curve";
      }
      j["genus_one_table"] = t;
    }
    return j;
  }

  const JobSpec& job_;
  const RunOptions& options_;
  FieldRegistry reg_;
  FieldId base_ = 0;
  std::optional<FermatCI> ci_;
  std::optional<bool> valid_;
  std::optional<ExtensionChain> chain_;
  std::optional<InvariantReport> inv_;
};

Json job_json(const JobSpec& job) {
  Json j;
  j["source"] = job.source;
  j["prime"] = job.prime;
  if (job.has_ci()) {
    j["e"] = *job.e;
    j["N"] = *job.N;
    j["r"] = *job.r;
  }
  j["params"] = job.params;
  if (job.has_ci()) {
    Json rows = Json::array();
    for (const auto& row : job.coeffs) {
      Json r = Json::array();
      for (const RatFunc& x : row) r.push_back(x.to_string(job.params));
      rows.push_back(r);
    }
    j["coefficients"] = rows;
    j["homogenize"] = job.homogenize;
  }
  return j;
}

}  // namespace

std::vector<Command> planned_commands(const JobSpec& job, const RunOptions& options) {
  std::set<Command> wanted;
  if (options.command) {
    wanted.insert(*options.command);
  } else if (!job.commands.empty()) {
    wanted.insert(job.commands.begin(), job.commands.end());
  } else {
    if (job.has_ci()) {
      wanted.insert({Command::Validate, Command::Chain, Command::Invariants, Command::Bounds});
      if (is_curve(job) && *job.r >= 1) wanted.insert(Command::GenusChange);
      if (*job.N == 2 && *job.r == 1 && *job.e == 1) wanted.insert(Command::PFermat);
    }
    if (job.conic) wanted.insert(Command::ClassifyConic);
    if (job.pfermat_a || !job.pfermat_avoid.empty()) wanted.insert(Command::PFermat);
    if (wanted.empty()) wanted.insert(Command::Bounds);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (Command c : std::vector<Command>(wanted.begin(), wanted.end())) {
      for (Command d : dependencies(c, job)) grew = wanted.insert(d).second || grew;
    }
  }
  std::vector<Command> out;
  for (Command c : all_commands()) {
    if (wanted.count(c)) out.push_back(c);
  }
  return out;
}

Report run(const JobSpec& job, const RunOptions& options) {
  Report report;
  Json& j = report.json;
  j["schema"] = kSchemaVersion;
  j["job"] = job_json(job);
  Json results = Json::object();
  Pipeline pipe(job, options);
  std::set<Command> failed;
  for (Command c : planned_commands(job, options)) {
    Json entry;
    bool blocked = false;
    for (Command d : dependencies(c, job)) blocked = blocked || failed.count(d);
    if (blocked) {
      entry["status"] = "skipped";
      entry["reason"] = "a prerequisite did not pass";
      failed.insert(c);
      results[to_string(c)] = entry;
      continue;
    }
    Status st = Status::Pass;
    try {
      if (needs_ci(c) && !job.has_ci()) throw StructuralError("this command needs e, N, r and coefficient rows");
      entry = pipe.run_command(c, st);
    } catch (const NotApplicable& err) {
      entry = Json();
      entry["not_applicable"] = err.what();
    } catch (const CertificateFailure& err) {
      entry["error"] = err.what();
      st = Status::CertificateFailure;
    } catch (const SearchExhausted& err) {
      entry["error"] = err.what();
      st = Status::CertificateFailure;
    } catch (const Error& err) {
      entry["error"] = err.what();
      st = Status::InputError;
    } catch (const std::exception& err) {
      entry["error"] = std::string("internal: ") + err.what();
      st = Status::InternalError;
    }
    entry["status"] = st == Status::Pass && entry.contains("not_applicable") ? "not-applicable" : to_string(st);
    if (st != Status::Pass) failed.insert(c);
    report.status = worst(report.status, st);
    results[to_string(c)] = entry;
  }
  j["results"] = results;
  j["status"] = to_string(report.status);
  j["pass"] = report.status == Status::Pass;
  return report;
}

Report input_error_report(const std::string& source, const std::string& message) {
  Report report;
  report.status = Status::InputError;
  report.json["schema"] = kSchemaVersion;
  report.json["job"] = Json{{"source", source}};
  report.json["error"] = message;
  report.json["status"] = to_string(report.status);
  report.json["pass"] = false;
  return report;
}

}  // namespace fermatci::app
