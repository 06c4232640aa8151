// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fermatci/curves.hpp"
#include "fermatci/errors.hpp"
#include "fermatci/fermat_ci.hpp"
#include "fermatci/invariants.hpp"
#include "fermatci_app/grid.hpp"
#include "fermatci_app/report.hpp"
#include "support/oracles.hpp"

using namespace fermatci;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
};

struct GridPoint {
  std::uint32_t p;
  unsigned e, N, r;
  std::string label() const {
    std::ostringstream os;
    os << "(p=" << p << ",e=" << e << ",N=" << N << ",r=" << r << ")";
    return os.str();
  }
};

std::vector<GridPoint> grid() {
  std::vector<GridPoint> out;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned e : {1u, 2u}) {
      for (unsigned N = 2; N <= 4; ++N) {
        for (unsigned r = 1; r < N; ++r) out.push_back({p, e, N, r});
      }
    }
  }
  return out;
}

struct Evaluated {
  GridPoint point;
  ExtensionChain chain;
  InvariantReport report;
};

// Shared by criteria 1, 3 and 7.
std::vector<Evaluated>& evaluated_grid() {
  static std::vector<Evaluated> cache = [] {
    std::vector<Evaluated> out;
    for (const GridPoint& g : grid()) {
      FieldRegistry reg;
      FermatCI ci = generic_fermat_ci(reg, g.p, g.e, g.N, g.r);
      ExtensionChain chain = build_chain(reg, ci);
      InvariantReport rep = compute_invariants(reg, ci, chain);
      out.push_back({g, std::move(chain), std::move(rep)});
    }
    return out;
  }();
  return cache;
}

FermatCI parsed_ci(FieldRegistry& reg, std::uint32_t p, unsigned e, unsigned N, const std::vector<std::string>& gens,
                   const std::vector<std::vector<std::string>>& rows) {
  FieldId k = reg.add_base(PrimeField(p), gens);
  RatMatrix m;
  for (const auto& row : rows) {
    std::vector<RatFunc> out;
    for (const auto& x : row) out.push_back(parse_element(reg, k, x).value);
    m.push_back(out);
  }
  return make_fermat_ci(reg, k, e, N, static_cast<unsigned>(rows.size()), m);
}

struct Four {
  unsigned ell, m, gamma, epsilon;
  bool gamma_known;
};

Four four_of(FieldRegistry& reg, const FermatCI& ci) {
  ExtensionChain chain = build_chain(reg, ci);
  InvariantReport rep = compute_invariants(reg, ci, chain);
  return {rep.ell, rep.m, rep.gamma_exact.value_or(0), rep.epsilon, rep.gamma_exact.has_value()};
}

void ac1(Tally& t) {
  const auto start = std::chrono::steady_clock::now();
  for (const Evaluated& ev : evaluated_grid()) {
    const GridPoint& g = ev.point;
    t.expect(ev.chain.steps.size() == g.r, g.label() + " step count");
    t.expect(epsilon_of_chain(ev.chain) == g.e * g.r, g.label() + " epsilon");
    t.expect(ev.report.ell == g.e && ev.report.m == g.e, g.label() + " Frobenius lengths");
    GammaBounds gb = gamma_bounds(ev.chain);
    t.expect(gb.lower == g.r, g.label() + " gamma lower");
    if (g.e == 1) {
      t.expect(ev.report.gamma_exact == g.r, g.label() + " gamma exact");
    } else {
      t.expect(!ev.report.gamma_exact.has_value(), g.label() + " gamma reported exact for e > 1");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs < 60.0, "grid took " + std::to_string(secs) + " s");
}

void ac2(Tally& t) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    FieldRegistry reg;
    FermatCI affine = parsed_ci(reg, p, 1, 2, {"s", "t"}, {{"s", "t", "1"}});
    Four f = four_of(reg, homogenize_parameters(reg, affine));
    t.expect(f.gamma_known && f.ell == 1 && f.m == 1 && f.gamma == 1 && f.epsilon == 1,
             "plane degree-" + std::to_string(p) + " curve");
  }
  {
    FieldRegistry reg;
    FermatCI affine = parsed_ci(reg, 3, 1, 2, {"s", "t"}, {{"s", "t", "1"}});
    Four f = four_of(reg, homogenize_parameters(reg, affine));
    t.expect(f.gamma_known && f.ell == 1 && f.m == 1 && f.gamma == 1 && f.epsilon == 1, "plane cubic");
  }
  {
    FieldRegistry reg;
    FermatCI ci = parsed_ci(reg, 2, 1, 3, {"s0", "s1", "s2", "s3", "t0", "t1", "t2", "t3"},
                            {{"s0", "s1", "s2", "s3"}, {"t0", "t1", "t2", "t3"}});
    Four f = four_of(reg, ci);
    t.expect(f.gamma_known && f.ell == 1 && f.m == 1 && f.gamma == 2 && f.epsilon == 2, "two quadrics in P^3");
  }
}

void ac3(Tally& t) {
  for (const Evaluated& ev : evaluated_grid()) {
    for (const ElementalStep& s : ev.chain.steps) {
      const std::string where = ev.point.label() + " step N=" + std::to_string(s.parent.N);
      // One identity for row 1, one per further row, one for the normalization.
      t.expect(s.identities.size() == s.parent.r + 1, where + " identity count");
      for (const IdentityCheck& id : s.identities) {
        t.expect(id.holds && id.residual_terms == 0, where + " " + id.name);
      }
      const std::size_t expect = s.parent.N * (s.parent.r - 1) + 1;
      t.expect(s.expected_step_rank == expect && s.step_independence.rank == expect, where + " step rank");
    }
  }
}

GenusChangeCheck chain_genus_change(std::uint32_t p, unsigned e, unsigned N, bool homogenized) {
  FieldRegistry reg;
  FermatCI ci = homogenized ? homogenize_parameters(reg, parsed_ci(reg, p, e, N, {"s", "t"}, {{"s", "t", "1"}}))
                            : generic_fermat_ci(reg, p, e, N, N - 1);
  ExtensionChain chain = build_chain(reg, ci);
  InvariantReport rep = compute_invariants(reg, ci, chain);
  return genus_change_check(p, rep.epsilon, rep.gamma_exact.value_or(rep.gamma_lower), ci_curve_genus(p, e, N, N - 1), 0);
}

void ac4(Tally& t) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    GenusChangeCheck c = chain_genus_change(p, 1, 2, true);
    t.expect(c.consistent && c.sum_deg == 1, "plane degree-" + std::to_string(p));
    BigInt g = ci_curve_genus(p, 1, 2, 1);
    t.expect(2 * g - 2 == BigInt(p) * (BigInt(p) - 3), "2g-2 = p(p-3) at p=" + std::to_string(p));
  }
  GenusChangeCheck cubic = chain_genus_change(3, 1, 2, true);
  t.expect(cubic.consistent && cubic.sum_deg == 1, "plane cubic");
  GenusChangeCheck two = chain_genus_change(2, 1, 3, false);
  t.expect(two.consistent && two.sum_deg == 2, "two quadrics in P^3");
}

void ac5(Tally& t) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int g = 0; g <= 10; ++g) {
      const bool not_divisible = (2 * g - 2) % static_cast<int>(p) != 0;
      const bool below = 2 * g < static_cast<int>((p - 1) * (p - 2));
      t.expect(integrality_criteria(p, g).guaranteed == (not_divisible || below),
               "p=" + std::to_string(p) + " g=" + std::to_string(g));
    }
  }
}

ConicForm diagonal(FieldRegistry& reg, FieldId k, const char* a, const char* b, const char* c) {
  return {parse_element(reg, k, a), parse_element(reg, k, b), parse_element(reg, k, c),
          parse_element(reg, k, "0"), parse_element(reg, k, "0"), parse_element(reg, k, "0")};
}

void ac6(Tally& t) {
  FieldRegistry reg;
  FieldId k2 = reg.add_base(PrimeField(2), {"s", "t"});
  FieldId k3 = reg.add_base(PrimeField(3), {"s", "t"});
  t.expect(classify_conic(reg, diagonal(reg, k2, "s", "t", "1")).tag == ConicTag::NonSmoothRegular, "(s,t,1)");
  t.expect(classify_conic(reg, diagonal(reg, k2, "1", "1", "1")).tag == ConicTag::NotReduced, "(1,1,1)");
  t.expect(classify_conic(reg, diagonal(reg, k2, "s", "s", "1")).tag == ConicTag::IntermediateDegree2, "(s,s,1)");
  for (const char* a : {"s", "1", "s*t+1"}) {
    t.expect(classify_conic(reg, diagonal(reg, k3, a, "t", "1")).tag == ConicTag::SmoothOddChar, "p=3 form");
  }
  ConicForm odd = diagonal(reg, k3, "s", "t", "1");
  odd.gamma = parse_element(reg, k3, "s");
  t.expect(classify_conic(reg, odd).tag == ConicTag::SmoothOddChar, "p=3 mixed form");

  oracle::Gen gen(606);
  const PrimeField f2(2);
  FieldId k = reg.add_base(f2, {"s", "t", "w"});
  int cases = 0;
  while (cases < 200) {
    auto pick = [&]() {
      std::vector<Exponent> ex(3);
      for (auto& x : ex) x = static_cast<Exponent>(gen.below(3));
      return RatFunc(MultiPoly::monomial(f2, Monomial(ex)));
    };
    const RatFunc zero = RatFunc::zero(f2, 3);
    ConicForm form{{k, pick()}, {k, pick()}, {k, pick()}, {k, zero}, {k, zero}, {k, zero}};
    RatFunc lambda = gen.ratfunc(f2, 3, 2, 2);
    if (lambda.is_zero()) continue;
    const ConicClass base = classify_conic(reg, form);
    ConicForm global = form;
    for (FieldElement* x : {&global.a, &global.b, &global.c}) x->value *= lambda;
    const ConicClass g = classify_conic(reg, global);
    ConicForm squares = form;
    for (FieldElement* x : {&squares.a, &squares.b, &squares.c}) {
      RatFunc h = gen.ratfunc(f2, 3, 2, 2);
      x->value *= h.is_zero() ? RatFunc::one(f2, 3) : h.frobenius(1);
    }
    const ConicClass sq = classify_conic(reg, squares);
    t.expect(g.tag == base.tag && sq.tag == base.tag, "scaling case " + std::to_string(cases));
    const std::size_t rank = base.independence ? base.independence->rank : 0;
    t.expect((g.independence ? g.independence->rank : 0) == rank, "global scaling rank");
    t.expect((sq.independence ? sq.independence->rank : 0) == rank, "square scaling rank");
    ++cases;
  }
}

void ac7(Tally& t) {
  using T = std::array<unsigned, 3>;
  std::set<T> want2{{1, 1, 0}, {1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {2, 2, 2}};
  std::set<T> want3{{1, 1, 0}, {1, 1, 1}};
  std::set<T> got2, got3;
  for (unsigned g = 0; g <= 4; ++g) {
    for (unsigned l = 0; l <= 4; ++l) {
      for (unsigned m = 0; m <= 4; ++m) {
        if (genus_one_table_check(2, g, l, m)) got2.insert({g, l, m});
        if (genus_one_table_check(3, g, l, m)) got3.insert({g, l, m});
        t.expect(!genus_one_table_check(5, g, l, m) && !genus_one_table_check(7, g, l, m), "p >= 5 accepted");
      }
    }
  }
  t.expect(got2 == want2, "p=2 table");
  t.expect(got3 == want3, "p=3 table");
  for (const Evaluated& ev : evaluated_grid()) {
    const InvariantReport& r = ev.report;
    t.expect(r.deg_imperfection >= 1 && r.epsilon <= r.m * (r.deg_imperfection - 1), ev.point.label() + " eps <= m(M-1)");
    t.expect(r.constraints_hold(), ev.point.label() + " constraints");
  }
  t.expect(genus_one_degree_bound(2, 1) == 20, "bound p=2 M=1");
  t.expect(genus_one_degree_bound(3, 1) == 5, "bound p=3 M=1");
}

void ac8(Tally& t) {
  oracle::Gen gen(808);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const PrimeField f(p);
    for (int i = 0; i < 50; ++i) {
      RatFunc a = gen.ratfunc(f, 3, 3, 3);
      RatFunc b = gen.ratfunc(f, 3, 3, 3);
      for (std::size_t j = 0; j < 3; ++j) {
        t.expect((a * b).partial(j) == a * b.partial(j) + b * a.partial(j), "Leibniz");
        t.expect(a.pow(p).partial(j).is_zero(), "derivative of a p-th power");
      }
      for (unsigned d = 0; d <= 2; ++d) t.expect(a.frobenius(d).pth_root(d) == a, "pth_root after frobenius");
    }
  }
  std::size_t sets = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    FieldRegistry reg;
    FieldId k = reg.add_base(PrimeField(p), {"a", "b", "c", "d"});
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t count = 1 + gen.below(5);
      std::vector<FieldElement> elems;
      std::vector<std::vector<std::int64_t>> vecs;
      for (std::size_t i = 0; i < count; ++i) {
        std::vector<Exponent> up(4), down(4);
        std::vector<std::int64_t> v(4);
        for (std::size_t j = 0; j < 4; ++j) {
          up[j] = static_cast<Exponent>(gen.below(2 * p + 1));
          down[j] = static_cast<Exponent>(gen.below(p + 1));
          v[j] = static_cast<std::int64_t>(up[j]) - down[j];
        }
        RatFunc m(MultiPoly::monomial(PrimeField(p), Monomial(up), static_cast<Coeff>(1 + gen.below(p - 1))),
                  MultiPoly::monomial(PrimeField(p), Monomial(down)));
        elems.push_back({k, m});
        vecs.push_back(v);
      }
      t.expect(p_independence(reg, k, elems).rank == oracle::rank_mod_p(vecs, p), "monomial p-independence");
      ++sets;
    }
  }
  t.expect(sets >= 1000, "monomial set count");
}

void ac9(Tally& t) {
  auto entries = app::generic_grid({2, 3, 5}, {1, 2}, 4);
  const std::string first = app::render_json(app::run_grid(entries, {}, 2).json);
  const std::string second = app::render_json(app::run_grid(entries, {}, 2).json);
  const std::string serial = app::render_json(app::run_grid(entries, {}, 1).json);
  t.expect(first == second, "two grid runs differ");
  t.expect(first == serial, "threaded and serial runs differ");
  t.expect(entries.size() == grid().size(), "grid size");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria{
      {"AC1 invariant grid", ac1},
      {"AC2 named examples", ac2},
      {"AC3 elemental-step identities", ac3},
      {"AC4 genus change", ac4},
      {"AC5 integrality criteria", ac5},
      {"AC6 conic classifier", ac6},
      {"AC7 genus-one constraints", ac7},
      {"AC8 arithmetic kernel properties", ac8},
      {"AC9 determinism", ac9},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Tally t;
    std::string error;
    try {
      fn(t);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = t.ok() && error.empty();
    std::printf("%s %s (%zu checks)", ok ? "PASS" : "FAIL", name.c_str(), t.checks);
    if (!error.empty()) std::printf(" exception: %s", error.c_str());
    for (const auto& f : t.failures) std::printf(" [%s]", f.c_str());
    std::printf("\n");
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
