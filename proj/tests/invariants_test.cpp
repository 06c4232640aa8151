#include <algorithm>
#include <string>

#include "doctest.h"
#include "fermatci/errors.hpp"
#include "fermatci/invariants.hpp"

using namespace fermatci;

namespace {

struct Computed {
  ExtensionChain chain;
  InvariantReport report;
};

Computed generic(FieldRegistry& reg, std::uint32_t p, unsigned e, unsigned N, unsigned r) {
  FermatCI ci = generic_fermat_ci(reg, p, e, N, r);
  ExtensionChain chain = build_chain(reg, ci);
  InvariantReport report = compute_invariants(reg, ci, chain);
  return {std::move(chain), std::move(report)};
}

const ConstraintCheck& named(const std::vector<ConstraintCheck>& checks, const std::string& name) {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const ConstraintCheck& c) { return c.name == name; });
  REQUIRE(it != checks.end());
  return *it;
}

}  // namespace

TEST_CASE("epsilon of small chains") {
  FieldRegistry reg;
  CHECK(epsilon_of_chain(generic(reg, 2, 1, 2, 1).chain) == 1);
  CHECK(epsilon_of_chain(generic(reg, 2, 1, 3, 2).chain) == 2);
  FieldId k = reg.add_base(PrimeField(2), {"s"});
  FermatCI proj = make_fermat_ci(reg, k, 1, 3, 0, {});
  CHECK(epsilon_of_chain(build_chain(reg, proj)) == 0);
}

TEST_CASE("gamma bounds") {
  FieldRegistry reg;
  GammaBounds g22 = gamma_bounds(generic(reg, 2, 1, 3, 2).chain);
  CHECK(g22.lower == 2);
  CHECK(g22.upper == 2u);
  GammaBounds cubic = gamma_bounds(generic(reg, 3, 1, 2, 1).chain);
  CHECK(cubic.lower == 1);
  CHECK(cubic.upper == 1u);
  GammaBounds quartic = gamma_bounds(generic(reg, 2, 2, 2, 1).chain);
  CHECK(quartic.lower == 1);
  CHECK_FALSE(quartic.upper.has_value());

  InvariantReport rep = generic(reg, 2, 1, 3, 2).report;
  CHECK(rep.gamma_exact == 2u);
  CHECK_FALSE(generic(reg, 2, 2, 2, 1).report.gamma_exact.has_value());
}

TEST_CASE("degree arithmetic identity") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (unsigned N = 1; N <= 9; ++N) {
      for (unsigned r = 0; r < N; ++r) {
        DegreeArithmetic d = degree_arithmetic(p, N, r);
        CHECK(d.lhs == -static_cast<std::int64_t>(N + 1) + static_cast<std::int64_t>(r) * p);
        CHECK(d.ky == -static_cast<std::int64_t>(N - r + 1));
        CHECK(d.lhs - d.ky == static_cast<std::int64_t>(r) * (p - 1));
        CHECK(d.upper == r);
      }
    }
  }
}

TEST_CASE("Frobenius lengths") {
  FieldRegistry reg;
  CHECK(frobenius_lengths(reg, generic_fermat_ci(reg, 2, 1, 3, 2)) == std::pair{1u, 1u});
  CHECK(frobenius_lengths(reg, generic_fermat_ci(reg, 2, 2, 2, 1)) == std::pair{2u, 2u});
  FieldId k = reg.add_base(PrimeField(2), {"s"});
  CHECK(frobenius_lengths(reg, make_fermat_ci(reg, k, 2, 3, 0, {})) == std::pair{0u, 0u});

  auto trail = frobenius_trail(reg, generic_fermat_ci(reg, 3, 2, 3, 1));
  REQUIRE(trail.size() == 2);
  CHECK(trail[0].reduced.e == 1);
  CHECK_FALSE(trail[0].linear);
  CHECK(trail[1].linear);
}

TEST_CASE("reducing first shortens the Frobenius length by d") {
  for (std::uint32_t p : {2u, 3u}) {
    for (unsigned e = 1; e <= 3; ++e) {
      for (unsigned d = 0; d <= e; ++d) {
        FieldRegistry reg;
        FermatCI ci = generic_fermat_ci(reg, p, e, 3, 1);
        FrobeniusReduction red = frobenius_reduction(reg, ci, d);
        auto [ell, m] = frobenius_lengths(reg, red.reduced);
        CHECK(ell == e - d);
        CHECK(m == e - d);
      }
    }
  }
}

TEST_CASE("constraint checks") {
  FieldRegistry reg;
  InvariantReport two = generic(reg, 2, 1, 3, 2).report;
  CHECK(two.epsilon == 2);
  CHECK(two.m == 1);
  CHECK(two.deg_imperfection == 8);
  const auto& eps = named(two.constraints, "epsilon <= m (M - 1)");
  CHECK(eps.applicable);
  CHECK(eps.holds);
  CHECK(two.constraints_hold());

  InvariantReport zero;
  auto zc = constraint_checks(zero);
  CHECK(named(zc, "epsilon = 0 iff m = 0").holds);
  CHECK(named(zc, "gamma = 0 iff ell = 0").holds);

  InvariantReport bad;
  bad.m = 2;
  bad.ell = 1;
  bad.epsilon = 2;
  bad.gamma_lower = 1;
  bad.deg_imperfection = 4;
  auto bc = constraint_checks(bad);
  CHECK_FALSE(named(bc, "m <= ell").holds);

  InvariantReport over;
  over.m = over.ell = 1;
  over.gamma_lower = 1;
  over.gamma_exact = 1;
  over.epsilon = 5;
  over.deg_imperfection = 3;
  CHECK_FALSE(named(constraint_checks(over), "epsilon <= m (M - 1)").holds);
}

TEST_CASE("every grid report satisfies the constraints") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned e : {1u, 2u}) {
      for (unsigned N = 2; N <= 4; ++N) {
        for (unsigned r = 1; r < N; ++r) {
          FieldRegistry reg;
          InvariantReport rep = generic(reg, p, e, N, r).report;
          CAPTURE(p);
          CAPTURE(e);
          CAPTURE(N);
          CAPTURE(r);
          CHECK(rep.epsilon == e * r);
          CHECK(rep.gamma_lower == r);
          CHECK(rep.ell == e);
          CHECK(rep.m == e);
          CHECK(rep.deg_imperfection == r * (N + 1));
          if (e == 1) {
            CHECK(rep.gamma_exact == r);
          } else {
            CHECK_FALSE(rep.gamma_exact.has_value());
          }
          for (const auto& c : rep.constraints) {
            CAPTURE(c.name);
            CHECK((!c.applicable || c.holds));
          }
        }
      }
    }
  }
}

TEST_CASE("Cartier index multiple") {
  CHECK(qgor_index(2, 1, 1) == 2);
  CHECK(qgor_index(7, 0, 12) == 12);
  CHECK(qgor_index(3, 2, 1) == 9);
  CHECK(qgor_index(2, 80, 3) == BigInt(3) << 80);
}
