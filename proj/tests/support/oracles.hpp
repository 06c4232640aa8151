// Test-only reference implementations and random generators. Nothing here is
// shared with the library; each oracle is deliberately naive.
#ifndef FERMATCI_TESTS_ORACLES_HPP
#define FERMATCI_TESTS_ORACLES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "fermatci/multipoly.hpp"
#include "fermatci/ratfunc.hpp"

namespace oracle {

using fermatci::Coeff;
using fermatci::Exponent;
using fermatci::Monomial;
using fermatci::MultiPoly;
using fermatci::PrimeField;
using fermatci::RatFunc;
using fermatci::Term;

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

/// Rank over F_p of integer vectors reduced mod p (plain Gaussian elimination).
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> rows, std::uint64_t p) {
  const auto mod = [p](std::int64_t v) {
    auto m = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((v % m) + m) % m);
  };
  std::vector<std::vector<std::uint64_t>> a;
  for (const auto& r : rows) {
    std::vector<std::uint64_t> x;
    for (auto v : r) x.push_back(mod(v));
    a.push_back(x);
  }
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = powmod(a[rank][c], p - 2, p);
    for (auto& v : a[rank]) v = v * inv % p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = (a[i][k] + (p - f) * a[rank][k]) % p;
    }
    ++rank;
  }
  return rank;
}

/// Dense univariate polynomial over F_p, low degree first, no trailing zeros.
using Dense = std::vector<std::uint64_t>;

inline void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Dense dense_rem(Dense a, const Dense& b, std::uint64_t p) {
  trim(a);
  const std::uint64_t inv = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const std::uint64_t f = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + (p - f) * b[i]) % p;
    trim(a);
  }
  return a;
}

/// Monic Euclidean gcd.
inline Dense dense_gcd(Dense a, Dense b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = dense_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const std::uint64_t inv = powmod(a.back(), p - 2, p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

inline Dense to_dense(const MultiPoly& f) {
  Dense out;
  for (const Term& t : f.terms()) {
    const auto d = t.monomial[0];
    if (out.size() <= d) out.resize(d + 1, 0);
    out[d] = t.coeff;
  }
  trim(out);
  return out;
}

/// Evaluates f at a point of F_p^n by repeated multiplication.
inline std::uint64_t evaluate(const MultiPoly& f, const std::vector<std::uint64_t>& point) {
  const std::uint64_t p = f.prime();
  std::uint64_t acc = 0;
  for (const Term& t : f.terms()) {
    std::uint64_t v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) v = v * powmod(point[i], t.monomial[i], p) % p;
    acc = (acc + v) % p;
  }
  return acc;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

  MultiPoly poly(const PrimeField& f, std::size_t nvars, std::size_t terms, Exponent max_exp) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < terms; ++i) {
      std::vector<Exponent> ex(nvars);
      for (auto& x : ex) x = static_cast<Exponent>(below(max_exp + 1));
      ts.push_back(Term{Monomial(ex), static_cast<Coeff>(1 + below(f.characteristic() - 1))});
    }
    return MultiPoly(f, nvars, std::move(ts));
  }

  MultiPoly nonzero_poly(const PrimeField& f, std::size_t nvars, std::size_t terms, Exponent max_exp) {
    for (;;) {
      MultiPoly g = poly(f, nvars, terms, max_exp);
      if (!g.is_zero()) return g;
    }
  }

  RatFunc ratfunc(const PrimeField& f, std::size_t nvars, std::size_t terms, Exponent max_exp) {
    return RatFunc(poly(f, nvars, terms, max_exp), nonzero_poly(f, nvars, terms, max_exp));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle

#endif  // FERMATCI_TESTS_ORACLES_HPP
