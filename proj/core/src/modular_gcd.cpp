// Brown's dense recursive gcd. The last variable is evaluated away, the
// images are gcd'd recursively and Newton interpolation rebuilds the
// candidate, which is accepted once it divides both inputs.

#include "modular_gcd.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fermatci::detail {

namespace {

using Elem = std::uint32_t;

/// F_q with q = p^k. For k = 1 plain residues; otherwise Zech logarithms:
/// 0 encodes zero and e > 0 encodes alpha^(e-1) for a primitive alpha.
class KField {
 public:
  KField(std::uint32_t p, unsigned k) : p_(p), k_(k) {
    if (k == 1) {
      q_ = p;
      return;
    }
    q_ = 1;
    for (unsigned i = 0; i < k; ++i) q_ *= p;
    order_ = q_ - 1;
    build_tables();
  }

  std::uint64_t size() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }

  Elem one() const noexcept { return 1; }
  Elem element(std::uint64_t i) const noexcept { return static_cast<Elem>(i); }

  Elem from_fp(Coeff c) const { return k_ == 1 ? c : (c == 0 ? 0 : log_of_vec_[c] + 1); }
  std::optional<Coeff> to_fp(Elem x) const {
    if (k_ == 1 || x == 0) return x;
    const std::uint32_t v = exp_vec_[x - 1];
    if (v >= p_) return std::nullopt;
    return v;
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (k_ == 1) {
      std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t i = a - 1, j = b - 1;
    const std::uint32_t n = j >= i ? j - i : j + order_ - i;
    const std::uint32_t z = zech_[n];
    if (z == kNone) return 0;
    std::uint32_t l = i + z;
    if (l >= order_) l -= order_;
    return l + 1;
  }
  Elem neg(Elem a) const noexcept {
    if (a == 0) return 0;
    if (k_ == 1) return p_ - a;
    if (p_ == 2) return a;
    std::uint32_t l = a - 1 + order_ / 2;
    if (l >= order_) l -= order_;
    return l + 1;
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
    std::uint32_t l = a - 1 + b - 1;
    if (l >= order_) l -= order_;
    return l + 1;
  }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    if (k_ == 1) {
      std::uint64_t r = 1, base = a, e = p_ - 2;
      while (e) {
        if (e & 1) r = r * base % p_;
        base = base * base % p_;
        e >>= 1;
      }
      return static_cast<Elem>(r);
    }
    const std::uint32_t l = a - 1;
    return (l == 0 ? 0 : order_ - l) + 1;
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  // Finds a monic f of degree k with x of order q - 1 modulo f, tabulating
  // the powers of x along the way.
  void build_tables() {
    std::vector<std::uint32_t> f(k_);
    std::vector<std::uint32_t> cur(k_);
    auto encode = [&](const std::vector<std::uint32_t>& d) {
      std::uint32_t v = 0;
      for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
      return v;
    };
    for (std::uint32_t code = 1; code < q_; ++code) {
      std::uint32_t c = code;
      for (unsigned i = 0; i < k_; ++i) {
        f[i] = c % p_;
        c /= p_;
      }
      if (f[0] == 0) continue;
      exp_vec_.assign(order_, 0);
      std::fill(cur.begin(), cur.end(), 0);
      cur[0] = 1;
      bool primitive = true;
      for (std::uint32_t i = 0; i < order_; ++i) {
        const std::uint32_t v = encode(cur);
        if (i > 0 && v == 1) {
          primitive = false;
          break;
        }
        exp_vec_[i] = v;
        // cur *= x modulo f
        const std::uint32_t top = cur[k_ - 1];
        for (unsigned j = k_ - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        for (unsigned j = 0; j < k_; ++j) cur[j] = (cur[j] + (p_ - f[j]) * top) % p_;
      }
      if (!primitive || encode(cur) != 1) continue;
      log_of_vec_.assign(q_, kNone);
      for (std::uint32_t i = 0; i < order_; ++i) log_of_vec_[exp_vec_[i]] = i;
      zech_.assign(order_, kNone);
      for (std::uint32_t n = 0; n < order_; ++n) {
        const std::uint32_t v = exp_vec_[n];
        const std::uint32_t d0 = v % p_;
        const std::uint32_t plus_one = d0 + 1 == p_ ? v - d0 : v + 1;
        zech_[n] = plus_one == 0 ? kNone : log_of_vec_[plus_one];
      }
      return;
    }
    throw std::logic_error("no primitive polynomial found");
  }

  std::uint32_t p_;
  unsigned k_;
  std::uint64_t q_ = 0;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> exp_vec_;
  std::vector<std::uint32_t> log_of_vec_;
  std::vector<std::uint32_t> zech_;
};

std::shared_ptr<const KField> field_for(std::uint32_t p, unsigned k) {
  thread_local std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const KField>> cache;
  auto& slot = cache[{p, k}];
  if (!slot) slot = std::make_shared<const KField>(p, k);
  return slot;
}

// Univariate dense polynomials over K, low degree first, no trailing zeros.
using Dense = std::vector<Elem>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t degree(const Dense& a) { return static_cast<std::int64_t>(a.size()) - 1; }

Elem eval(const KField& K, const Dense& a, Elem x) {
  Elem acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = K.add(K.mul(acc, x), a[i]);
  return acc;
}

Dense scale(const KField& K, const Dense& a, Elem c) {
  if (c == 0) return {};
  Dense out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = K.mul(a[i], c);
  return out;
}

Dense add(const KField& K, const Dense& a, const Dense& b) {
  Dense out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = K.add(out[i], b[i]);
  trim(out);
  return out;
}

Dense mul(const KField& K, const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = K.add(out[i + j], K.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

/// a = q b + r; b nonzero.
std::pair<Dense, Dense> divmod(const KField& K, Dense a, const Dense& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Dense q(a.size() - b.size() + 1, 0);
  const Elem inv = K.inv(b.back());
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const Elem c = K.mul(a[i], inv);
    if (c != 0) {
      const std::size_t shift = i + 1 - b.size();
      q[shift] = c;
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = K.sub(a[shift + j], K.mul(c, b[j]));
    }
    if (i == 0) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

Dense monic(const KField& K, const Dense& a) {
  if (a.empty()) return a;
  return scale(K, a, K.inv(a.back()));
}

Dense gcd(const KField& K, Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = divmod(K, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(K, a);
}

Dense exact_quotient(const KField& K, const Dense& a, const Dense& b) {
  auto [q, r] = divmod(K, a, b);
  if (!r.empty()) throw std::logic_error("inexact univariate division");
  return q;
}

// Sparse polynomials over K in v variables, lex order with variable 0 most
// significant; begin() is the leading term.
using Exps = std::vector<std::uint32_t>;
using KPoly = std::map<Exps, Elem, std::greater<>>;
// Coefficients in K[x_{v-1}] of the monomials in the first v - 1 variables.
using Split = std::map<Exps, Dense, std::greater<>>;

Split split_last(const KPoly& a) {
  Split out;
  for (const auto& [e, c] : a) {
    Exps head(e.begin(), e.end() - 1);
    Dense& d = out[head];
    if (d.size() <= e.back()) d.resize(e.back() + 1, 0);
    d[e.back()] = c;
  }
  return out;
}

KPoly join_last(const Split& s) {
  KPoly out;
  for (const auto& [head, d] : s) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0) continue;
      Exps e = head;
      e.push_back(static_cast<std::uint32_t>(i));
      out.emplace(std::move(e), d[i]);
    }
  }
  return out;
}

KPoly eval_last(const KField& K, const Split& s, Elem x) {
  KPoly out;
  for (const auto& [head, d] : s) {
    Elem v = eval(K, d, x);
    if (v != 0) out.emplace(head, v);
  }
  return out;
}

KPoly lex_monic(const KField& K, KPoly a) {
  const Elem inv = K.inv(a.begin()->second);
  for (auto& [e, c] : a) c = K.mul(c, inv);
  return a;
}

bool divides(const KField& K, const KPoly& d, KPoly r) {
  const Exps& lead = d.begin()->first;
  const Elem inv = K.inv(d.begin()->second);
  while (!r.empty()) {
    const auto& [re, rc] = *r.begin();
    Exps shift(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      if (re[i] < lead[i]) return false;
      shift[i] = re[i] - lead[i];
    }
    const Elem c = K.mul(rc, inv);
    for (const auto& [de, dc] : d) {
      Exps e(de.size());
      for (std::size_t i = 0; i < de.size(); ++i) e[i] = de[i] + shift[i];
      auto it = r.find(e);
      const Elem t = K.mul(c, dc);
      if (it == r.end()) {
        r.emplace(std::move(e), K.neg(t));
      } else {
        it->second = K.sub(it->second, t);
        if (it->second == 0) r.erase(it);
      }
    }
  }
  return true;
}

struct GiveUp {};

class Brown {
 public:
  explicit Brown(const KField& K) : K_(K) {}

  KPoly gcd(const KPoly& a, const KPoly& b, std::size_t v) {
    if (v == 0) return KPoly{{Exps{}, K_.one()}};
    if (v == 1) return univariate(a, b);

    Split sa = split_last(a);
    Split sb = split_last(b);
    Dense ca = content(sa);
    Dense cb = content(sb);
    Dense c = fermatci::detail::gcd(K_, ca, cb);
    for (auto& [h, d] : sa) d = exact_quotient(K_, d, ca);
    for (auto& [h, d] : sb) d = exact_quotient(K_, d, cb);
    const Dense& la = sa.begin()->second;
    const Dense& lb = sb.begin()->second;
    const Dense g = fermatci::detail::gcd(K_, la, lb);

    std::int64_t da = 0, db = 0;
    for (const auto& [h, d] : sa) da = std::max(da, degree(d));
    for (const auto& [h, d] : sb) db = std::max(db, degree(d));
    const std::int64_t bound = degree(g) + std::min(da, db);

    KPoly pa, pb;  // primitive parts, built on first use
    Split cand;
    Exps cand_lead;
    Dense modulus{K_.one()};
    std::int64_t points = 0;
    for (std::uint64_t i = 0; i < K_.size(); ++i) {
      const Elem x = K_.element(i);
      if (eval(K_, la, x) == 0 || eval(K_, lb, x) == 0) continue;
      KPoly image = gcd(eval_last(K_, sa, x), eval_last(K_, sb, x), v - 1);
      const Exps& lead = image.begin()->first;
      if (std::all_of(lead.begin(), lead.end(), [](std::uint32_t e) { return e == 0; })) {
        return lex_monic(K_, lift_univariate(c, v));
      }
      const Elem gx = eval(K_, g, x);
      if (points == 0 || lead < cand_lead) {
        cand.clear();
        for (const auto& [e, cf] : image) cand[e] = Dense{K_.mul(cf, gx)};
        cand_lead = lead;
        modulus = Dense{K_.neg(x), K_.one()};
        points = 1;
      } else if (lead > cand_lead) {
        continue;  // unlucky
      } else {
        const Elem minv = K_.inv(eval(K_, modulus, x));
        for (const auto& [e, cf] : image) cand.try_emplace(e);
        for (auto it = cand.begin(); it != cand.end();) {
          auto im = image.find(it->first);
          const Elem want = im == image.end() ? 0 : K_.mul(im->second, gx);
          const Elem diff = K_.sub(want, eval(K_, it->second, x));
          if (diff != 0) it->second = add(K_, it->second, scale(K_, modulus, K_.mul(diff, minv)));
          it = it->second.empty() ? cand.erase(it) : std::next(it);
        }
        modulus = mul(K_, modulus, Dense{K_.neg(x), K_.one()});
        ++points;
      }
      if (points <= bound) continue;
      Split prim = cand;
      Dense cc = content(prim);
      for (auto& [h, d] : prim) d = exact_quotient(K_, d, cc);
      KPoly candidate = join_last(prim);
      if (pa.empty()) {
        pa = join_last(sa);
        pb = join_last(sb);
      }
      if (divides(K_, candidate, pa) && divides(K_, candidate, pb)) {
        Split with_content = prim;
        for (auto& [h, d] : with_content) d = mul(K_, d, c);
        return lex_monic(K_, join_last(with_content));
      }
      if (points > 4 * bound + 16) throw GiveUp{};
    }
    throw GiveUp{};
  }

 private:
  KPoly univariate(const KPoly& a, const KPoly& b) {
    auto dense = [](const KPoly& x) {
      Dense d;
      for (const auto& [e, c] : x) {
        if (d.size() <= e[0]) d.resize(e[0] + 1, 0);
        d[e[0]] = c;
      }
      return d;
    };
    return lift_univariate(fermatci::detail::gcd(K_, dense(a), dense(b)), 1);
  }

  /// c(x_{v-1}) as a polynomial in v variables.
  KPoly lift_univariate(const Dense& c, std::size_t v) {
    KPoly out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Exps e(v, 0);
      e[v - 1] = static_cast<std::uint32_t>(i);
      out.emplace(std::move(e), c[i]);
    }
    return out;
  }

  Dense content(const Split& s) {
    Dense g;
    for (const auto& [h, d] : s) {
      g = g.empty() ? monic(K_, d) : fermatci::detail::gcd(K_, g, d);
      if (g.size() == 1) break;
    }
    return g;
  }

  const KField& K_;
};

}  // namespace

std::optional<MultiPoly> modular_gcd(const MultiPoly& a, const MultiPoly& b) {
  const std::size_t n = a.nvars();
  const std::vector<bool> sa = a.support();
  const std::vector<bool> sb = b.support();
  // Variables in use; the one of highest degree goes first (handled by Euclid).
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < n; ++i) {
    if (sa[i] || sb[i]) vars.push_back(i);
  }
  if (vars.empty()) return MultiPoly::constant(a.field(), n, 1);
  std::stable_sort(vars.begin(), vars.end(), [&](std::size_t x, std::size_t y) {
    return a.degree_in(x) + b.degree_in(x) > a.degree_in(y) + b.degree_in(y);
  });
  std::uint64_t max_deg = 0;
  for (std::size_t i = 1; i < vars.size(); ++i) {
    max_deg = std::max<std::uint64_t>(max_deg, a.degree_in(vars[i]) + b.degree_in(vars[i]));
  }

  const std::uint32_t p = a.prime();
  const std::uint64_t want = 4 * max_deg + 32;
  unsigned k = 1;
  std::uint64_t q = p;
  while (q < want) {
    q *= p;
    ++k;
  }
  if (k > 1 && q > (1u << 20)) return std::nullopt;
  auto K = field_for(p, k);

  auto to_k = [&](const MultiPoly& f) {
    KPoly out;
    for (const Term& t : f.terms()) {
      Exps e(vars.size());
      for (std::size_t i = 0; i < vars.size(); ++i) e[i] = t.monomial[vars[i]];
      out.emplace(std::move(e), K->from_fp(t.coeff));
    }
    return out;
  };

  KPoly g;
  try {
    Brown brown(*K);
    g = brown.gcd(to_k(a), to_k(b), vars.size());
  } catch (const GiveUp&) {
    return std::nullopt;
  }

  std::vector<Term> terms;
  for (const auto& [e, c] : g) {
    auto fc = K->to_fp(c);
    if (!fc) return std::nullopt;
    std::vector<Exponent> ex(n, 0);
    for (std::size_t i = 0; i < vars.size(); ++i) ex[vars[i]] = e[i];
    terms.push_back(Term{Monomial(std::move(ex)), *fc});
  }
  return MultiPoly(a.field(), n, std::move(terms)).monic();
}

}  // namespace fermatci::detail
