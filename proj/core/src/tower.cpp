#include "fermatci/tower.hpp"

#include <algorithm>
#include <set>

#include "fermatci/errors.hpp"
#include "fermatci/expr.hpp"

namespace fermatci {

const char* to_string(ExtensionKind kind) noexcept {
  switch (kind) {
    case ExtensionKind::Base: return "base";
    case ExtensionKind::QthRoots: return "qth-roots";
    case ExtensionKind::Rebase: return "rebase";
    case ExtensionKind::Reparametrize: return "reparametrize";
    case ExtensionKind::Transcendental: return "transcendental";
  }
  return "unknown";
}

TowerField::TowerField(FieldId id, PrimeField prime, std::vector<std::string> gens,
                       std::optional<Embedding> parent, ExtensionKind kind, unsigned degree_log)
    : id_(id),
      prime_(prime),
      gens_(std::move(gens)),
      parent_(std::move(parent)),
      kind_(kind),
      degree_log_(degree_log) {
  std::set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.empty()) throw StructuralError("empty generator name");
    if (!seen.insert(g).second) throw StructuralError("duplicate generator name '" + g + "'");
  }
  if (parent_) {
    for (const RatFunc& img : parent_->images) {
      if (img.nvars() != gens_.size() || !(img.field() == prime_)) {
        throw StructuralError("embedding image does not live in the new field");
      }
    }
  }
}

std::optional<std::size_t> TowerField::gen_index(const std::string& name) const {
  auto it = std::find(gens_.begin(), gens_.end(), name);
  if (it == gens_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - gens_.begin());
}

RatFunc TowerField::gen(std::size_t i) const {
  if (i >= gens_.size()) throw StructuralError("generator index out of range");
  return RatFunc::variable(prime_, gens_.size(), i);
}

RatFunc TowerField::one() const { return RatFunc::one(prime_, gens_.size()); }
RatFunc TowerField::zero() const { return RatFunc::zero(prime_, gens_.size()); }
RatFunc TowerField::constant(std::int64_t v) const { return RatFunc::constant(prime_, gens_.size(), v); }

std::string TowerField::format(const RatFunc& value) const {
  if (value.nvars() != gens_.size()) throw StructuralError("element does not belong to this field");
  return value.to_string(gens_);
}

FieldId FieldRegistry::add_base(PrimeField prime, std::vector<std::string> gens) {
  auto id = static_cast<FieldId>(fields_.size());
  fields_.push_back(std::make_unique<const TowerField>(id, prime, std::move(gens), std::nullopt,
                                                       ExtensionKind::Base, 0));
  return id;
}

FieldId FieldRegistry::add_extension(FieldId parent, std::vector<std::string> gens,
                                     std::vector<RatFunc> images, ExtensionKind kind,
                                     unsigned degree_log) {
  const TowerField& par = field(parent);
  if (images.size() != par.gen_count()) {
    throw StructuralError("embedding must give an image for every parent generator");
  }
  auto id = static_cast<FieldId>(fields_.size());
  fields_.push_back(std::make_unique<const TowerField>(
      id, par.prime(), std::move(gens), Embedding{parent, std::move(images)}, kind, degree_log));
  return id;
}

const TowerField& FieldRegistry::field(FieldId id) const {
  if (id >= fields_.size()) throw StructuralError("unknown field id " + std::to_string(id));
  return *fields_[id];
}

bool FieldRegistry::is_ancestor(FieldId ancestor, FieldId descendant) const {
  FieldId cur = descendant;
  while (true) {
    if (cur == ancestor) return true;
    const auto& par = field(cur).parent();
    if (!par) return false;
    cur = par->parent;
  }
}

unsigned FieldRegistry::degree_log_between(FieldId ancestor, FieldId descendant) const {
  unsigned total = 0;
  FieldId cur = descendant;
  while (cur != ancestor) {
    const TowerField& f = field(cur);
    if (!f.parent()) throw StructuralError("field is not an extension of the requested ancestor");
    total += f.degree_log();
    cur = f.parent()->parent;
  }
  return total;
}

FieldElement parse_element(const FieldRegistry& reg, FieldId field, const std::string& text) {
  const TowerField& f = reg.field(field);
  return FieldElement{field, parse_expression(text, f.gens(), f.prime())};
}

FieldElement lift(const FieldRegistry& reg, const FieldElement& x, FieldId target) {
  if (x.field == target) return x;
  std::vector<FieldId> path;
  FieldId cur = target;
  while (cur != x.field) {
    path.push_back(cur);
    const auto& par = reg.field(cur).parent();
    if (!par) {
      throw StructuralError("field " + std::to_string(x.field) + " is not below field " +
                            std::to_string(target));
    }
    cur = par->parent;
  }
  RatFunc value = x.value;
  if (value.nvars() != reg.field(x.field).gen_count()) {
    throw StructuralError("element does not belong to its field");
  }
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    value = value.substitute(reg.field(*it).parent()->images);
  }
  return FieldElement{target, std::move(value)};
}

IndependenceCertificate p_independence(const FieldRegistry& reg, FieldId k,
                                       const std::vector<FieldElement>& elems) {
  const TowerField& f = reg.field(k);
  IndependenceCertificate cert{k, elems, {}, 0, false};
  for (const FieldElement& x : elems) {
    if (x.field != k || x.value.nvars() != f.gen_count()) {
      throw StructuralError("p_independence: element from a different field");
    }
    std::vector<RatFunc> row;
    row.reserve(f.gen_count());
    for (std::size_t j = 0; j < f.gen_count(); ++j) row.push_back(x.value.partial(j));
    cert.jacobian.push_back(std::move(row));
  }
  cert.rank = f.gen_count() == 0 ? 0 : rank_over_field(cert.jacobian);
  cert.independent = cert.rank == elems.size();
  return cert;
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& n) { return std::find(taken.begin(), taken.end(), n) != taken.end(); };
  if (!used(base)) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!used(cand)) return cand;
  }
}

Adjunction adjoin_qth_roots(FieldRegistry& reg, FieldId k, const std::vector<FieldElement>& targets,
                            unsigned e, const std::vector<std::string>& names) {
  const TowerField& f = reg.field(k);
  if (targets.empty()) return Adjunction{k, {}, {}};
  if (e == 0) throw StructuralError("adjoin_qth_roots needs q = p^e with e >= 1");
  if (!names.empty() && names.size() != targets.size()) {
    throw StructuralError("adjoin_qth_roots: one name per target");
  }
  const std::size_t n = f.gen_count();
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) q *= f.characteristic();

  struct Shape {
    std::size_t slot;
    RatFunc h;
  };
  std::vector<std::vector<Shape>> options(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const FieldElement& c = targets[t];
    if (c.field != k || c.value.nvars() != n) {
      throw StructuralError("adjoin_qth_roots: target from a different field");
    }
    if (auto v = c.value.as_variable()) {
      options[t].push_back(Shape{*v, f.one()});
      continue;
    }
    if (c.value.is_zero()) throw UnsupportedAdjunction("cannot adjoin roots of zero");
    for (std::size_t g = 0; g < n; ++g) {
      if (!c.value.depends_on(g)) continue;
      auto h = (c.value / f.gen(g)).pth_root(e);
      if (h && !h->depends_on(g)) options[t].push_back(Shape{g, *h});
    }
    if (options[t].empty()) {
      throw UnsupportedAdjunction("target " + f.format(c.value) +
                                  " is neither a generator nor a generator times a q-th power");
    }
  }
  // Greedy choice of distinct slots, then check h avoids every chosen slot.
  std::vector<Shape> chosen;
  std::set<std::size_t> used;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    bool found = false;
    for (const Shape& s : options[t]) {
      if (used.count(s.slot)) continue;
      chosen.push_back(s);
      used.insert(s.slot);
      found = true;
      break;
    }
    if (!found) throw UnsupportedAdjunction("targets do not occupy distinct generators");
  }
  for (std::size_t t = 0; t < chosen.size(); ++t) {
    for (std::size_t slot : used) {
      if (chosen[t].h.depends_on(slot)) {
        throw UnsupportedAdjunction("cofactor of " + f.format(targets[t].value) +
                                    " involves another adjoined generator");
      }
    }
  }

  std::vector<std::string> gens = f.gens();
  std::vector<RatFunc> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(f.gen(i));
  Adjunction out{0, {}, {}};
  for (std::size_t t = 0; t < chosen.size(); ++t) {
    const std::size_t g = chosen[t].slot;
    std::string base = names.empty() ? f.gens()[g] + "_rt" + std::to_string(q) : names[t];
    std::vector<std::string> others = gens;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(g));
    gens[g] = fresh_name(base, others);
    // Slots outside `used` are untouched, and h only involves those.
    images[g] = f.gen(g).frobenius(e) / chosen[t].h.frobenius(e);
    out.slots.push_back(g);
  }
  out.field = reg.add_extension(k, gens, std::move(images), ExtensionKind::QthRoots,
                                e * static_cast<unsigned>(targets.size()));
  const TowerField& l = reg.field(out.field);
  for (std::size_t g : out.slots) out.roots.push_back(l.gen(g));
  return out;
}

RebaseResult rebase(FieldRegistry& reg, FieldId k, const std::vector<RebaseSlot>& slots) {
  const TowerField& f = reg.field(k);
  const std::size_t n = f.gen_count();
  if (slots.size() != n) throw StructuralError("rebase needs exactly one slot per generator");
  std::vector<FieldElement> elems;
  std::vector<bool> root_slot(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i].pth_power) {
      if (slots[i].pth_power->nvars() != n) throw StructuralError("rebase relation from another field");
      elems.push_back(FieldElement{k, *slots[i].pth_power});
      root_slot[i] = true;
    } else {
      elems.push_back(FieldElement{k, f.gen(i)});
    }
  }
  IndependenceCertificate cert = p_independence(reg, k, elems);
  if (!cert.independent) {
    throw NotPBasis("new generators are not a p-basis: derivation rank " + std::to_string(cert.rank) +
                    " < " + std::to_string(n));
  }
  bool identity = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (root_slot[i] || slots[i].name != f.gens()[i]) identity = false;
  }
  if (identity) return RebaseResult{k, std::move(cert)};

  std::vector<std::string> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(slots[i].name);
  std::vector<RatFunc> images;
  unsigned degree = 0;
  const PrimeField& prime = f.prime();
  for (std::size_t i = 0; i < n; ++i) {
    if (!root_slot[i]) {
      images.push_back(f.gen(i));
      continue;
    }
    ++degree;
    const RatFunc& e = *slots[i].pth_power;
    auto touches_roots = [&](const MultiPoly& poly) {
      for (std::size_t j = 0; j < n; ++j) {
        if (root_slot[j] && poly.depends_on(j)) return true;
      }
      return false;
    };
    std::vector<MultiPoly> parts = e.num().to_univariate(i);
    if (parts.size() != 2 || parts[1].is_zero() || touches_roots(parts[0]) || touches_roots(parts[1]) ||
        touches_roots(e.den())) {
      throw NoRewriting("cannot express " + f.gens()[i] + " through the relation " + gens[i] +
                        "^p = " + f.format(e));
    }
    // e = (A g + B) / D  =>  g = (v^p D - B) / A.
    RatFunc v_p = RatFunc::variable(prime, n, i).frobenius(1);
    RatFunc a(parts[1]);
    RatFunc b(parts[0]);
    RatFunc d(e.den());
    images.push_back((v_p * d - b) / a);
  }
  FieldId id = reg.add_extension(k, std::move(gens), std::move(images), ExtensionKind::Rebase, degree);
  return RebaseResult{id, std::move(cert)};
}

Reparametrization reparametrize(FieldRegistry& reg, FieldId k, const std::vector<FieldElement>& elems,
                                const std::vector<std::string>& names) {
  const TowerField& f = reg.field(k);
  const std::size_t n = f.gen_count();
  if (names.size() != elems.size()) throw StructuralError("reparametrize: one name per element");
  for (const FieldElement& x : elems) {
    if (x.field != k || x.value.nvars() != n) throw StructuralError("reparametrize: element from another field");
  }
  {
    std::set<std::size_t> slots;
    std::vector<std::size_t> order;
    for (const FieldElement& x : elems) {
      auto v = x.value.as_variable();
      if (!v || !slots.insert(*v).second) break;
      order.push_back(*v);
    }
    if (order.size() == elems.size()) return Reparametrization{k, order};
  }

  const PrimeField& prime = f.prime();
  std::vector<RatFunc> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(f.gen(i));
  std::vector<RatFunc> pending;
  for (const FieldElement& x : elems) pending.push_back(x.value);
  std::vector<std::string> gens = f.gens();
  std::vector<bool> installed(n, false);
  Reparametrization out{0, {}};

  for (std::size_t idx = 0; idx < pending.size(); ++idx) {
    const RatFunc c = pending[idx];
    if (auto v = c.as_variable(); v && !installed[*v]) {
      installed[*v] = true;
      out.slots.push_back(*v);
      continue;
    }
    struct Pivot {
      std::size_t slot;
      bool is_private;
      MultiPoly a, b, cc, d;
    };
    std::optional<Pivot> best;
    for (std::size_t g = 0; g < n; ++g) {
      if (installed[g] || !c.depends_on(g)) continue;
      if (c.num().degree_in(g) > 1 || c.den().degree_in(g) > 1) continue;
      auto nu = c.num().to_univariate(g);
      auto de = c.den().to_univariate(g);
      MultiPoly zero(prime, n);
      MultiPoly a = nu.size() > 1 ? nu[1] : zero;
      MultiPoly b = nu[0];
      MultiPoly cc = de.size() > 1 ? de[1] : zero;
      MultiPoly d = de[0];
      if ((a * d - b * cc).is_zero()) continue;
      bool priv = true;
      for (std::size_t later = idx + 1; later < pending.size(); ++later) {
        if (pending[later].depends_on(g)) priv = false;
      }
      if (!best || (priv && !best->is_private)) {
        best = Pivot{g, priv, a, b, cc, d};
        if (priv) break;
      }
    }
    if (!best) {
      throw NoRewriting("element " + f.format(elems[idx].value) +
                        " is not a Moebius function of any free generator");
    }
    // u = (A g + B) / (C g + D)  =>  g = (D u - B) / (A - C u), u in g's slot.
    const std::size_t g = best->slot;
    RatFunc u = RatFunc::variable(prime, n, g);
    RatFunc inv = (RatFunc(best->d) * u - RatFunc(best->b)) / (RatFunc(best->a) - RatFunc(best->cc) * u);
    std::vector<RatFunc> subst;
    for (std::size_t i = 0; i < n; ++i) subst.push_back(i == g ? inv : RatFunc::variable(prime, n, i));
    for (RatFunc& img : images) img = img.substitute(subst);
    for (std::size_t later = idx; later < pending.size(); ++later) {
      pending[later] = pending[later].substitute(subst);
    }
    if (pending[idx].as_variable() != g) {
      throw NoRewriting("internal: Moebius inversion did not install the element");
    }
    installed[g] = true;
    std::vector<std::string> others = gens;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(g));
    gens[g] = fresh_name(names[idx], others);
    out.slots.push_back(g);
  }
  out.field = reg.add_extension(k, std::move(gens), std::move(images), ExtensionKind::Reparametrize, 0);
  return out;
}

FieldId adjoin_transcendentals(FieldRegistry& reg, FieldId k, const std::vector<std::string>& names) {
  const TowerField& f = reg.field(k);
  const std::size_t n = f.gen_count();
  std::vector<std::string> gens = f.gens();
  for (const auto& nm : names) gens.push_back(fresh_name(nm, gens));
  std::vector<RatFunc> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(RatFunc::variable(f.prime(), gens.size(), i));
  return reg.add_extension(k, std::move(gens), std::move(images), ExtensionKind::Transcendental, 0);
}

}  // namespace fermatci
