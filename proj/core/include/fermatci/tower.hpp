#ifndef FERMATCI_TOWER_HPP
#define FERMATCI_TOWER_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fermatci/linalg.hpp"
#include "fermatci/ratfunc.hpp"

namespace fermatci {

using FieldId = std::uint32_t;

/// How a field sits over its parent.
enum class ExtensionKind {
  Base,            // F_p(gens), no parent
  QthRoots,        // purely inseparable: some generators replaced by q-th roots
  Rebase,          // purely inseparable: new p-basis given by p-th power relations
  Reparametrize,   // same field, different transcendence basis (degree 1)
  Transcendental,  // fresh transcendentals adjoined (not algebraic)
};

const char* to_string(ExtensionKind kind) noexcept;

struct Embedding {
  FieldId parent;
  /// images[i] is the parent's i-th generator written in this field's generators.
  std::vector<RatFunc> images;
};

/// F_p(g_1, ..., g_M) with g_i algebraically independent, optionally embedded
/// into by a parent field. Immutable once registered.
class TowerField {
 public:
  TowerField(FieldId id, PrimeField prime, std::vector<std::string> gens,
             std::optional<Embedding> parent, ExtensionKind kind, unsigned degree_log);

  FieldId id() const noexcept { return id_; }
  const PrimeField& prime() const noexcept { return prime_; }
  std::uint32_t characteristic() const noexcept { return prime_.characteristic(); }
  const std::vector<std::string>& gens() const noexcept { return gens_; }
  std::size_t gen_count() const noexcept { return gens_.size(); }
  const std::optional<Embedding>& parent() const noexcept { return parent_; }
  ExtensionKind kind() const noexcept { return kind_; }
  /// log_p [this : parent]; 0 for base, reparametrized and transcendental nodes.
  unsigned degree_log() const noexcept { return degree_log_; }

  std::optional<std::size_t> gen_index(const std::string& name) const;
  RatFunc gen(std::size_t i) const;
  RatFunc one() const;
  RatFunc zero() const;
  RatFunc constant(std::int64_t v) const;
  std::string format(const RatFunc& value) const;

 private:
  FieldId id_;
  PrimeField prime_;
  std::vector<std::string> gens_;
  std::optional<Embedding> parent_;
  ExtensionKind kind_;
  unsigned degree_log_;
};

/// Allocates field identifiers. Each pipeline owns one; nothing is global.
class FieldRegistry {
 public:
  FieldId add_base(PrimeField prime, std::vector<std::string> gens);
  FieldId add_extension(FieldId parent, std::vector<std::string> gens, std::vector<RatFunc> images,
                        ExtensionKind kind, unsigned degree_log);

  const TowerField& field(FieldId id) const;
  std::size_t size() const noexcept { return fields_.size(); }

  /// Walks parents from `descendant`; true when `ancestor` is met (or equal).
  bool is_ancestor(FieldId ancestor, FieldId descendant) const;
  /// log_p [descendant : ancestor], summing degree logs along the path.
  unsigned degree_log_between(FieldId ancestor, FieldId descendant) const;

 private:
  std::vector<std::unique_ptr<const TowerField>> fields_;
};

struct FieldElement {
  FieldId field = 0;
  RatFunc value;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

/// Parses an element of `field` from the shared expression grammar.
FieldElement parse_element(const FieldRegistry& reg, FieldId field, const std::string& text);

/// Rewrites x into `target`, composing embeddings down the tower.
/// Throws StructuralError unless x.field is an ancestor of target.
FieldElement lift(const FieldRegistry& reg, const FieldElement& x, FieldId target);

struct IndependenceCertificate {
  FieldId field = 0;
  std::vector<FieldElement> elements;
  /// jacobian[i][j] = d(elements[i]) / d(gen_j).
  RatMatrix jacobian;
  std::size_t rank = 0;
  bool independent = false;
};

/// Tests p-independence over k^p through the rank of the differentials
/// d(x_i) against the generators of k, which form a p-basis of k.
IndependenceCertificate p_independence(const FieldRegistry& reg, FieldId k,
                                       const std::vector<FieldElement>& elems);

struct Adjunction {
  FieldId field = 0;
  /// Generator slot of k replaced for each target (same order as targets).
  std::vector<std::size_t> slots;
  /// The q-th root of each target, as an element of the new field.
  std::vector<RatFunc> roots;
};

/// l = k(c_1^(1/q), ..., c_m^(1/q)) with q = p^e.
///
/// Each target must be g or g * h^q for a generator g of k and h in k not
/// involving any target generator. The new generator tau = c^(1/q) takes g's
/// slot with g -> tau^q / h^q. Empty targets return k itself.
Adjunction adjoin_qth_roots(FieldRegistry& reg, FieldId k, const std::vector<FieldElement>& targets,
                            unsigned e, const std::vector<std::string>& names = {});

/// One generator slot of a rebase: either keep the old generator, or replace
/// it by a p-th root of `pth_power`.
struct RebaseSlot {
  std::string name;
  std::optional<RatFunc> pth_power;
};

struct RebaseResult {
  FieldId field = 0;
  IndependenceCertificate certificate;
};

/// Replaces the generators of k by a new p-basis given by p-th power
/// relations. Relations must be A*g + B with g the slot's old generator and
/// A, B free of every non-passthrough slot, so g -> (v^p - B) / A.
/// Throws NotPBasis or NoRewriting.
RebaseResult rebase(FieldRegistry& reg, FieldId k, const std::vector<RebaseSlot>& slots);

struct Reparametrization {
  FieldId field = 0;
  /// Slot holding each installed element.
  std::vector<std::size_t> slots;
};

/// Presents k with each given element as a generator (a degree-one change of
/// transcendence basis). Each element must be a Moebius function of some
/// still-free generator; throws NoRewriting otherwise. Elements that already
/// are distinct generators leave k unchanged.
Reparametrization reparametrize(FieldRegistry& reg, FieldId k,
                                const std::vector<FieldElement>& elems,
                                const std::vector<std::string>& names);

/// k(u_1, ..., u_m) with fresh transcendentals appended after k's generators.
FieldId adjoin_transcendentals(FieldRegistry& reg, FieldId k, const std::vector<std::string>& names);

/// A name not yet used among `taken`, derived from `base`.
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

}  // namespace fermatci

#endif  // FERMATCI_TOWER_HPP
