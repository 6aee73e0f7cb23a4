#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hsens/indexer.hpp"
#include "hsens/partial_assignment.hpp"
#include "hsens/truth_table.hpp"

namespace hsens {

// A vertex permutation: one image array for uniform indexers, k independent
// arrays (one per partition) for partite indexers.
struct VertexPerm {
  std::vector<std::vector<uint8_t>> images;

  static VertexPerm identity_uniform(unsigned n);
  static VertexPerm identity_partite(unsigned n, unsigned k);

  bool is_uniform() const { return images.size() == 1; }
  unsigned n() const { return static_cast<unsigned>(images[0].size()); }

  uint64_t apply_edge(uint64_t vertex_mask) const;
  void apply_tuple(std::span<const uint8_t> in, std::span<uint8_t> out) const;

  VertexPerm inverse() const;
  // (a * b)(v) = a(b(v)), coordinate-wise for partite perms.
  VertexPerm compose(const VertexPerm& b) const;

  bool operator==(const VertexPerm& o) const = default;
};

// Group families used by the constructions: full symmetric S_n acting on
// vertices, the k-fold product S_n^k acting independently per partition,
// transitive Abelian products of cyclic groups, and the trivial group.
struct GroupSpec {
  enum class Kind { Symmetric, PartiteProduct, AbelianProduct, Trivial };

  Kind kind = Kind::Trivial;
  unsigned n = 1;
  unsigned k = 1;                       // partite only
  std::vector<unsigned> cyclic_orders;  // abelian only; n = product

  static GroupSpec symmetric(unsigned n);
  static GroupSpec partite_product(unsigned n, unsigned k);
  static GroupSpec abelian_product(std::vector<unsigned> orders);
  static GroupSpec trivial(unsigned n);

  // "sym:n" | "partite:n:k" | "abelian:m1xm2x..." | "trivial:n"
  static GroupSpec parse(const std::string& text);
  std::string to_string() const;

  std::vector<VertexPerm> generators() const;

  // Group order; throws if it does not fit in uint64_t.
  uint64_t order() const;

  // Enumerates every group element (deterministic order). Throws
  // BudgetExceeded if the order exceeds cap.
  void for_each_element(uint64_t cap,
                        const std::function<void(const VertexPerm&)>& fn) const;

  bool compatible_with(const VarIndexer& ix) const;
};

// The induced action on partial assignments: sigma(p) at variable S equals
// p at sigma(S).
PartialAssignment apply_perm(const VertexPerm& sigma, const PartialAssignment& p,
                             const VarIndexer& ix);

// Generator check: f(x) = f(sigma(x)) for all generators and all inputs.
bool is_invariant(const TruthTable& f, const GroupSpec& group, const VarIndexer& ix);

// Invariance under a single vertex permutation, checked on the whole table.
bool is_invariant_under(const TruthTable& f, const VertexPerm& sigma,
                        const VarIndexer& ix);

// Relabeling of [n] as Z_{m1} x ... x Z_{ml} under which each generator of
// the Abelian product acts as a cyclic shift of one coordinate.
struct AbelianRelabeling {
  std::vector<unsigned> orders;

  std::vector<unsigned> label_of(unsigned v) const;   // mixed-radix digits
  unsigned index_of(std::span<const unsigned> digits) const;
  unsigned n() const;
  // Action of the element with the given digits (coordinate-wise addition).
  unsigned act(std::span<const unsigned> element, unsigned v) const;
  std::vector<VertexPerm> shift_generators() const;
};

AbelianRelabeling abelian_relabel(const GroupSpec& spec);

}  // namespace hsens
