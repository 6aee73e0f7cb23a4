#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "hsens/common.hpp"

namespace hsens {

enum class IndexKind { Uniform, Partite };

// Bijection between hyperedges and variable indices 0..N-1.
//
// Uniform: variables are the k-subsets of [n], ranked colexicographically
// over sorted vertex lists (vertices 0-based internally). Partite: variables
// are k-tuples in [n]^k, ranked mixed-radix with the first coordinate most
// significant.
class VarIndexer {
 public:
  static constexpr unsigned kMaxVertices = 64;
  static constexpr unsigned kMaxArity = 8;

  static VarIndexer uniform(unsigned n, unsigned k);
  static VarIndexer partite(unsigned n, unsigned k);

  IndexKind kind() const { return kind_; }
  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  uint64_t num_vars() const { return num_vars_; }

  // Uniform edges as vertex bitmasks (bit v = vertex v).
  uint64_t rank_edge(uint64_t vertex_mask) const;
  uint64_t unrank_edge(uint64_t rank) const;

  // Partite tuples, entries 0-based in [0, n).
  uint64_t rank_tuple(std::span<const uint8_t> tuple) const;
  void unrank_tuple(uint64_t rank, std::span<uint8_t> out) const;

  bool operator==(const VarIndexer& o) const = default;

 private:
  VarIndexer() = default;
  IndexKind kind_ = IndexKind::Uniform;
  unsigned n_ = 0, k_ = 0;
  uint64_t num_vars_ = 0;
};

}  // namespace hsens
