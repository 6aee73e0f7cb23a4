#include "hsens/indexer.hpp"

#include <bit>

namespace hsens {

VarIndexer VarIndexer::uniform(unsigned n, unsigned k) {
  if (n == 0 || n > kMaxVertices) throw Error("uniform indexer: n out of range");
  if (k == 0 || k > kMaxArity || k > n) throw Error("uniform indexer: k out of range");
  VarIndexer ix;
  ix.kind_ = IndexKind::Uniform;
  ix.n_ = n;
  ix.k_ = k;
  ix.num_vars_ = binom(n, k);
  return ix;
}

VarIndexer VarIndexer::partite(unsigned n, unsigned k) {
  if (n == 0 || n > kMaxVertices) throw Error("partite indexer: n out of range");
  if (k == 0 || k > kMaxArity) throw Error("partite indexer: k out of range");
  VarIndexer ix;
  ix.kind_ = IndexKind::Partite;
  ix.n_ = n;
  ix.k_ = k;
  uint64_t nv = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (nv > UINT64_MAX / n) throw Error("partite indexer: n^k overflows");
    nv *= n;
  }
  ix.num_vars_ = nv;
  return ix;
}

uint64_t VarIndexer::rank_edge(uint64_t vertex_mask) const {
  if (kind_ != IndexKind::Uniform) throw Error("rank_edge on non-uniform indexer");
  if (std::popcount(vertex_mask) != static_cast<int>(k_) ||
      (n_ < 64 && vertex_mask >> n_))
    throw Error("malformed edge for indexer");
  // colex rank: sum of C(v_i, i+1) over sorted vertices v_0 < v_1 < ...
  uint64_t rank = 0;
  unsigned i = 1;
  for (uint64_t m = vertex_mask; m; m &= m - 1, ++i)
    rank += binom(std::countr_zero(m), i);
  return rank;
}

uint64_t VarIndexer::unrank_edge(uint64_t rank) const {
  if (kind_ != IndexKind::Uniform) throw Error("unrank_edge on non-uniform indexer");
  if (rank >= num_vars_) throw Error("edge rank out of range");
  uint64_t mask = 0;
  for (unsigned i = k_; i >= 1; --i) {
    // largest v with C(v, i) <= rank
    unsigned v = i - 1;
    while (binom(v + 1, i) <= rank) ++v;
    mask |= 1ULL << v;
    rank -= binom(v, i);
  }
  return mask;
}

uint64_t VarIndexer::rank_tuple(std::span<const uint8_t> tuple) const {
  if (kind_ != IndexKind::Partite) throw Error("rank_tuple on non-partite indexer");
  if (tuple.size() != k_) throw Error("tuple arity mismatch");
  uint64_t rank = 0;
  for (unsigned i = 0; i < k_; ++i) {
    if (tuple[i] >= n_) throw Error("tuple entry out of range");
    rank = rank * n_ + tuple[i];
  }
  return rank;
}

void VarIndexer::unrank_tuple(uint64_t rank, std::span<uint8_t> out) const {
  if (kind_ != IndexKind::Partite) throw Error("unrank_tuple on non-partite indexer");
  if (out.size() != k_ || rank >= num_vars_) throw Error("tuple unrank out of range");
  for (unsigned i = k_; i-- > 0;) {
    out[i] = static_cast<uint8_t>(rank % n_);
    rank /= n_;
  }
}

}  // namespace hsens
