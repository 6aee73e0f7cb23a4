#include "hsens/group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsens {

// --- VertexPerm ---

VertexPerm VertexPerm::identity_uniform(unsigned n) {
  VertexPerm p;
  p.images.resize(1);
  p.images[0].resize(n);
  std::iota(p.images[0].begin(), p.images[0].end(), 0);
  return p;
}

VertexPerm VertexPerm::identity_partite(unsigned n, unsigned k) {
  VertexPerm p;
  p.images.resize(k);
  for (auto& im : p.images) {
    im.resize(n);
    std::iota(im.begin(), im.end(), 0);
  }
  return p;
}

uint64_t VertexPerm::apply_edge(uint64_t vertex_mask) const {
  const auto& im = images[0];
  uint64_t out = 0;
  for (uint64_t m = vertex_mask; m; m &= m - 1)
    out |= 1ULL << im[std::countr_zero(m)];
  return out;
}

void VertexPerm::apply_tuple(std::span<const uint8_t> in,
                             std::span<uint8_t> out) const {
  for (size_t c = 0; c < in.size(); ++c) out[c] = images[c][in[c]];
}

VertexPerm VertexPerm::inverse() const {
  VertexPerm inv;
  inv.images.resize(images.size());
  for (size_t c = 0; c < images.size(); ++c) {
    inv.images[c].resize(images[c].size());
    for (size_t v = 0; v < images[c].size(); ++v) inv.images[c][images[c][v]] = v;
  }
  return inv;
}

VertexPerm VertexPerm::compose(const VertexPerm& b) const {
  if (images.size() != b.images.size()) throw Error("perm kind mismatch");
  VertexPerm out;
  out.images.resize(images.size());
  for (size_t c = 0; c < images.size(); ++c) {
    out.images[c].resize(images[c].size());
    for (size_t v = 0; v < images[c].size(); ++v)
      out.images[c][v] = images[c][b.images[c][v]];
  }
  return out;
}

// --- GroupSpec ---

GroupSpec GroupSpec::symmetric(unsigned n) {
  GroupSpec g;
  g.kind = Kind::Symmetric;
  g.n = n;
  return g;
}

GroupSpec GroupSpec::partite_product(unsigned n, unsigned k) {
  GroupSpec g;
  g.kind = Kind::PartiteProduct;
  g.n = n;
  g.k = k;
  return g;
}

GroupSpec GroupSpec::abelian_product(std::vector<unsigned> orders) {
  if (orders.empty()) throw Error("abelian group needs at least one factor");
  GroupSpec g;
  g.kind = Kind::AbelianProduct;
  g.cyclic_orders = std::move(orders);
  uint64_t n = 1;
  for (unsigned m : g.cyclic_orders) {
    if (m == 0) throw Error("cyclic order must be positive");
    n *= m;
  }
  if (n > VarIndexer::kMaxVertices) throw Error("abelian group degree exceeds 64");
  g.n = static_cast<unsigned>(n);
  return g;
}

GroupSpec GroupSpec::trivial(unsigned n) {
  GroupSpec g;
  g.kind = Kind::Trivial;
  g.n = n;
  return g;
}

GroupSpec GroupSpec::parse(const std::string& text) {
  auto bad = [&] { return Error("cannot parse group spec: " + text); };
  auto pos = text.find(':');
  if (pos == std::string::npos) throw bad();
  std::string head = text.substr(0, pos);
  std::string rest = text.substr(pos + 1);
  try {
    if (head == "sym") return symmetric(std::stoul(rest));
    if (head == "trivial") return trivial(std::stoul(rest));
    if (head == "partite") {
      auto mid = rest.find(':');
      if (mid == std::string::npos) throw bad();
      return partite_product(std::stoul(rest.substr(0, mid)),
                             std::stoul(rest.substr(mid + 1)));
    }
    if (head == "abelian") {
      std::vector<unsigned> orders;
      std::stringstream ss(rest);
      std::string part;
      while (std::getline(ss, part, 'x')) orders.push_back(std::stoul(part));
      return abelian_product(std::move(orders));
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  throw bad();
}

std::string GroupSpec::to_string() const {
  switch (kind) {
    case Kind::Symmetric:
      return "sym:" + std::to_string(n);
    case Kind::PartiteProduct:
      return "partite:" + std::to_string(n) + ":" + std::to_string(k);
    case Kind::AbelianProduct: {
      std::string out = "abelian:";
      for (size_t i = 0; i < cyclic_orders.size(); ++i) {
        if (i) out += 'x';
        out += std::to_string(cyclic_orders[i]);
      }
      return out;
    }
    case Kind::Trivial:
      return "trivial:" + std::to_string(n);
  }
  return "?";
}

namespace {

VertexPerm uniform_transposition(unsigned n) {
  VertexPerm p = VertexPerm::identity_uniform(n);
  if (n >= 2) std::swap(p.images[0][0], p.images[0][1]);
  return p;
}

VertexPerm uniform_cycle(unsigned n) {
  VertexPerm p = VertexPerm::identity_uniform(n);
  for (unsigned v = 0; v < n; ++v) p.images[0][v] = (v + 1) % n;
  return p;
}

}  // namespace

std::vector<VertexPerm> GroupSpec::generators() const {
  std::vector<VertexPerm> gens;
  switch (kind) {
    case Kind::Symmetric:
      if (n >= 2) {
        gens.push_back(uniform_transposition(n));
        gens.push_back(uniform_cycle(n));
      }
      break;
    case Kind::PartiteProduct:
      for (unsigned c = 0; c < k; ++c) {
        if (n < 2) break;
        VertexPerm t = VertexPerm::identity_partite(n, k);
        std::swap(t.images[c][0], t.images[c][1]);
        gens.push_back(std::move(t));
        VertexPerm cyc = VertexPerm::identity_partite(n, k);
        for (unsigned v = 0; v < n; ++v) cyc.images[c][v] = (v + 1) % n;
        gens.push_back(std::move(cyc));
      }
      break;
    case Kind::AbelianProduct:
      return abelian_relabel(*this).shift_generators();
    case Kind::Trivial:
      break;
  }
  return gens;
}

uint64_t GroupSpec::order() const {
  auto factorial = [](unsigned m) {
    uint64_t f = 1;
    for (unsigned i = 2; i <= m; ++i) {
      if (f > UINT64_MAX / i) throw Error("group order overflows uint64");
      f *= i;
    }
    return f;
  };
  switch (kind) {
    case Kind::Symmetric:
      return factorial(n);
    case Kind::PartiteProduct: {
      uint64_t f = factorial(n);
      uint64_t out = 1;
      for (unsigned c = 0; c < k; ++c) {
        if (f != 0 && out > UINT64_MAX / f) throw Error("group order overflows uint64");
        out *= f;
      }
      return out;
    }
    case Kind::AbelianProduct:
      return n;
    case Kind::Trivial:
      return 1;
  }
  return 1;
}

void GroupSpec::for_each_element(
    uint64_t cap, const std::function<void(const VertexPerm&)>& fn) const {
  if (order() > cap)
    throw BudgetExceeded("group enumeration cap: order " + std::to_string(order()) +
                         " exceeds cap " + std::to_string(cap));
  switch (kind) {
    case Kind::Trivial:
      fn(VertexPerm::identity_uniform(n));
      break;
    case Kind::Symmetric: {
      VertexPerm p = VertexPerm::identity_uniform(n);
      do {
        fn(p);
      } while (std::next_permutation(p.images[0].begin(), p.images[0].end()));
      break;
    }
    case Kind::PartiteProduct: {
      // All n! single-partition permutations, then a k-digit odometer.
      std::vector<std::vector<uint8_t>> all;
      std::vector<uint8_t> base(n);
      std::iota(base.begin(), base.end(), 0);
      do {
        all.push_back(base);
      } while (std::next_permutation(base.begin(), base.end()));
      std::vector<size_t> digit(k, 0);
      VertexPerm p;
      p.images.resize(k);
      while (true) {
        for (unsigned c = 0; c < k; ++c) p.images[c] = all[digit[c]];
        fn(p);
        size_t c = k;
        bool done = true;
        while (c > 0) {
          --c;
          if (++digit[c] < all.size()) {
            done = false;
            break;
          }
          digit[c] = 0;
        }
        if (done) break;
      }
      break;
    }
    case Kind::AbelianProduct: {
      AbelianRelabeling rel = abelian_relabel(*this);
      std::vector<unsigned> elem(cyclic_orders.size(), 0);
      while (true) {
        VertexPerm p;
        p.images.resize(1);
        p.images[0].resize(n);
        for (unsigned v = 0; v < n; ++v)
          p.images[0][v] = static_cast<uint8_t>(rel.act(elem, v));
        fn(p);
        size_t c = elem.size();
        bool done = true;
        while (c > 0) {
          --c;
          if (++elem[c] < cyclic_orders[c]) {
            done = false;
            break;
          }
          elem[c] = 0;
        }
        if (done) break;
      }
      break;
    }
  }
}

bool GroupSpec::compatible_with(const VarIndexer& ix) const {
  if (ix.n() != n) return false;
  if (kind == Kind::PartiteProduct)
    return ix.kind() == IndexKind::Partite && ix.k() == k;
  return ix.kind() == IndexKind::Uniform ||
         (ix.kind() == IndexKind::Partite && kind == Kind::Trivial);
}

// --- action on assignments and tables ---

PartialAssignment apply_perm(const VertexPerm& sigma, const PartialAssignment& p,
                             const VarIndexer& ix) {
  if (p.n_vars() != ix.num_vars()) throw Error("assignment/indexer mismatch");
  bool want_uniform = ix.kind() == IndexKind::Uniform;
  if (want_uniform != sigma.is_uniform()) throw Error("perm kind mismatch");
  // sigma(p) at S equals p at sigma(S), so the support moves by sigma^{-1}.
  VertexPerm inv = sigma.inverse();
  std::vector<PartialAssignment::Entry> entries;
  entries.reserve(p.size());
  if (want_uniform) {
    for (auto [var, bit] : p.entries())
      entries.emplace_back(ix.rank_edge(inv.apply_edge(ix.unrank_edge(var))), bit);
  } else {
    std::vector<uint8_t> t(ix.k()), u(ix.k());
    for (auto [var, bit] : p.entries()) {
      ix.unrank_tuple(var, t);
      inv.apply_tuple(t, u);
      entries.emplace_back(ix.rank_tuple(u), bit);
    }
  }
  return PartialAssignment(p.n_vars(), std::move(entries));
}

bool is_invariant_under(const TruthTable& f, const VertexPerm& sigma,
                        const VarIndexer& ix) {
  const unsigned N = f.n_vars();
  if (ix.num_vars() != N) throw Error("table/indexer mismatch");

  // vmap[s] = variable index of sigma(edge_s); (sigma x)_s = x_{vmap[s]}.
  std::vector<uint32_t> vmap(N);
  if (ix.kind() == IndexKind::Uniform) {
    for (unsigned s = 0; s < N; ++s)
      vmap[s] = static_cast<uint32_t>(ix.rank_edge(sigma.apply_edge(ix.unrank_edge(s))));
  } else {
    std::vector<uint8_t> t(ix.k()), u(ix.k());
    for (unsigned s = 0; s < N; ++s) {
      ix.unrank_tuple(s, t);
      sigma.apply_tuple(t, u);
      vmap[s] = static_cast<uint32_t>(ix.rank_tuple(u));
    }
  }
  std::vector<uint32_t> inv(N);
  for (unsigned s = 0; s < N; ++s) inv[vmap[s]] = s;

  // Byte-scatter tables: image index assembled from precomputed per-byte
  // contributions, so the per-input cost is a few lookups.
  const unsigned n_bytes = (N + 7) / 8;
  std::vector<std::vector<uint32_t>> scatter(n_bytes, std::vector<uint32_t>(256, 0));
  for (unsigned b = 0; b < n_bytes; ++b)
    for (unsigned byte = 0; byte < 256; ++byte) {
      uint32_t out = 0;
      for (unsigned j = 0; j < 8; ++j) {
        unsigned v = b * 8 + j;
        if (v < N && (byte >> j) & 1) out |= 1u << inv[v];
      }
      scatter[b][byte] = out;
    }

  bool ok = true;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(&& : ok)
#endif
  for (int64_t sx = 0; sx < static_cast<int64_t>(f.num_inputs()); ++sx) {
    uint32_t x = static_cast<uint32_t>(sx);
    uint32_t y = 0;
    for (unsigned b = 0; b < n_bytes; ++b) y |= scatter[b][(x >> (8 * b)) & 0xff];
    if (f.get(x) != f.get(y)) ok = false;
  }
  return ok;
}

bool is_invariant(const TruthTable& f, const GroupSpec& group, const VarIndexer& ix) {
  if (!group.compatible_with(ix)) throw Error("group/indexer mismatch");
  for (const auto& g : group.generators())
    if (!is_invariant_under(f, g, ix)) return false;
  return true;
}

// --- Abelian relabeling ---

std::vector<unsigned> AbelianRelabeling::label_of(unsigned v) const {
  std::vector<unsigned> digits(orders.size());
  for (size_t i = orders.size(); i-- > 0;) {
    digits[i] = v % orders[i];
    v /= orders[i];
  }
  return digits;
}

unsigned AbelianRelabeling::index_of(std::span<const unsigned> digits) const {
  unsigned v = 0;
  for (size_t i = 0; i < orders.size(); ++i) v = v * orders[i] + digits[i];
  return v;
}

unsigned AbelianRelabeling::n() const {
  unsigned out = 1;
  for (unsigned m : orders) out *= m;
  return out;
}

unsigned AbelianRelabeling::act(std::span<const unsigned> element, unsigned v) const {
  auto digits = label_of(v);
  for (size_t i = 0; i < orders.size(); ++i)
    digits[i] = (digits[i] + element[i]) % orders[i];
  return index_of(digits);
}

std::vector<VertexPerm> AbelianRelabeling::shift_generators() const {
  std::vector<VertexPerm> gens;
  unsigned deg = n();
  for (size_t c = 0; c < orders.size(); ++c) {
    if (orders[c] == 1) continue;
    std::vector<unsigned> e(orders.size(), 0);
    e[c] = 1;
    VertexPerm p;
    p.images.resize(1);
    p.images[0].resize(deg);
    for (unsigned v = 0; v < deg; ++v)
      p.images[0][v] = static_cast<uint8_t>(act(e, v));
    gens.push_back(std::move(p));
  }
  return gens;
}

AbelianRelabeling abelian_relabel(const GroupSpec& spec) {
  if (spec.kind != GroupSpec::Kind::AbelianProduct)
    throw Error("abelian_relabel requires an abelian product group");
  AbelianRelabeling rel;
  rel.orders = spec.cyclic_orders;
  if (rel.n() != spec.n) throw Error("abelian degree mismatch");
  return rel;
}

}  // namespace hsens
