#include "hsens/minterm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "json.hpp"

namespace hsens {

std::string rule_name(MintermRule rule) {
  switch (rule) {
    case MintermRule::Thm1:
      return "thm1";
    case MintermRule::Thm2:
      return "thm2";
    case MintermRule::Thm3:
      return "thm3";
    case MintermRule::Thm4:
      return "thm4";
    case MintermRule::Explicit:
      return "explicit";
  }
  return "?";
}

MintermRule rule_from_name(const std::string& name) {
  if (name == "thm1") return MintermRule::Thm1;
  if (name == "thm2") return MintermRule::Thm2;
  if (name == "thm3") return MintermRule::Thm3;
  if (name == "thm4") return MintermRule::Thm4;
  if (name == "explicit") return MintermRule::Explicit;
  throw Error("unknown minterm rule: " + name);
}

std::pair<unsigned, unsigned> split_k(unsigned k) {
  if (k < 3) throw Error("split_k requires k >= 3");
  switch (k % 3) {
    case 0:
      return {k / 3, k / 3};
    case 1:
      return {(k + 2) / 3, (k - 1) / 3};
    default:
      return {(k - 2) / 3, (k + 1) / 3};
  }
}

// --- rule evaluation ---

Trit eval_uniform_rule(const MintermParams& mp, const UniformPlacement& pl,
                       uint64_t edge_mask) {
  if ((edge_mask & pl.b_mask) != pl.b_mask) return Trit::Star;
  const uint64_t s = edge_mask & ~pl.b_mask;
  const uint64_t c_mask = pl.c_mask();
  const unsigned c = std::popcount(s & c_mask);

  if (mp.rule == MintermRule::Thm1) {
    const unsigned two_k2 = 2 * mp.k2;
    if (c == two_k2) {
      // S inside the W region: zero except two consecutive W blocks.
      for (int i = 0; i < 5; ++i)
        if (s == (pl.w_mask[i] | pl.w_mask[i + 1])) return Trit::One;
      return Trit::Zero;
    }
    if (c >= mp.k2) {
      // S straddles W region and padding: one except W3 or W4 swallowed.
      if ((s & pl.w_mask[2]) == pl.w_mask[2] || (s & pl.w_mask[3]) == pl.w_mask[3])
        return Trit::Zero;
      return Trit::One;
    }
    return Trit::Star;
  }

  // thm2
  const unsigned l = mp.k2;
  const unsigned d1 = std::popcount(s & pl.d1_mask);
  const unsigned d2 = std::popcount(s) - c - d1;
  if (c == 2 * l && d1 + d2 == 1) {
    if (d2 == 1) return Trit::One;
    const uint64_t sc = s & c_mask;
    for (int i = 0; i < 5; ++i)
      if (sc == (pl.w_mask[i] | pl.w_mask[i + 1])) return Trit::One;
    return Trit::Zero;
  }
  if (c >= l && c < 2 * l && d1 >= 1) {
    if ((s & pl.w_mask[2]) == pl.w_mask[2] || (s & pl.w_mask[3]) == pl.w_mask[3])
      return Trit::Zero;
    return Trit::One;
  }
  return Trit::Star;
}

namespace {

// Block layout over tuple coordinates. thm3: a = [0,k2), b = [k2,2k2),
// c = [2k2, 2k2+k1). thm4 (l = k1 = k2): a,b,c of size l, then one d
// coordinate.
struct PartiteLayout {
  unsigned a_begin, a_end, b_begin, b_end, c_begin, c_end;
  int d_coord;  // -1 when absent
};

PartiteLayout layout_of(const MintermParams& mp) {
  if (mp.rule == MintermRule::Thm3)
    return {0, mp.k2, mp.k2, 2 * mp.k2, 2 * mp.k2, 2 * mp.k2 + mp.k1, -1};
  unsigned l = mp.k2;
  return {0, l, l, 2 * l, 2 * l, 3 * l, static_cast<int>(3 * l)};
}

// 1,2,3 for the special vectors (anchor everywhere, selector = one/two/
// three), 0 for anything else.
int block_label(const PartitePlacement& pl, std::span<const uint8_t> tuple,
                unsigned begin, unsigned end, uint8_t two, uint8_t three) {
  for (unsigned j = begin; j + 1 < end; ++j)
    if (tuple[j] != pl.one[j]) return 0;
  uint8_t sel = tuple[end - 1];
  if (sel == pl.one[end - 1]) return 1;
  if (sel == two) return 2;
  if (sel == three) return 3;
  return 0;
}

Trit table_value(int a, int b) {
  // Row/column pattern of the two-block value table.
  switch (a) {
    case 1:
      return (b >= 1 && b <= 3) ? Trit::Zero : Trit::One;
    case 2:
      return (b == 1 || b == 2) ? Trit::Zero : Trit::One;
    case 3:
      return (b == 1 || b == 3) ? Trit::One : Trit::Zero;
    default:
      if (b == 1 || b == 2) return Trit::One;
      if (b == 3) return Trit::Zero;
      return Trit::Star;
  }
}

}  // namespace

Trit eval_partite_rule(const MintermParams& mp, const PartitePlacement& pl,
                       std::span<const uint8_t> tuple) {
  const PartiteLayout lay = layout_of(mp);
  bool c_anchored = true;
  for (unsigned j = lay.c_begin; j < lay.c_end; ++j)
    if (tuple[j] != pl.one[j]) {
      c_anchored = false;
      break;
    }

  const int a = block_label(pl, tuple, lay.a_begin, lay.a_end, pl.a_two, pl.a_three);
  const int b = block_label(pl, tuple, lay.b_begin, lay.b_end, pl.b_two, pl.b_three);

  if (mp.rule == MintermRule::Thm3) {
    if (!c_anchored) return Trit::Star;
    return table_value(a, b);
  }

  // thm4
  const uint8_t d = tuple[lay.d_coord];
  const bool in_d1 = (pl.d1_mask >> d) & 1;
  if (!c_anchored) return Trit::Star;
  if (in_d1) return table_value(a, b);
  return (a >= 1 && b >= 1) ? Trit::One : Trit::Star;
}

// --- support iteration ---

bool scan_support_uniform(const MintermParams& mp, const UniformPlacement& pl,
                          const std::function<bool(uint64_t, bool)>& fn) {
  const uint64_t all = mp.n == 64 ? ~0ULL : (1ULL << mp.n) - 1;
  const uint64_t c_mask = pl.c_mask();
  const uint64_t d_mask = all & ~(c_mask | pl.b_mask);
  auto emit = [&](uint64_t s) {
    uint64_t e = pl.b_mask | s;
    Trit v = eval_uniform_rule(mp, pl, e);
    if (v == Trit::Star) return true;
    return fn(e, v == Trit::One);
  };

  if (mp.rule == MintermRule::Thm1) {
    const unsigned two_k2 = 2 * mp.k2;
    if (!for_each_ksubset(c_mask, two_k2, emit)) return false;
    for (unsigned i = mp.k2; i < two_k2; ++i)
      if (!for_each_ksubset(c_mask, i, [&](uint64_t sc) {
            return for_each_ksubset(d_mask, two_k2 - i,
                                    [&](uint64_t sd) { return emit(sc | sd); });
          }))
        return false;
    return true;
  }

  // thm2
  const unsigned l = mp.k2;
  if (!for_each_ksubset(c_mask, 2 * l, [&](uint64_t sc) {
        for (uint64_t m = d_mask; m; m &= m - 1)
          if (!emit(sc | (m & -m))) return false;
        return true;
      }))
    return false;
  for (unsigned i = l; i < 2 * l; ++i)
    if (!for_each_ksubset(c_mask, i, [&](uint64_t sc) {
          return for_each_ksubset(d_mask, 2 * l + 1 - i, [&](uint64_t sd) {
            if (sd & pl.d1_mask) return emit(sc | sd);
            return true;
          });
        }))
      return false;
  return true;
}

namespace {

// Iterates all tuples of one block (the others held fixed in buf).
template <class F>
bool each_block_tuple(unsigned n, unsigned begin, unsigned end,
                      std::span<uint8_t> buf, F&& fn) {
  for (unsigned j = begin; j < end; ++j) buf[j] = 0;
  while (true) {
    if (!fn()) return false;
    unsigned j = end;
    bool done = true;
    while (j > begin) {
      --j;
      if (++buf[j] < n) {
        done = false;
        break;
      }
      buf[j] = 0;
    }
    if (done) return true;
  }
}

}  // namespace

bool scan_support_partite(
    const MintermParams& mp, const PartitePlacement& pl,
    const std::function<bool(std::span<const uint8_t>, bool)>& fn) {
  const PartiteLayout lay = layout_of(mp);
  std::array<uint8_t, VarIndexer::kMaxArity> buf{};
  std::span<uint8_t> tuple(buf.data(), mp.k);

  auto set_block = [&](unsigned begin, unsigned end, uint8_t two, uint8_t three,
                       int label) {
    for (unsigned j = begin; j < end; ++j) buf[j] = pl.one[j];
    if (label == 2) buf[end - 1] = two;
    if (label == 3) buf[end - 1] = three;
  };
  auto emit = [&] {
    Trit v = eval_partite_rule(mp, pl, tuple);
    if (v == Trit::Star) return true;
    return fn(tuple, v == Trit::One);
  };
  auto scan_ab = [&] {
    // a special, b free
    for (int a = 1; a <= 3; ++a) {
      set_block(lay.a_begin, lay.a_end, pl.a_two, pl.a_three, a);
      if (!each_block_tuple(mp.n, lay.b_begin, lay.b_end, tuple, emit)) return false;
    }
    // b special, a free but not special (avoid double emission)
    for (int b = 1; b <= 3; ++b) {
      set_block(lay.b_begin, lay.b_end, pl.b_two, pl.b_three, b);
      if (!each_block_tuple(mp.n, lay.a_begin, lay.a_end, tuple, [&] {
            if (block_label(pl, tuple, lay.a_begin, lay.a_end, pl.a_two,
                            pl.a_three) == 0)
              return emit();
            return true;
          }))
        return false;
    }
    return true;
  };

  for (unsigned j = lay.c_begin; j < lay.c_end; ++j) buf[j] = pl.one[j];
  if (mp.rule == MintermRule::Thm3) return scan_ab();

  // thm4: packed d values carry the full pattern, the rest only the special
  // 3x3 corner.
  for (unsigned d = 0; d < mp.n; ++d) {
    buf[lay.d_coord] = static_cast<uint8_t>(d);
    if ((pl.d1_mask >> d) & 1) {
      if (!scan_ab()) return false;
    } else {
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
          set_block(lay.a_begin, lay.a_end, pl.a_two, pl.a_three, a);
          set_block(lay.b_begin, lay.b_end, pl.b_two, pl.b_three, b);
          if (!emit()) return false;
        }
    }
  }
  return true;
}

// --- LabeledMinterm ---

LabeledMinterm::LabeledMinterm(MintermParams params, VarIndexer indexer,
                               UniformPlacement roles)
    : params_(params), indexer_(std::move(indexer)), uroles_(roles) {}

LabeledMinterm::LabeledMinterm(MintermParams params, VarIndexer indexer,
                               PartitePlacement roles)
    : params_(params), indexer_(std::move(indexer)), proles_(roles) {}

Trit LabeledMinterm::value_at(uint64_t var_rank) const {
  if (is_uniform()) return eval_uniform_rule(params_, uroles_, indexer_.unrank_edge(var_rank));
  std::array<uint8_t, VarIndexer::kMaxArity> t{};
  std::span<uint8_t> tuple(t.data(), params_.k);
  indexer_.unrank_tuple(var_rank, tuple);
  return eval_partite_rule(params_, proles_, tuple);
}

uint64_t LabeledMinterm::support_size() const {
  uint64_t count = 0;
  for_each_support([&](uint64_t, bool) { ++count; });
  return count;
}

void LabeledMinterm::for_each_support(
    const std::function<void(uint64_t, bool)>& fn) const {
  if (is_uniform()) {
    scan_support_uniform(params_, uroles_, [&](uint64_t edge, bool bit) {
      fn(indexer_.rank_edge(edge), bit);
      return true;
    });
  } else {
    scan_support_partite(params_, proles_,
                         [&](std::span<const uint8_t> tuple, bool bit) {
                           fn(indexer_.rank_tuple(tuple), bit);
                           return true;
                         });
  }
}

PartialAssignment LabeledMinterm::to_assignment() const {
  std::vector<PartialAssignment::Entry> entries;
  for_each_support([&](uint64_t var, bool bit) {
    entries.emplace_back(var, static_cast<uint8_t>(bit));
  });
  return PartialAssignment(indexer_.num_vars(), std::move(entries));
}

GroupSpec LabeledMinterm::natural_group() const {
  if (is_uniform()) return GroupSpec::symmetric(params_.n);
  return GroupSpec::partite_product(params_.n, params_.k);
}

// --- constructions ---

namespace {
uint64_t range_mask(unsigned begin, unsigned end) {
  uint64_t m = 0;
  for (unsigned v = begin; v < end; ++v) m |= 1ULL << v;
  return m;
}
}  // namespace

LabeledMinterm thm1_minterm(unsigned n, unsigned k) {
  auto [k1, k2] = split_k(k);
  if (n < 6 * k2 + k1 + 1)
    throw Error("thm1 construction needs n >= " + std::to_string(6 * k2 + k1 + 1) +
                " for k = " + std::to_string(k));
  MintermParams mp{MintermRule::Thm1, n, k, k1, k2, 0};
  UniformPlacement pl;
  for (unsigned i = 0; i < 6; ++i) pl.w_mask[i] = range_mask(i * k2, (i + 1) * k2);
  pl.b_mask = range_mask(n - k1, n);
  return LabeledMinterm(mp, VarIndexer::uniform(n, k), pl);
}

LabeledMinterm thm2_minterm(unsigned n, unsigned k) {
  if (k < 4 || k % 3 != 1) throw Error("thm2 construction needs k = 3l+1, k >= 4");
  unsigned l = (k - 1) / 3;
  unsigned s = static_cast<unsigned>(std::sqrt(static_cast<double>(n)));
  while ((s + 1) * (s + 1) <= n) ++s;
  while (s * s > n) --s;
  if (n < 7 * l + s + 3)
    throw Error("thm2 construction needs n >= 7l + floor(sqrt(n)) + 3");
  MintermParams mp{MintermRule::Thm2, n, k, l, l, s};
  UniformPlacement pl;
  for (unsigned i = 0; i < 6; ++i) pl.w_mask[i] = range_mask(i * l, (i + 1) * l);
  pl.b_mask = range_mask(n - l, n);
  pl.d1_mask = range_mask(6 * l, 6 * l + s);
  return LabeledMinterm(mp, VarIndexer::uniform(n, k), pl);
}

LabeledMinterm thm3_partite_minterm(unsigned n, unsigned k) {
  auto [k1, k2] = split_k(k);
  if (n < 3) throw Error("thm3 construction needs n >= 3");
  MintermParams mp{MintermRule::Thm3, n, k, k1, k2, 0};
  PartitePlacement pl;
  pl.a_two = 1;
  pl.a_three = 2;
  pl.b_two = 1;
  pl.b_three = 2;
  return LabeledMinterm(mp, VarIndexer::partite(n, k), pl);
}

LabeledMinterm thm4_partite_minterm(unsigned n, unsigned k) {
  if (k < 4 || k % 3 != 1) throw Error("thm4 construction needs k = 3l+1, k >= 4");
  unsigned l = (k - 1) / 3;
  if (n < 3) throw Error("thm4 construction needs n >= 3");
  unsigned s = static_cast<unsigned>(std::sqrt(static_cast<double>(n)));
  while ((s + 1) * (s + 1) <= n) ++s;
  while (s * s > n) --s;
  MintermParams mp{MintermRule::Thm4, n, k, l, l, s};
  PartitePlacement pl;
  pl.a_two = 1;
  pl.a_three = 2;
  pl.b_two = 1;
  pl.b_three = 2;
  pl.d1_mask = range_mask(0, s);
  return LabeledMinterm(mp, VarIndexer::partite(n, k), pl);
}

// --- JSON ---

namespace {

nlohmann::json vertices_of_mask(uint64_t mask) {
  auto arr = nlohmann::json::array();
  for (uint64_t m = mask; m; m &= m - 1) arr.push_back(std::countr_zero(m) + 1);
  return arr;
}

uint64_t mask_of_vertices(const nlohmann::json& arr) {
  uint64_t m = 0;
  for (const auto& v : arr) m |= 1ULL << (v.get<unsigned>() - 1);
  return m;
}

nlohmann::json entries_json(const LabeledMinterm& m) {
  auto arr = nlohmann::json::array();
  if (m.is_uniform()) {
    scan_support_uniform(m.params(), m.uniform_roles(),
                         [&](uint64_t edge, bool bit) {
                           arr.push_back({vertices_of_mask(edge), bit ? 1 : 0});
                           return true;
                         });
  } else {
    scan_support_partite(m.params(), m.partite_roles(),
                         [&](std::span<const uint8_t> tuple, bool bit) {
                           auto t = nlohmann::json::array();
                           for (uint8_t v : tuple) t.push_back(v + 1);
                           arr.push_back({std::move(t), bit ? 1 : 0});
                           return true;
                         });
  }
  return arr;
}

}  // namespace

std::string minterm_to_json(const LabeledMinterm& m, bool include_entries) {
  nlohmann::json j;
  const auto& mp = m.params();
  j["n"] = mp.n;
  j["k"] = mp.k;
  j["kind"] = m.is_uniform() ? "uniform" : "partite";
  j["rule"] = rule_name(mp.rule);
  nlohmann::json roles;
  if (m.is_uniform()) {
    const auto& pl = m.uniform_roles();
    roles["B"] = vertices_of_mask(pl.b_mask);
    auto w = nlohmann::json::array();
    for (uint64_t wm : pl.w_mask) w.push_back(vertices_of_mask(wm));
    roles["W"] = std::move(w);
    const uint64_t all = mp.n == 64 ? ~0ULL : (1ULL << mp.n) - 1;
    const uint64_t d = all & ~(pl.c_mask() | pl.b_mask);
    if (mp.rule == MintermRule::Thm2) {
      roles["D1"] = vertices_of_mask(pl.d1_mask);
      roles["D2"] = vertices_of_mask(d & ~pl.d1_mask);
    } else {
      roles["D"] = vertices_of_mask(d);
    }
  } else {
    const auto& pl = m.partite_roles();
    auto one = nlohmann::json::array();
    for (unsigned c = 0; c < mp.k; ++c) one.push_back(pl.one[c] + 1);
    roles["one"] = std::move(one);
    roles["a"] = {{"two", pl.a_two + 1}, {"three", pl.a_three + 1}};
    roles["b"] = {{"two", pl.b_two + 1}, {"three", pl.b_three + 1}};
    if (mp.rule == MintermRule::Thm4) roles["D1"] = vertices_of_mask(pl.d1_mask);
  }
  j["roles"] = std::move(roles);
  if (include_entries) j["entries"] = entries_json(m);
  return j.dump(2);
}

std::string explicit_minterm_to_json(const VarIndexer& ix, const PartialAssignment& p) {
  nlohmann::json j;
  j["n"] = ix.n();
  j["k"] = ix.k();
  j["kind"] = ix.kind() == IndexKind::Uniform ? "uniform" : "partite";
  j["rule"] = "explicit";
  auto arr = nlohmann::json::array();
  std::vector<uint8_t> t(ix.k());
  for (auto [var, bit] : p.entries()) {
    if (ix.kind() == IndexKind::Uniform) {
      arr.push_back({vertices_of_mask(ix.unrank_edge(var)), bit});
    } else {
      ix.unrank_tuple(var, t);
      auto tj = nlohmann::json::array();
      for (uint8_t v : t) tj.push_back(v + 1);
      arr.push_back({std::move(tj), bit});
    }
  }
  j["entries"] = std::move(arr);
  return j.dump(2);
}

MintermDoc minterm_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  MintermDoc doc;
  unsigned n = j.at("n").get<unsigned>();
  unsigned k = j.at("k").get<unsigned>();
  std::string kind = j.at("kind").get<std::string>();
  doc.rule = rule_from_name(j.at("rule").get<std::string>());
  doc.indexer = kind == "uniform" ? VarIndexer::uniform(n, k) : VarIndexer::partite(n, k);

  switch (doc.rule) {
    case MintermRule::Thm1:
      doc.labeled = thm1_minterm(n, k);
      break;
    case MintermRule::Thm2:
      doc.labeled = thm2_minterm(n, k);
      break;
    case MintermRule::Thm3:
      doc.labeled = thm3_partite_minterm(n, k);
      break;
    case MintermRule::Thm4:
      doc.labeled = thm4_partite_minterm(n, k);
      break;
    case MintermRule::Explicit: {
      std::vector<PartialAssignment::Entry> entries;
      std::vector<uint8_t> t(k);
      for (const auto& e : j.at("entries")) {
        uint64_t var;
        if (kind == "uniform") {
          var = doc.indexer.rank_edge(mask_of_vertices(e.at(0)));
        } else {
          const auto& tj = e.at(0);
          if (tj.size() != k) throw Error("tuple arity mismatch in minterm JSON");
          for (unsigned c = 0; c < k; ++c) t[c] = tj[c].get<uint8_t>() - 1;
          var = doc.indexer.rank_tuple(t);
        }
        entries.emplace_back(var, e.at(1).get<uint8_t>());
      }
      doc.assignment =
          PartialAssignment(doc.indexer.num_vars(), std::move(entries));
      break;
    }
  }
  if (doc.labeled) {
    // declared entries, when present, must match the rule
    if (j.contains("entries") &&
        j["entries"].size() != doc.labeled->support_size())
      throw Error("minterm JSON entry count does not match its rule");
    doc.assignment = doc.labeled->to_assignment();
  }
  return doc;
}

}  // namespace hsens
