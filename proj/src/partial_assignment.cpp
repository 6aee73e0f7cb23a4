#include "hsens/partial_assignment.hpp"

#include <algorithm>

#include "json.hpp"

namespace hsens {

PartialAssignment::PartialAssignment(uint64_t n_vars, std::vector<Entry> entries)
    : n_vars_(n_vars), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (size_t i = 0; i < entries_.size(); ++i) {
    auto [var, bit] = entries_[i];
    if (var >= n_vars_) throw Error("assignment entry index out of range");
    if (bit > 1) throw Error("assignment entry value must be 0 or 1");
    if (i > 0 && entries_[i - 1].first == var)
      throw Error("duplicate assignment entry for variable " + std::to_string(var));
  }
}

std::optional<int> PartialAssignment::at(uint64_t var) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(),
                             Entry{var, 0});
  if (it != entries_.end() && it->first == var) return it->second;
  return std::nullopt;
}

bool PartialAssignment::consistent_with_input(uint64_t x) const {
  if (n_vars_ > TruthTable::kMaxVars)
    throw Error("consistent_with_input requires N <= 30");
  for (auto [var, bit] : entries_)
    if (((x >> var) & 1) != bit) return false;
  return true;
}

bool PartialAssignment::consistent_with(const BitVec& x) const {
  if (x.size() != n_vars_) throw Error("dimension mismatch in consistency check");
  for (auto [var, bit] : entries_)
    if (x.get(var) != static_cast<bool>(bit)) return false;
  return true;
}

std::string PartialAssignment::to_json() const {
  nlohmann::json j;
  j["n_vars"] = n_vars_;
  auto arr = nlohmann::json::array();
  for (auto [var, bit] : entries_) arr.push_back({var, bit});
  j["entries"] = std::move(arr);
  return j.dump();
}

PartialAssignment PartialAssignment::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<Entry> entries;
  for (const auto& e : j.at("entries"))
    entries.emplace_back(e.at(0).get<uint64_t>(), e.at(1).get<uint8_t>());
  return PartialAssignment(j.at("n_vars").get<uint64_t>(), std::move(entries));
}

uint64_t dist(const PartialAssignment& a, const PartialAssignment& b) {
  if (a.n_vars() != b.n_vars()) throw Error("dimension mismatch in dist");
  uint64_t d = 0;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].first < eb[j].first)
      ++i;
    else if (eb[j].first < ea[i].first)
      ++j;
    else {
      if (ea[i].second != eb[j].second) ++d;
      ++i;
      ++j;
    }
  }
  return d;
}

TruthTable restrict_table(const TruthTable& f, const PartialAssignment& p) {
  if (p.n_vars() != f.n_vars()) throw Error("dimension mismatch in restrict");
  unsigned survivors = f.n_vars() - static_cast<unsigned>(p.size());
  TruthTable out(survivors);
  for (uint64_t y = 0; y < out.num_inputs(); ++y) {
    uint64_t x = merge_input(p, y);
    if (f.get(static_cast<uint32_t>(x))) out.set(static_cast<uint32_t>(y), true);
  }
  return out;
}

uint64_t merge_input(const PartialAssignment& p, uint64_t y) {
  uint64_t x = 0;
  const auto& entries = p.entries();
  size_t e = 0;
  unsigned out_bit = 0;
  for (uint64_t var = 0; var < p.n_vars(); ++var) {
    if (e < entries.size() && entries[e].first == var) {
      x |= static_cast<uint64_t>(entries[e].second) << var;
      ++e;
    } else {
      x |= ((y >> out_bit) & 1) << var;
      ++out_bit;
    }
  }
  return x;
}

}  // namespace hsens
