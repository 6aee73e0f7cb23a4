#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "hsens/analysis.hpp"

namespace hsens {

namespace {

using Clock = std::chrono::steady_clock;

BitVec base_one_input(const MintermFunction& f) {
  BitVec x(f.num_vars());
  for (auto [var, bit] : f.base_assignment().entries())
    if (bit) x.set(var, true);
  return x;
}

// A 0-ish seed near two translates: take the minterm's own input, overwrite
// with a nearby translate, then flip one of the conflicting variables.
std::optional<BitVec> near_pair_seed(const MintermFunction& f) {
  const PartialAssignment& base = f.base_assignment();
  std::optional<PartialAssignment> other;

  if (f.is_labeled()) {
    const auto& m = f.labeled();
    OrbitConstraints oc;
    oc.fix_anchor = true;
    if (m.is_uniform()) {
      for_each_uniform_placement(m, oc, [&](const UniformPlacement& pl) {
        int d = symbolic_dist_uniform(m.params(), m.uniform_roles(), pl, 2);
        if (d >= 1 && d <= 2) {
          other = placement_assignment(m, pl);
          return false;
        }
        return true;
      });
    } else {
      for_each_partite_placement(m, oc, [&](const PartitePlacement& pl) {
        int d = symbolic_dist_partite(m.params(), m.partite_roles(), pl, 2);
        if (d >= 1 && d <= 2) {
          other = placement_assignment(m, pl);
          return false;
        }
        return true;
      });
    }
  } else {
    for (const auto& q : f.explicit_orbit()) {
      uint64_t d = dist(base, q);
      if (d >= 1 && d <= 2) {
        other = q;
        break;
      }
    }
  }
  if (!other) return std::nullopt;

  BitVec x(f.num_vars());
  for (auto [var, bit] : base.entries())
    if (bit) x.set(var, true);
  for (auto [var, bit] : other->entries()) x.set(var, bit);
  for (auto [var, bit] : base.entries()) {
    auto o = other->at(var);
    if (o && *o != bit) {
      x.flip(var);  // one conflicting variable back toward the base
      break;
    }
  }
  return x;
}

}  // namespace

SearchResult search_sensitivity_lower(const MintermFunction& f, int effort,
                                      uint64_t seed) {
  if (effort < 1) effort = 1;
  const uint64_t nv = f.num_vars();
  SearchResult best;
  best.witness = BitVec(nv);
  best.best = -1;

  auto offer = [&](int s, const BitVec& x) {
    if (s > best.best) {
      best.best = s;
      best.witness = x;
    }
  };

  constexpr int kMaxSteps = 6;
  constexpr int kSensCands = 2;
  constexpr int kRandCands = 2;

  auto climb = [&](BitVec x, SplitMix64 rng) {
    auto cur = f.scan_sensitivity(x);
    offer(cur.sensitivity, x);
    for (int step = 0; step < kMaxSteps; ++step) {
      bool improved = false;
      std::vector<uint64_t> cands(
          cur.sensitive_vars.begin(),
          cur.sensitive_vars.begin() +
              std::min<size_t>(cur.sensitive_vars.size(), kSensCands));
      for (int r = 0; r < kRandCands; ++r) cands.push_back(rng.below(nv));
      for (uint64_t v : cands) {
        BitVec y = x;
        y.flip(v);
        auto sc = f.scan_sensitivity(y);
        offer(sc.sensitivity, y);
        if (sc.sensitivity > cur.sensitivity) {
          x = std::move(y);
          cur = std::move(sc);
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
  };

  for (int restart = 0; restart < effort; ++restart) {
    SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + restart);
    BitVec x(nv);
    if (restart == 0) {
      x = base_one_input(f);
    } else if (restart == 1) {
      auto near = near_pair_seed(f);
      x = near ? *near : base_one_input(f);
    } else {
      x = base_one_input(f);
      for (int i = 0; i < restart; ++i) x.flip(rng.below(nv));
    }
    climb(std::move(x), rng);
  }
  best.exact = false;
  if (best.best < 0) best.best = 0;
  return best;
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw Error("slope needs at least two points");
  double mx = 0, my = 0;
  for (auto [x, y] : points) {
    mx += std::log(x);
    my += std::log(y);
  }
  mx /= points.size();
  my /= points.size();
  double sxy = 0, sxx = 0;
  for (auto [x, y] : points) {
    double dx = std::log(x) - mx;
    sxy += dx * (std::log(y) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw Error("slope needs distinct x values");
  return sxy / sxx;
}

ScalingReport scaling_report(MintermRule rule, unsigned k,
                             const std::vector<unsigned>& n_grid, int effort,
                             uint64_t seed) {
  ScalingReport report;
  report.rule = rule;
  report.k = k;

  std::vector<std::pair<double, double>> points;
  for (unsigned n : n_grid) {
    auto t0 = Clock::now();
    LabeledMinterm family = [&] {
      switch (rule) {
        case MintermRule::Thm1:
          return thm1_minterm(n, k);
        case MintermRule::Thm2:
          return thm2_minterm(n, k);
        case MintermRule::Thm3:
          return thm3_partite_minterm(n, k);
        case MintermRule::Thm4:
          return thm4_partite_minterm(n, k);
        default:
          throw Error("scaling report needs a structured rule");
      }
    }();

    ScalingRow row;
    row.n = n;
    row.support = family.support_size();
    row.s1_bound = row.support;
    row.s0_bound = cluster_s0_bound(family).bound;
    MintermFunction f = MintermFunction::from_labeled(family);
    row.s_lower = search_sensitivity_lower(f, effort, seed).best;
    row.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report.rows.push_back(row);
    points.emplace_back(static_cast<double>(n),
                        static_cast<double>(std::max(row.s1_bound, row.s0_bound)));
  }
  report.slope = loglog_slope(points);
  return report;
}

std::string scaling_csv(const ScalingReport& report, bool with_timing) {
  std::string out = "n,k,support,s1_bound,s0_bound,s_lower,seconds\n";
  char buf[256];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%u,%u,%llu,%llu,%llu,%d,%.6f\n", row.n, report.k,
                  static_cast<unsigned long long>(row.support),
                  static_cast<unsigned long long>(row.s1_bound),
                  static_cast<unsigned long long>(row.s0_bound), row.s_lower,
                  with_timing ? row.seconds : 0.0);
    out += buf;
  }
  return out;
}

}  // namespace hsens
