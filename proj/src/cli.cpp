#include "hsens/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hsens/analysis.hpp"
#include "hsens/compose.hpp"
#include "json.hpp"

namespace hsens {

namespace {

// "lo:hi[:step]" or a comma list "16,25,36,49".
std::vector<unsigned> parse_grid(const std::string& text) {
  std::vector<unsigned> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stoul(part));
    return out;
  }
  unsigned lo = 0, hi = 0, step = 1;
  auto p1 = text.find(':');
  if (p1 == std::string::npos) {
    out.push_back(std::stoul(text));
    return out;
  }
  lo = std::stoul(text.substr(0, p1));
  auto rest = text.substr(p1 + 1);
  auto p2 = rest.find(':');
  if (p2 == std::string::npos) {
    hi = std::stoul(rest);
  } else {
    hi = std::stoul(rest.substr(0, p2));
    step = std::stoul(rest.substr(p2 + 1));
  }
  if (step == 0) throw Error("grid step must be positive");
  for (unsigned n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

LabeledMinterm construct_by_theorem(unsigned theorem, unsigned n, unsigned k) {
  switch (theorem) {
    case 1:
      return thm1_minterm(n, k);
    case 2:
      return thm2_minterm(n, k);
    case 3:
      return thm3_partite_minterm(n, k);
    case 4:
      return thm4_partite_minterm(n, k);
    default:
      throw Error("theorem must be 1, 2, 3 or 4");
  }
}

MintermRule rule_by_theorem(unsigned theorem) {
  switch (theorem) {
    case 1:
      return MintermRule::Thm1;
    case 2:
      return MintermRule::Thm2;
    case 3:
      return MintermRule::Thm3;
    case 4:
      return MintermRule::Thm4;
    default:
      throw Error("theorem must be 1, 2, 3 or 4");
  }
}

MintermFunction function_from_doc(const MintermDoc& doc, const std::string& group_text,
                                  uint64_t group_cap) {
  if (doc.labeled) return MintermFunction::from_labeled(*doc.labeled);
  GroupSpec group = group_text.empty()
                        ? (doc.indexer.kind() == IndexKind::Uniform
                               ? GroupSpec::symmetric(doc.indexer.n())
                               : GroupSpec::partite_product(doc.indexer.n(),
                                                            doc.indexer.k()))
                        : GroupSpec::parse(group_text);
  return MintermFunction::from_explicit(*doc.assignment, group, doc.indexer, group_cap);
}

int run_measures(const TruthTable& table, const std::string& measures,
                 unsigned budget) {
  MeasureBudget mb{budget};
  std::stringstream ss(measures);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "s") {
      std::printf("s=%d\n", sensitivity(table).value);
    } else if (item == "s0") {
      std::printf("s0=%d\n", sensitivity0(table).value);
    } else if (item == "s1") {
      std::printf("s1=%d\n", sensitivity1(table).value);
    } else if (item == "bs") {
      std::printf("bs=%d\n", block_sensitivity(table, mb).value);
    } else if (item == "c" || item == "C") {
      std::printf("C=%d\n", certificate(table, mb).value);
    } else if (item == "c0" || item == "C0") {
      std::printf("C0=%d\n", certificate0(table, mb).value);
    } else if (item == "c1" || item == "C1") {
      std::printf("C1=%d\n", certificate1(table, mb).value);
    } else {
      throw Error("unknown measure: " + item + " (use s,s0,s1,bs,c,c0,c1)");
    }
  }
  return 0;
}

std::string cluster_table(const std::vector<ClusterReport>& reports, bool timing) {
  std::string out = "n,k,enumerated,count,merged,truncated,seconds\n";
  char buf[160];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%u,%u,%llu,%llu,%llu,%d,%.6f\n", r.n, r.k,
                  static_cast<unsigned long long>(r.enumerated),
                  static_cast<unsigned long long>(r.count),
                  static_cast<unsigned long long>(r.merged_count),
                  r.truncated ? 1 : 0, timing ? r.seconds : 0.0);
    out += buf;
  }
  return out;
}

std::string cluster_json(const std::vector<ClusterReport>& reports, bool timing) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    auto j = nlohmann::json::parse(r.to_json());
    if (!timing) j["seconds"] = 0.0;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
  CLI::App app{"hypersens: low-sensitivity hypergraph properties toolkit"};
  app.require_subcommand(1);

  int workers = 0;
  uint64_t seed = 0;
  app.add_option("--workers", workers, "worker threads (0 = hardware)");
  app.add_option("--seed", seed, "seed for all randomized steps");

  // construct
  auto* c_construct = app.add_subcommand("construct", "build a minterm");
  unsigned theorem = 1, n = 0, k = 3;
  std::string out_path;
  c_construct->add_option("--theorem", theorem, "construction family (1-4)")->required();
  c_construct->add_option("--n", n, "vertex count")->required();
  c_construct->add_option("--k", k, "edge arity")->required();
  c_construct->add_option("--out", out_path, "output JSON path");

  // measure
  auto* c_measure = app.add_subcommand("measure", "compute measures of a function");
  std::string table_path, minterm_path, group_text, measures = "s,bs,c";
  unsigned budget = 16;
  unsigned table_cap = 27;
  c_measure->add_option("--table", table_path, "truth-table binary file");
  c_measure->add_option("--minterm", minterm_path, "minterm JSON (materialized)");
  c_measure->add_option("--group", group_text,
                        "group spec for explicit minterms (sym:n, partite:n:k, "
                        "abelian:m1xm2, trivial:n)");
  c_measure->add_option("--measures", measures, "comma list: s,s0,s1,bs,c,c0,c1");
  c_measure->add_option("--budget", budget, "global bs/C gate (default 16)");
  c_measure->add_option("--table-cap", table_cap, "materialization gate (default 27)");

  // verify
  auto* c_verify = app.add_subcommand("verify", "verify cluster claims");
  std::string claim, grid_text;
  int radius = 2, r_max = 3;
  uint64_t enum_cap = 50'000'000;
  std::string format = "csv";
  bool with_timing = true;
  c_verify->add_option("claim", claim, "claim1 | claim2")->required();
  c_verify->add_option("--k", k, "edge arity")->required();
  c_verify->add_option("--grid", grid_text, "n grid: lo:hi[:step] or comma list")
      ->required();
  c_verify->add_option("--radius", radius, "distance radius (default 2)");
  c_verify->add_option("--r-max", r_max, "claim2 D1-image difference cap");
  c_verify->add_option("--cap", enum_cap, "enumeration cap");
  c_verify->add_option("--out", out_path, "write the report table");
  c_verify->add_option("--format", format, "csv | json");
  c_verify->add_flag("--no-timing", [&](size_t) { with_timing = false; },
                     "zero the seconds column (byte-stable output)");

  // scan
  auto* c_scan = app.add_subcommand("scan", "hypergraph property scan");
  std::string mode = "exhaustive";
  uint64_t samples = 100000;
  c_scan->add_option("--n", n, "vertex count")->required();
  c_scan->add_option("--k", k, "edge arity")->required();
  c_scan->add_option("--mode", mode, "exhaustive | sampled");
  c_scan->add_option("--samples", samples, "sampled mode: property count");
  c_scan->add_option("--out", out_path, "CSV of per-property records");

  // report
  auto* c_report = app.add_subcommand("report", "scaling report");
  int effort = 2;
  std::string slope_window;
  c_report->add_option("--theorem", theorem, "construction family (1-4)")->required();
  c_report->add_option("--k", k, "edge arity")->required();
  c_report->add_option("--grid", grid_text, "n grid")->required();
  c_report->add_option("--effort", effort, "search restarts (default 2)");
  c_report->add_option("--out", out_path, "CSV path");
  c_report->add_option("--slope-within", slope_window,
                       "lo:hi window; exit 1 when the fitted slope is outside");
  c_report->add_flag("--no-timing", [&](size_t) { with_timing = false; },
                     "zero the seconds column (byte-stable output)");

  // oracle
  auto* c_oracle = app.add_subcommand("oracle", "brute-force materialization");
  uint64_t group_cap = 2'000'000;
  c_oracle->add_option("--minterm", minterm_path, "minterm JSON")->required();
  c_oracle->add_option("--group", group_text, "group spec for explicit minterms");
  c_oracle->add_option("--group-cap", group_cap, "group enumeration cap");
  c_oracle->add_option("--out", out_path, "truth-table binary output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_workers(workers);

    if (*c_construct) {
      LabeledMinterm m = construct_by_theorem(theorem, n, k);
      std::string json = minterm_to_json(m);
      if (out_path.empty())
        std::cout << json << "\n";
      else
        write_file_atomic(out_path, json + "\n");
      std::printf("rule=%s n=%u k=%u support=%llu\n", rule_name(m.params().rule).c_str(),
                  n, k, static_cast<unsigned long long>(m.support_size()));
      return 0;
    }

    if (*c_measure) {
      if (!table_path.empty()) {
        return run_measures(TruthTable::load(table_path), measures, budget);
      }
      if (minterm_path.empty()) throw Error("measure needs --table or --minterm");
      MintermDoc doc = minterm_from_json(read_file(minterm_path));
      MintermFunction f = function_from_doc(doc, group_text, group_cap);
      TruthTable table = f.materialize(table_cap);
      return run_measures(table, measures, budget);
    }

    if (*c_verify) {
      std::vector<unsigned> grid = parse_grid(grid_text);
      if (grid.empty()) throw Error("empty grid");
      std::vector<ClusterReport> reports;
      bool violation = false;
      if (claim == "claim1") {
        reports = verify_claim1(k, grid, radius, enum_cap);
        for (const auto& r : reports)
          if (r.count != reports.front().count) violation = true;
      } else if (claim == "claim2") {
        reports = verify_claim2(k, grid, r_max, radius, enum_cap);
        // bounded by the constant observed at the first grid point
        auto isqrt = [](unsigned v) {
          unsigned s = static_cast<unsigned>(std::sqrt(static_cast<double>(v)));
          while ((s + 1) * (s + 1) <= v) ++s;
          while (s * s > v) --s;
          return s;
        };
        const uint64_t c_num = reports.front().count;
        const uint64_t c_den = isqrt(grid.front());
        for (size_t i = 0; i < reports.size(); ++i)
          if (reports[i].count * c_den > c_num * isqrt(grid[i])) violation = true;
      } else {
        throw Error("verify: claim must be claim1 or claim2");
      }
      for (const auto& r : reports)
        std::printf("n=%u enumerated=%llu count=%llu merged=%llu%s\n", r.n,
                    static_cast<unsigned long long>(r.enumerated),
                    static_cast<unsigned long long>(r.count),
                    static_cast<unsigned long long>(r.merged_count),
                    r.truncated ? " (truncated)" : "");
      if (!out_path.empty())
        write_file_atomic(out_path, format == "json"
                                        ? cluster_json(reports, with_timing)
                                        : cluster_table(reports, with_timing));
      std::printf("%s: %s\n", claim.c_str(), violation ? "VIOLATION" : "ok");
      return violation ? 1 : 0;
    }

    if (*c_scan) {
      ScanMode scan_mode;
      if (mode == "exhaustive")
        scan_mode = ScanMode::Exhaustive;
      else if (mode == "sampled")
        scan_mode = ScanMode::Sampled;
      else
        throw Error("scan: mode must be exhaustive or sampled");

      std::string csv = "n,k,property,s,s0,s1,m,bound,violation\n";
      std::function<void(const ScanRecord&)> sink;
      if (!out_path.empty())
        sink = [&](const ScanRecord& r) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "%u,%u,%s,%d,%d,%d,%llu,%d,%d\n", r.n, r.k,
                        r.property_id.c_str(), r.s, r.s0, r.s1,
                        static_cast<unsigned long long>(r.m), r.bound,
                        r.violation ? 1 : 0);
          csv += buf;
        };
      ScanSummary summary = scan_properties(n, k, scan_mode, samples, seed, sink);
      if (!out_path.empty()) write_file_atomic(out_path, csv);
      std::printf("n=%u k=%u classes=%u properties=%llu violations=%llu", summary.n,
                  summary.k, summary.num_classes,
                  static_cast<unsigned long long>(summary.properties_checked),
                  static_cast<unsigned long long>(summary.violations));
      if (k == 2)
        std::printf(" turan_violations=%llu",
                    static_cast<unsigned long long>(summary.turan_violations));
      std::printf("\n");
      return summary.violations || (k == 2 && summary.turan_violations) ? 1 : 0;
    }

    if (*c_report) {
      std::vector<unsigned> grid = parse_grid(grid_text);
      ScalingReport rep = scaling_report(rule_by_theorem(theorem), k, grid, effort, seed);
      std::string csv = scaling_csv(rep, with_timing);
      if (out_path.empty())
        std::cout << csv;
      else
        write_file_atomic(out_path, csv);
      std::printf("slope=%.4f\n", rep.slope);
      if (!slope_window.empty()) {
        auto pos = slope_window.find(':');
        if (pos == std::string::npos) throw Error("--slope-within needs lo:hi");
        double lo = std::stod(slope_window.substr(0, pos));
        double hi = std::stod(slope_window.substr(pos + 1));
        if (rep.slope < lo || rep.slope > hi) {
          std::printf("slope outside [%g, %g]\n", lo, hi);
          return 1;
        }
      }
      return 0;
    }

    if (*c_oracle) {
      MintermDoc doc = minterm_from_json(read_file(minterm_path));
      MintermFunction f = function_from_doc(doc, group_text, group_cap);
      OracleResult res = bruteforce_oracle(f, group_cap);
      std::printf("N=%llu translates=%llu s=%d s0=%d s1=%d\n",
                  static_cast<unsigned long long>(f.num_vars()),
                  static_cast<unsigned long long>(res.translates), res.s.value,
                  res.s0.value, res.s1.value);
      if (!out_path.empty()) res.table.save(out_path);
      return 0;
    }
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

}  // namespace hsens
