// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include "fdda/cli.hpp"
#include "fdda/fdda.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fdda;
using namespace fdda::testing;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string &what) {
    if (!cond) {
      ok = false;
      notes << "\n      failed: " << what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Vote bound over every frame a run produced.
std::size_t vote_bound_violations(const DiagnosisReport &r) {
  std::size_t bad = 0;
  for (const auto &fcf : r.fcf_snapshots)
    for (const auto &e : fcf.entries())
      bad += !(e.vote >= 1 && e.vote <= e.reachability);
  return bad;
}

std::size_t total_vote_checks = 0;
std::size_t total_vote_violations = 0;

void record_vote_bounds(const DiagnosisReport &r) {
  for (const auto &fcf : r.fcf_snapshots)
    total_vote_checks += fcf.size();
  total_vote_violations += vote_bound_violations(r);
}

void reachability(Check &c) {
  const auto t0 = Clock::now();
  const auto table = compute_reachability(reference_network());
  const double elapsed = seconds_since(t0);
  const std::map<NodeIndex, std::size_t> expected{
      {1, 3}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 3}, {7, 2}};
  c.expect(table.entries.size() == 7, "seven entries");
  for (const auto &[n, r] : expected)
    c.expect(table.reachability_of(n) == r,
             "reachability of N" + std::to_string(n));
  c.expect(elapsed < 1e-3, "runtime < 1 ms");
  c.notes << " (" << elapsed * 1e6 << " us)";
}

void golden_run(Check &c) {
  const auto t0 = Clock::now();
  const auto scenario = load_scenario(scenario_path("golden.scenario"));
  const auto r = run_cycle(scenario);
  const double elapsed = seconds_since(t0);
  record_vote_bounds(r);

  c.expect(r.outcome == Outcome::diagnosed, "diagnosed");
  c.expect(r.accuracies.size() == 3, "three suspects");
  if (r.accuracies.size() == 3) {
    c.expect(r.accuracies[0].accuracy == PercentAccuracy(2, 2), "2/2");
    c.expect(r.accuracies[1].accuracy == PercentAccuracy(2, 2), "2/2");
    c.expect(r.accuracies[2].accuracy == PercentAccuracy(1, 3), "1/3");
    c.expect(format_percent_precise(r.accuracies[0].accuracy) == "100.0",
             "prints 100.0");
    c.expect(format_percent_precise(r.accuracies[2].accuracy) ==
                 "33.3333333333",
             "prints 33.3333333333");
  }
  c.expect(addresses_of(r.certified) ==
               std::vector<std::string>{"172.16.30.110", "172.16.30.104"},
           "certified [172.16.30.110, 172.16.30.104]");
  c.expect(!r.fcf_snapshots.empty() &&
               encode_fcf(r.fcf_snapshots.front()) == first_fcf_text,
           "first frame byte-identical to the captured creation frame");
  c.expect(!r.fcf_snapshots.empty() &&
               encode_fcf(r.fcf_snapshots.back()) == updated_fcf_text,
           "qualifier's frame byte-identical to the captured updated frame");
  c.expect(r.qualifier && r.qualifier->address == "172.16.30.107",
           "qualified at 172.16.30.107");
  c.expect(elapsed < 1.0, "runtime < 1 s");
  c.notes << " (" << elapsed * 1e3 << " ms)";
}

void accuracy_spot_checks(Check &c) {
  struct Row {
    NodeIndex node;
    std::uint32_t votes, reach;
    double shown;
  };
  const std::vector<Row> rows{{1, 1, 3, 33.33}, {2, 1, 2, 50},
                              {3, 1, 2, 50},    {4, 1, 2, 50},
                              {6, 2, 3, 66.67}, {7, 2, 2, 100}};
  const auto scenario = load_scenario(scenario_path("table3.scenario"));
  const auto q = qualify_faults(run_cycle(scenario).final_fcf,
                                ThresholdPercent::parse("75"));
  c.expect(q.accuracies.size() == rows.size(), "six suspects with votes");
  for (std::size_t i = 0; i < rows.size() && i < q.accuracies.size(); ++i) {
    const auto &a = q.accuracies[i].accuracy;
    c.expect(q.accuracies[i].address ==
                 scenario.topology.node(rows[i].node).address,
             "row order");
    c.expect(a.votes() == rows[i].votes && a.reachability() == rows[i].reach,
             "exact rational for N" + std::to_string(rows[i].node));
    const double shown = std::stod(format_percent_table(a));
    c.expect(std::fabs(shown - rows[i].shown) <= 0.01 + 1e-9,
             "displayed accuracy for N" + std::to_string(rows[i].node));
  }
}

// Decimal text -> exact fraction, for the sweep oracle.
std::pair<std::int64_t, std::int64_t> decimal_fraction(const std::string &s) {
  std::int64_t num = 0, den = 1;
  bool frac = false;
  for (char ch : s) {
    if (ch == '.') {
      frac = true;
      continue;
    }
    num = num * 10 + (ch - '0');
    if (frac)
      den *= 10;
  }
  return {num, den};
}

void sweep_trend(Check &c) {
  // Quantitative points on the assumed vote table.
  const std::vector<std::string> points{"0",     "33.33", "50",
                                        "66.67", "75",    "100"};
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> votes{
      {1, 3}, {1, 2}, {1, 2}, {1, 2}, {2, 3}, {2, 2}};
  std::vector<std::size_t> oracle;
  for (const auto &p : points) {
    const auto [num, den] = decimal_fraction(p);
    std::size_t count = 0;
    for (const auto &[v, r] : votes)
      count += 100 * den * v >= num * static_cast<std::int64_t>(r);
    oracle.push_back(count);
  }
  // Frozen from the oracle above.
  const std::vector<std::size_t> frozen{6, 6, 5, 1, 1, 1};
  c.expect(oracle == frozen, "oracle reproduces frozen counts");

  std::vector<ThresholdPercent> thresholds;
  for (const auto &p : points)
    thresholds.push_back(ThresholdPercent::parse(p));
  const auto sweep = threshold_sweep(
      load_scenario(scenario_path("table3.scenario")), thresholds);
  std::vector<std::size_t> got;
  for (const auto &pt : sweep)
    got.push_back(pt.certified_count());
  c.expect(got == frozen, "sweep counts on the assumed vote table");
  c.notes << " (counts";
  for (auto n : got)
    c.notes << ' ' << n;
  c.notes << ")";

  // Monotonicity over random vote vectors.
  std::mt19937_64 rng(1000);
  std::size_t violations = 0;
  for (int round = 0; round < 1000; ++round) {
    std::vector<FcfEntry> entries;
    const int suspects = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < suspects; ++i) {
      const std::uint32_t reach = 1 + rng() % 8;
      entries.push_back({static_cast<std::uint32_t>(1 + rng() % reach),
                         "10.4.0." + std::to_string(i), "10.5.0.1", reach});
    }
    const auto fcf = FaultCountFrame::from_entries(entries);
    std::vector<ThresholdPercent> ts;
    for (int i = 0; i < 25; ++i)
      ts.push_back(ThresholdPercent::from_micro(rng() % 100'000'001));
    const auto pts = threshold_sweep(fcf, ts);
    for (std::size_t i = 1; i < pts.size(); ++i)
      violations += pts[i].certified_count() > pts[i - 1].certified_count();
  }
  c.expect(violations == 0, "non-increasing counts over 1000 vectors");
  c.notes << " (" << violations << " violations)";
}

void oracle_equivalence(Check &c) {
  const auto t0 = Clock::now();
  const auto threshold = ThresholdPercent::parse("75");
  const auto results = enumerate_fault_subsets(reference_network(), threshold,
                                               FaultMode::fail_silent);
  std::size_t matched = 0;
  for (const auto &r : results) {
    matched += r.matches();
    record_vote_bounds(run_cycle(make_fault_scenario(
        reference_network(), threshold, FaultMode::fail_silent, r.faults)));
  }
  c.expect(results.size() == 127, "127 subsets");
  c.expect(matched == results.size(), "reference network subsets match");

  std::mt19937_64 rng(2026);
  std::size_t random_matched = 0;
  for (int g = 0; g < 200; ++g) {
    std::uniform_int_distribution<std::size_t> size(4, 10);
    const auto topology = random_connected_topology(rng, size(rng));
    std::vector<NodeIndex> faults;
    for (const auto &n : topology.nodes())
      if (rng() % 3 == 0)
        faults.push_back(n.index);
    if (faults.size() == topology.size())
      faults.pop_back();
    const auto s = make_fault_scenario(topology, threshold,
                                       FaultMode::fail_silent, faults);
    const auto r = run_cycle(s);
    record_vote_bounds(r);
    random_matched += certified_indices(r) == oracle_predict(s).certified;
  }
  c.expect(random_matched == 200, "random graphs match");
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 30.0, "runtime < 30 s");
  c.notes << " (" << matched << "/" << results.size() << ", "
          << random_matched << "/200, " << elapsed << " s)";
}

void vote_bound(Check &c) {
  c.expect(total_vote_checks > 0, "entries were checked");
  c.expect(total_vote_violations == 0, "1 <= vote <= reachability");
  c.notes << " (" << total_vote_checks << " entries, " << total_vote_violations
          << " violations)";
}

void determinism(Check &c) {
  const cli::RunArgs args{scenario_path("golden.scenario"),
                          cli::Format::machine, {}};
  std::ostringstream out1, out2, err;
  const int rc1 = cli::cmd_run(args, out1, err);
  const int rc2 = cli::cmd_run(args, out2, err);
  c.expect(rc1 == 0 && rc2 == 0, "exit code 0");
  c.expect(!out1.str().empty() && out1.str() == out2.str(),
           "byte-identical machine output");
}

void adjacent_faults(Check &c) {
  const auto star = star_topology(4);
  const auto threshold = ThresholdPercent::parse("75");
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<NodeIndex> faults{0};
    for (NodeIndex leaf = 1; leaf <= 4; ++leaf)
      if (mask & (1u << (leaf - 1)))
        faults.push_back(leaf);
    const auto k = faults.size() - 1;
    const bool by_formula = 100 * (4 - k) >= 75 * 4;
    const bool by_hand = k <= 1;
    const auto r = run_cycle(
        make_fault_scenario(star, threshold, FaultMode::fail_silent, faults));
    const bool center_certified =
        std::any_of(r.certified.begin(), r.certified.end(),
                    [](const NodeId &n) { return n.index == 0; });
    c.expect(by_formula == by_hand, "formula vs hand, k'=" + std::to_string(k));
    c.expect(center_certified == by_hand,
             "center certification, k'=" + std::to_string(k));
  }
}

} // namespace

int main() {
  struct Criterion {
    const char *name;
    std::function<void(Check &)> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1 reachability table", reachability},
      {"AC2 golden run", golden_run},
      {"AC3 percent accuracy spot checks", accuracy_spot_checks},
      {"AC4 threshold sweep trend", sweep_trend},
      {"AC5 oracle equivalence", oracle_equivalence},
      {"AC6 vote bound", vote_bound},
      {"AC7 determinism", determinism},
      {"AC8 adjacent-fault property", adjacent_faults},
  };
  int failed = 0;
  for (const auto &cr : criteria) {
    Check c;
    try {
      cr.run(c);
    } catch (const std::exception &e) {
      c.ok = false;
      c.notes << "\n      exception: " << e.what();
    }
    std::cout << (c.ok ? "PASS " : "FAIL ") << cr.name << c.notes.str()
              << "\n";
    failed += !c.ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
