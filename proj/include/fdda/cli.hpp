// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_CLI_HPP
#define FDDA_CLI_HPP

// Subcommand bodies shared by the `fdda` tool and the tests. Each returns a
// process exit code and writes only to the streams it is given.

#include "fdda/accuracy.hpp"
#include "fdda/error.hpp"
#include "fdda/generators.hpp"
#include "fdda/report_format.hpp"
#include "fdda/scenario_file.hpp"
#include "fdda/simulation.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace fdda::cli {

/// Process exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_parse = 2,
  exit_undiagnosable = 3,
  exit_internal = 4,
  exit_mismatch = 5,
};

class UsageError : public Error {
public:
  using Error::Error;
};

enum class Format { table, machine };

inline Format parse_format(std::string_view text) {
  if (text == "table")
    return Format::table;
  if (text == "machine")
    return Format::machine;
  throw UsageError("--format must be 'table' or 'machine'");
}

/// `75`, `0,33.33,50` or an inclusive range `start:stop:step`.
inline std::vector<ThresholdPercent> parse_threshold_list(std::string_view text) {
  const auto parse_one = [&](std::string_view t) {
    try {
      return ThresholdPercent::parse(detail::trim(t));
    } catch (const ConfigError &e) {
      throw UsageError(e.what());
    }
  };
  std::vector<ThresholdPercent> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t at = 0;
    while (true) {
      const auto c = text.find(':', at);
      parts.push_back(text.substr(at, c - at));
      if (c == std::string_view::npos)
        break;
      at = c + 1;
    }
    if (parts.size() != 3)
      throw UsageError("threshold range must be start:stop:step");
    const auto start = parse_one(parts[0]).micro();
    const auto stop = parse_one(parts[1]).micro();
    const auto step = parse_one(parts[2]).micro();
    if (step == 0 || stop < start)
      throw UsageError("threshold range needs step > 0 and start <= stop");
    for (auto v = start; v <= stop; v += step)
      out.push_back(ThresholdPercent::from_micro(v));
    return out;
  }
  std::size_t at = 0;
  while (true) {
    const auto c = text.find(',', at);
    out.push_back(parse_one(text.substr(at, c - at)));
    if (c == std::string_view::npos)
      break;
    at = c + 1;
  }
  return out;
}

struct RunArgs {
  std::string scenario_path;
  Format format = Format::table;
  std::optional<std::string> threshold;
};

inline int cmd_run(const RunArgs &args, std::ostream &out, std::ostream &err) {
  Scenario scenario;
  try {
    scenario = load_scenario(args.scenario_path);
  } catch (const ParseError &e) {
    err << args.scenario_path << ": " << e.what() << "\n";
    return exit_parse;
  }
  try {
    if (args.threshold) {
      const auto list = parse_threshold_list(*args.threshold);
      if (list.size() != 1)
        throw UsageError("run takes a single --threshold value");
      scenario.threshold = list.front();
    }
    const auto report = run_cycle(scenario);
    out << (args.format == Format::machine ? render_machine(report)
                                           : render_table(report));
    if (report.outcome == Outcome::undiagnosable) {
      err << "undiagnosable: no node passed its self-test\n";
      return exit_undiagnosable;
    }
    return exit_ok;
  } catch (const UsageError &e) {
    err << "usage: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error &e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return exit_internal;
  }
}

struct SweepArgs {
  std::string scenario_path;
  std::string thresholds = "0:100:5";
  Format format = Format::table;
};

inline int cmd_sweep(const SweepArgs &args, std::ostream &out,
                     std::ostream &err) {
  Scenario scenario;
  try {
    scenario = load_scenario(args.scenario_path);
  } catch (const ParseError &e) {
    err << args.scenario_path << ": " << e.what() << "\n";
    return exit_parse;
  }
  try {
    const auto thresholds = parse_threshold_list(args.thresholds);
    const auto report = run_cycle(scenario);
    if (report.outcome == Outcome::undiagnosable) {
      err << "undiagnosable: no node passed its self-test\n";
      return exit_undiagnosable;
    }
    const auto points = threshold_sweep(report.final_fcf, thresholds);
    out << (args.format == Format::machine
                ? render_sweep_machine(report, points)
                : render_sweep_table(points));
    return exit_ok;
  } catch (const UsageError &e) {
    err << "usage: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error &e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return exit_internal;
  }
}

struct EnumerateArgs {
  std::optional<std::string> scenario_path;
  /// `path:N`, `ring:N`, `star:LEAVES`, `complete:N` or `random:N`.
  std::optional<std::string> topology;
  std::uint64_t seed = 1;
  FaultMode mode = FaultMode::fail_silent;
  std::optional<std::string> threshold;
  Mutation mutation = Mutation::none;
};

inline Topology make_named_topology(std::string_view text,
                                    std::uint64_t seed) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw UsageError("--topology must look like kind:N");
  const auto kind = text.substr(0, colon);
  std::size_t n = 0;
  const auto digits = text.substr(colon + 1);
  const auto [p, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || p != digits.data() + digits.size() || n == 0)
    throw UsageError("--topology size must be a positive integer");
  const auto bound = kind == "star" ? n + 1 : n;
  if (bound > max_enumeration_nodes)
    throw UsageError("enumeration is limited to " +
                     std::to_string(max_enumeration_nodes) + " nodes");
  try {
    if (kind == "path")
      return path_topology(n);
    if (kind == "ring")
      return ring_topology(n);
    if (kind == "star")
      return star_topology(n);
    if (kind == "complete")
      return complete_topology(n);
    if (kind == "random") {
      std::mt19937_64 rng(seed);
      return random_connected_topology(rng, n);
    }
  } catch (const ConfigError &e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown topology kind '" + std::string(kind) + "'");
}

inline int cmd_enumerate(const EnumerateArgs &args, std::ostream &out,
                         std::ostream &err) {
  Topology topology;
  ThresholdPercent threshold;
  try {
    if (args.scenario_path.has_value() == args.topology.has_value())
      throw UsageError("enumerate takes exactly one of --scenario or "
                       "--topology");
    if (args.scenario_path) {
      try {
        const auto s = load_scenario(*args.scenario_path);
        topology = s.topology;
        threshold = s.threshold;
      } catch (const ParseError &e) {
        err << *args.scenario_path << ": " << e.what() << "\n";
        return exit_parse;
      }
      if (topology.size() > max_enumeration_nodes)
        throw UsageError("enumeration is limited to " +
                         std::to_string(max_enumeration_nodes) +
                         " nodes, scenario has " +
                         std::to_string(topology.size()));
    } else {
      topology = make_named_topology(*args.topology, args.seed);
    }
    if (args.threshold) {
      const auto list = parse_threshold_list(*args.threshold);
      if (list.size() != 1)
        throw UsageError("enumerate takes a single --threshold value");
      threshold = list.front();
    }
  } catch (const UsageError &e) {
    err << "usage: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    const auto results = enumerate_fault_subsets(
        topology, threshold, args.mode, CycleOptions{args.mutation});
    std::size_t mismatches = 0;
    const SubsetResult *first = nullptr;
    for (const auto &r : results) {
      if (r.matches())
        continue;
      ++mismatches;
      if (!first)
        first = &r;
    }
    out << "topology: " << topology.size() << " nodes, "
        << topology.edges().size() << " edges";
    if (args.topology && args.topology->starts_with("random:"))
      out << " (seed " << args.seed << ")";
    out << "; mode " << to_string(args.mode) << "; threshold "
        << threshold.to_string() << "\n";
    out << results.size() << " subsets, " << mismatches << " mismatches\n";
    if (first) {
      const auto list = [](const std::vector<NodeIndex> &v) {
        std::string s;
        for (auto n : v)
          s += (s.empty() ? "" : " ") + std::to_string(n);
        return s.empty() ? std::string("(none)") : s;
      };
      out << "\ncounterexample: faults " << list(first->faults)
          << "; protocol certified " << list(first->run_certified)
          << "; oracle certified " << list(first->oracle_certified) << "\n";
      out << "--- replay scenario ---\n"
          << write_scenario(make_fault_scenario(topology, threshold, args.mode,
                                                first->faults))
          << "--- end ---\n";
      return exit_mismatch;
    }
    return exit_ok;
  } catch (const Error &e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return exit_internal;
  }
}

} // namespace fdda::cli

#endif // FDDA_CLI_HPP
