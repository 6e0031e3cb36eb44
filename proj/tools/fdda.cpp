// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fdda/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char **argv) {
  using namespace fdda::cli;

  CLI::App app{"Accuracy-based distributed fault diagnosis over a simulated "
               "static network"};
  app.require_subcommand(1);

  std::string format = "table";

  RunArgs run;
  std::string run_threshold;
  auto *run_cmd = app.add_subcommand("run", "Run one diagnosis cycle");
  run_cmd->add_option("--scenario", run.scenario_path, "Scenario file")
      ->required();
  run_cmd->add_option("--threshold", run_threshold,
                      "Override the scenario threshold (percent)");
  run_cmd->add_option("--format", format, "table or machine");

  SweepArgs sweep;
  auto *sweep_cmd =
      app.add_subcommand("sweep", "Count certified nodes across thresholds");
  sweep_cmd->add_option("--scenario", sweep.scenario_path, "Scenario file")
      ->required();
  sweep_cmd->add_option("--threshold", sweep.thresholds,
                        "Value, comma list, or start:stop:step")
      ->capture_default_str();
  sweep_cmd->add_option("--format", format, "table or machine");

  EnumerateArgs enumerate;
  std::string scenario_path, topology, enum_threshold, mode = "fail_silent";
  bool mutate = false;
  auto *enum_cmd = app.add_subcommand(
      "enumerate", "Check every fault subset against the analytical oracle");
  enum_cmd->add_option("--scenario", scenario_path,
                       "Scenario file supplying topology and threshold");
  enum_cmd->add_option("--topology", topology,
                       "path:N, ring:N, star:LEAVES, complete:N or random:N");
  enum_cmd->add_option("--seed", enumerate.seed, "Seed for random:N")
      ->capture_default_str();
  enum_cmd->add_option("--mode", mode, "fail_silent or fail_reporting")
      ->capture_default_str();
  enum_cmd->add_option("--threshold", enum_threshold, "Threshold (percent)");
  enum_cmd->add_flag("--mutate", mutate,
                     "Seed a known engine bug (negative control)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    const auto fmt = parse_format(format);
    if (*run_cmd) {
      run.format = fmt;
      if (!run_threshold.empty())
        run.threshold = run_threshold;
      return cmd_run(run, std::cout, std::cerr);
    }
    if (*sweep_cmd) {
      sweep.format = fmt;
      return cmd_sweep(sweep, std::cout, std::cerr);
    }
    if (!scenario_path.empty())
      enumerate.scenario_path = scenario_path;
    if (!topology.empty())
      enumerate.topology = topology;
    if (!enum_threshold.empty())
      enumerate.threshold = enum_threshold;
    const auto parsed_mode = fdda::parse_fault_mode(mode);
    if (!parsed_mode)
      throw UsageError("--mode must be fail_silent or fail_reporting");
    enumerate.mode = *parsed_mode;
    if (mutate)
      enumerate.mutation = fdda::Mutation::timeout_read_as_fault_free;
    return cmd_enumerate(enumerate, std::cout, std::cerr);
  } catch (const UsageError &e) {
    std::cerr << "usage: " << e.what() << "\n";
    return exit_usage;
  }
}
