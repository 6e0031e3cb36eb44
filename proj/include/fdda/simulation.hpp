// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_SIMULATION_HPP
#define FDDA_SIMULATION_HPP

#include "fdda/accuracy.hpp"
#include "fdda/error.hpp"
#include "fdda/frames.hpp"
#include "fdda/node.hpp"
#include "fdda/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fdda {

/// fail_silent nodes emit nothing; fail_reporting nodes answer hellos with
/// status 1.
enum class FaultMode { fail_silent, fail_reporting };

inline std::string_view to_string(FaultMode mode) {
  return mode == FaultMode::fail_silent ? "fail_silent" : "fail_reporting";
}

inline std::optional<FaultMode> parse_fault_mode(std::string_view text) {
  if (text == "fail_silent")
    return FaultMode::fail_silent;
  if (text == "fail_reporting")
    return FaultMode::fail_reporting;
  return std::nullopt;
}

enum class MessageKind { hello, status_frame, fcf_handoff, broadcast };

inline std::string_view to_string(MessageKind kind) {
  switch (kind) {
  case MessageKind::hello:
    return "hello";
  case MessageKind::status_frame:
    return "status_frame";
  case MessageKind::fcf_handoff:
    return "fcf_handoff";
  case MessageKind::broadcast:
    return "broadcast";
  }
  return "?";
}

inline std::optional<MessageKind> parse_message_kind(std::string_view text) {
  for (auto k : {MessageKind::hello, MessageKind::status_frame,
                 MessageKind::fcf_handoff, MessageKind::broadcast})
    if (to_string(k) == text)
      return k;
  return std::nullopt;
}

/// Loses the single status frame `from` sends to `to` in the hello round.
struct DropRule {
  NodeIndex from = 0;
  NodeIndex to = 0;
  MessageKind kind = MessageKind::status_frame;

  friend bool operator==(const DropRule &, const DropRule &) = default;
};

/// Pre-built vote count for one suspect (synthetic mode). Zero votes means
/// the suspect never enters the frame.
struct SyntheticVote {
  NodeIndex suspect = 0;
  std::uint32_t votes = 0;
  std::optional<NodeIndex> first_voter;

  friend bool operator==(const SyntheticVote &,
                         const SyntheticVote &) = default;
};

/// Complete, reproducible input to one diagnosis cycle.
struct Scenario {
  Topology topology;
  std::map<NodeIndex, FaultMode> faults;
  std::vector<DropRule> drops;
  ThresholdPercent threshold;
  std::vector<NodeIndex> priority_override;
  /// Non-empty selects synthetic mode: the frame is built from these votes
  /// and only qualification runs.
  std::vector<SyntheticVote> synthetic_votes;

  bool synthetic() const noexcept { return !synthetic_votes.empty(); }
  bool is_faulty(NodeIndex n) const { return faults.contains(n); }

  friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Checks cross-references and connectivity; returns the reachability table
/// the cycle will use.
inline ReachabilityTable validate_scenario(const Scenario &s) {
  auto table = compute_reachability(s.topology, s.priority_override);
  for (const auto &[n, mode] : s.faults)
    if (!s.topology.contains(n))
      throw ConfigError("fault targets unknown node " + std::to_string(n));
  for (const auto &d : s.drops) {
    if (d.kind != MessageKind::status_frame)
      throw ConfigError("only status frames can be dropped");
    if (!s.topology.contains(d.from) || !s.topology.contains(d.to))
      throw ConfigError("drop names unknown node");
    if (!s.topology.are_adjacent(d.from, d.to))
      throw ConfigError("drop " + std::to_string(d.from) + " -> " +
                        std::to_string(d.to) + " is not between neighbors");
  }
  std::set<NodeIndex> seen;
  for (const auto &v : s.synthetic_votes) {
    if (!s.topology.contains(v.suspect))
      throw ConfigError("votes name unknown node " + std::to_string(v.suspect));
    if (!seen.insert(v.suspect).second)
      throw ConfigError("votes list node " + std::to_string(v.suspect) +
                        " twice");
    if (v.votes > s.topology.degree(v.suspect))
      throw ConfigError("node " + std::to_string(v.suspect) + " has " +
                        std::to_string(v.votes) +
                        " votes but only " +
                        std::to_string(s.topology.degree(v.suspect)) +
                        " neighbors");
    if (v.first_voter && !s.topology.are_adjacent(*v.first_voter, v.suspect))
      throw ConfigError("first voter of node " + std::to_string(v.suspect) +
                        " is not its neighbor");
  }
  if (s.synthetic() && (!s.faults.empty() || !s.drops.empty()))
    throw ConfigError("a votes section cannot be combined with faults or "
                      "drops");
  return table;
}

enum class Outcome { diagnosed, undiagnosable };

struct TraceEvent {
  MessageKind kind = MessageKind::hello;
  NodeIndex from = 0;
  NodeIndex to = 0;
  std::string payload;
  bool delivered = true;

  friend bool operator==(const TraceEvent &, const TraceEvent &) = default;
};

struct SuspectAccuracy {
  NodeId node;
  PercentAccuracy accuracy;

  friend bool operator==(const SuspectAccuracy &,
                         const SuspectAccuracy &) = default;
};

struct DiagnosisReport {
  Outcome outcome = Outcome::diagnosed;
  bool synthetic = false;
  ThresholdPercent threshold;
  std::vector<NodeId> nodes;
  std::vector<LocalStatusTable> status_tables;
  std::vector<NodeId> initiator_sequence;
  /// Frame after each acting initiator, parallel to initiator_sequence.
  std::vector<FaultCountFrame> fcf_snapshots;
  FaultCountFrame final_fcf;
  std::optional<NodeId> qualifier;
  std::vector<SuspectAccuracy> accuracies;
  std::vector<NodeId> certified;
  std::vector<NodeIndex> barred;
  std::vector<TraceEvent> trace;

  friend bool operator==(const DiagnosisReport &,
                         const DiagnosisReport &) = default;
};

/// Seeded bugs for negative-control runs of the oracle comparison.
enum class Mutation {
  none,
  /// Treats a neighbor that never answered as fault-free.
  timeout_read_as_fault_free,
};

struct CycleOptions {
  Mutation mutation = Mutation::none;
};

/// `['a', 'b']`, the list form the broadcaster prints.
inline std::string format_address_list(std::span<const std::string> addresses) {
  std::string out = "[";
  for (std::size_t i = 0; i < addresses.size(); ++i) {
    if (i != 0)
      out += ", ";
    out += "'" + addresses[i] + "'";
  }
  return out + "]";
}

namespace detail {

inline bool dropped(const Scenario &s, NodeIndex from, NodeIndex to) {
  return std::any_of(s.drops.begin(), s.drops.end(), [&](const DropRule &d) {
    return d.from == from && d.to == to && d.kind == MessageKind::status_frame;
  });
}

inline void finish_cycle(DiagnosisReport &report, const Topology &topology,
                         std::vector<NodeState> &states,
                         const NodeId &qualifier) {
  const auto q = qualify_faults(report.final_fcf, report.threshold);
  for (const auto &a : q.accuracies)
    report.accuracies.push_back(
        {topology.node_at_address(a.address), a.accuracy});
  for (const auto &address : q.certified)
    report.certified.push_back(topology.node_at_address(address));
  report.qualifier = qualifier;

  const auto payload = format_address_list(q.certified);
  for (const auto &n : topology.nodes())
    if (n.index != qualifier.index)
      report.trace.push_back(
          {MessageKind::broadcast, qualifier.index, n.index, payload, true});
  broadcast_certified(report.certified, states);
  for (const auto &st : states)
    if (st.barred)
      report.barred.push_back(st.id.index);
}

inline DiagnosisReport run_synthetic(const Scenario &s,
                                     const ReachabilityTable &table) {
  DiagnosisReport report;
  report.synthetic = true;
  report.threshold = s.threshold;
  report.nodes = s.topology.nodes();

  std::vector<FcfEntry> entries;
  for (const auto &v : s.synthetic_votes) {
    if (v.votes == 0)
      continue;
    const auto voter =
        v.first_voter ? *v.first_voter : s.topology.adjacent(v.suspect).front();
    entries.push_back({v.votes, s.topology.node(v.suspect).address,
                       s.topology.node(voter).address,
                       static_cast<std::uint32_t>(
                           table.reachability_of(v.suspect))});
  }
  report.final_fcf = FaultCountFrame::from_entries(std::move(entries));

  std::vector<NodeState> states;
  for (const auto &n : s.topology.nodes())
    states.emplace_back(n);
  // The nominal last initiator qualifies a synthetic frame.
  const auto order = initiator_order(table);
  finish_cycle(report, s.topology, states, order.back());
  return report;
}

} // namespace detail

/// Runs one full diagnosis cycle: self-test and the hello round for every
/// node, frame circulation along initiator order skipping faulty nodes, and
/// qualification plus broadcast at the last fault-free initiator.
inline DiagnosisReport run_cycle(const Scenario &s,
                                 const CycleOptions &options = {}) {
  const auto table = validate_scenario(s);
  if (s.synthetic())
    return detail::run_synthetic(s, table);

  const auto &topo = s.topology;
  DiagnosisReport report;
  report.threshold = s.threshold;
  report.nodes = topo.nodes();

  std::vector<NodeState> states;
  std::map<NodeIndex, std::size_t> slot;
  std::set<NodeIndex> faulty;
  for (const auto &n : topo.nodes()) {
    slot.emplace(n.index, states.size());
    auto &st = states.emplace_back(n);
    if (run_self_test(st, {!s.is_faulty(n.index)}) == StatusBit::faulty)
      faulty.insert(n.index);
  }
  if (faulty.size() == topo.size()) {
    report.outcome = Outcome::undiagnosable;
    return report;
  }

  // Hello round: every fault-free node asks all neighbors, then every
  // neighbor that can answer does.
  for (const auto &n : topo.nodes()) {
    if (faulty.contains(n.index))
      continue;
    for (auto m : topo.adjacent(n.index))
      report.trace.push_back({MessageKind::hello, n.index, m, "hello", true});
  }
  std::map<NodeIndex, StatusResponses> inbox;
  for (const auto &n : topo.nodes()) {
    if (faulty.contains(n.index))
      continue;
    auto &responses = inbox[n.index];
    for (auto m : topo.adjacent(n.index))
      responses.emplace(m, std::nullopt);
  }
  for (const auto &m : topo.nodes()) {
    const auto fault = s.faults.find(m.index);
    if (fault != s.faults.end() && fault->second == FaultMode::fail_silent)
      continue;
    const StatusFrame frame{m.address, faulty.contains(m.index)
                                           ? StatusBit::faulty
                                           : StatusBit::fault_free};
    for (auto n : topo.adjacent(m.index)) {
      if (faulty.contains(n))
        continue;
      const bool delivered = !detail::dropped(s, m.index, n);
      report.trace.push_back({MessageKind::status_frame, m.index, n,
                              encode_status_frame(frame), delivered});
      if (delivered)
        inbox[n][m.index] = frame;
    }
  }
  for (auto &st : states) {
    if (faulty.contains(st.id.index))
      continue;
    auto responses = inbox[st.id.index];
    if (options.mutation == Mutation::timeout_read_as_fault_free)
      for (auto &[m, frame] : responses)
        if (!frame)
          frame = StatusFrame{topo.node(m).address, StatusBit::fault_free};
    report.status_tables.push_back(
        acquire_neighbor_status(st, topo, responses));
  }

  // Frame circulation.
  const auto order = initiator_order(table);
  auto current = first_initiator(order, faulty);
  FaultCountFrame fcf;
  NodeId last;
  while (current) {
    auto &st = states[slot.at(current->index)];
    fcf = act_as_initiator(st, std::move(fcf), table);
    report.initiator_sequence.push_back(*current);
    report.fcf_snapshots.push_back(fcf);
    last = *current;
    current = next_initiator(order, *current, faulty);
    if (current)
      report.trace.push_back({MessageKind::fcf_handoff, last.index,
                              current->index, encode_fcf(fcf), true});
  }
  report.final_fcf = fcf;
  detail::finish_cycle(report, topo, states, last);
  return report;
}

/// Votes and certified set predicted straight from the graph, without
/// running the protocol.
struct Prediction {
  std::map<NodeIndex, std::uint32_t> votes;
  std::vector<NodeIndex> certified;

  friend bool operator==(const Prediction &, const Prediction &) = default;
};

/// A suspect s collects one vote from each fault-free neighbor n for which s
/// is faulty or the s -> n status frame is dropped. Suspects with at least
/// one vote are certified when 100 * votes >= threshold * degree(s).
inline Prediction oracle_predict(const Scenario &s) {
  Prediction p;
  std::map<NodeIndex, std::set<NodeIndex>> adj;
  for (const auto &e : s.topology.edges()) {
    adj[e.lo].insert(e.hi);
    adj[e.hi].insert(e.lo);
  }
  const auto all_faulty =
      std::all_of(s.topology.nodes().begin(), s.topology.nodes().end(),
                  [&](const NodeId &n) { return s.faults.contains(n.index); });
  if (all_faulty)
    return p;
  for (const auto &suspect : s.topology.nodes()) {
    std::uint32_t votes = 0;
    for (auto voter : adj[suspect.index]) {
      if (s.faults.contains(voter))
        continue;
      bool lost = false;
      for (const auto &d : s.drops)
        lost = lost || (d.from == suspect.index && d.to == voter);
      if (s.faults.contains(suspect.index) || lost)
        ++votes;
    }
    if (votes == 0)
      continue;
    p.votes[suspect.index] = votes;
    const auto degree = static_cast<std::uint64_t>(adj[suspect.index].size());
    if (100ull * 1'000'000ull * votes >=
        static_cast<std::uint64_t>(s.threshold.micro()) * degree)
      p.certified.push_back(suspect.index);
  }
  return p;
}

struct SweepPoint {
  ThresholdPercent threshold;
  std::vector<std::string> certified;

  std::size_t certified_count() const noexcept { return certified.size(); }
  friend bool operator==(const SweepPoint &, const SweepPoint &) = default;
};

/// Re-qualifies one frame at each threshold; points come back sorted by
/// threshold.
inline std::vector<SweepPoint>
threshold_sweep(const FaultCountFrame &fcf,
                std::vector<ThresholdPercent> thresholds) {
  std::sort(thresholds.begin(), thresholds.end());
  std::vector<SweepPoint> out;
  for (auto t : thresholds)
    out.push_back({t, qualify_faults(fcf, t).certified});
  return out;
}

inline std::vector<SweepPoint>
threshold_sweep(const Scenario &s, std::vector<ThresholdPercent> thresholds) {
  const auto report = run_cycle(s);
  if (report.outcome == Outcome::undiagnosable)
    throw ConfigError("scenario is undiagnosable: every node is faulty");
  return threshold_sweep(report.final_fcf, std::move(thresholds));
}

inline constexpr std::size_t max_enumeration_nodes = 12;

struct SubsetResult {
  std::vector<NodeIndex> faults;
  std::vector<NodeIndex> run_certified;
  std::vector<NodeIndex> oracle_certified;

  bool matches() const { return run_certified == oracle_certified; }
};

inline Scenario make_fault_scenario(const Topology &topology,
                                    ThresholdPercent threshold, FaultMode mode,
                                    std::span<const NodeIndex> faults) {
  Scenario s;
  s.topology = topology;
  s.threshold = threshold;
  for (auto n : faults)
    s.faults.emplace(n, mode);
  return s;
}

/// Certified node indices of a report, ascending.
inline std::vector<NodeIndex> certified_indices(const DiagnosisReport &r) {
  std::vector<NodeIndex> out;
  for (const auto &n : r.certified)
    out.push_back(n.index);
  std::sort(out.begin(), out.end());
  return out;
}

/// Runs the protocol and the oracle on every fault subset except the one
/// where all nodes are faulty.
inline std::vector<SubsetResult>
enumerate_fault_subsets(const Topology &topology, ThresholdPercent threshold,
                        FaultMode mode, const CycleOptions &options = {}) {
  const auto n = topology.size();
  if (n > max_enumeration_nodes)
    throw ConfigError("enumeration is limited to " +
                      std::to_string(max_enumeration_nodes) + " nodes, got " +
                      std::to_string(n));
  compute_reachability(topology);

  std::vector<SubsetResult> out;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    SubsetResult r;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i))
        r.faults.push_back(topology.nodes()[i].index);
    std::sort(r.faults.begin(), r.faults.end());
    const auto s = make_fault_scenario(topology, threshold, mode, r.faults);
    r.run_certified = certified_indices(run_cycle(s, options));
    r.oracle_certified = oracle_predict(s).certified;
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace fdda

#endif // FDDA_SIMULATION_HPP
