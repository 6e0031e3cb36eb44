// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_NODE_HPP
#define FDDA_NODE_HPP

#include "fdda/accuracy.hpp"
#include "fdda/error.hpp"
#include "fdda/frames.hpp"
#include "fdda/topology.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace fdda {

struct SelfTestOutcome {
  bool passed = true;
};

/// Everything one node knows during a diagnosis cycle. The engine functions
/// below are the only transitions applied to it.
struct NodeState {
  NodeState() = default;
  explicit NodeState(NodeId node) : id(node) { local_status.owner = id; }

  NodeId id;
  StatusBit self_status = StatusBit::fault_free;
  LocalStatusTable local_status;
  bool has_acted_as_initiator = false;
  std::optional<std::vector<NodeId>> certified_faulty;
  bool barred = false;

  friend bool operator==(const NodeState &, const NodeState &) = default;
};

inline StatusBit run_self_test(NodeState &node, SelfTestOutcome injected) {
  node.self_status = injected.passed ? StatusBit::fault_free : StatusBit::faulty;
  return node.self_status;
}

/// Neighbor responses keyed by neighbor index; an empty optional (or a
/// missing key) means nothing arrived before the timeout.
using StatusResponses = std::map<NodeIndex, std::optional<StatusFrame>>;

/// Fills the node's local status table from the hello round. Silent
/// neighbors are recorded as faulty.
inline LocalStatusTable acquire_neighbor_status(NodeState &node,
                                                const Topology &topology,
                                                const StatusResponses &responses) {
  if (node.self_status != StatusBit::fault_free)
    throw ProtocolViolation("node " + node.id.address +
                            " failed self-test and cannot acquire status");
  const auto &adjacent = topology.adjacent(node.id.index);
  for (const auto &[from, frame] : responses) {
    if (!std::binary_search(adjacent.begin(), adjacent.end(), from))
      throw ProtocolViolation("node " + node.id.address +
                              " got a status frame from non-neighbor " +
                              std::to_string(from));
    if (frame && frame->address != topology.node(from).address)
      throw ProtocolViolation("status frame from node " +
                              std::to_string(from) + " claims address " +
                              frame->address);
  }

  LocalStatusTable table{node.id, {}};
  for (auto n : adjacent) {
    const auto &address = topology.node(n).address;
    const auto it = responses.find(n);
    if (it != responses.end() && it->second)
      table.rows.push_back(*it->second);
    else
      table.rows.push_back({address, StatusBit::faulty});
  }
  node.local_status = table;
  return table;
}

/// Takes the frame from the previous initiator, votes against every neighbor
/// the local table marks faulty, and returns the frame for hand-off.
inline FaultCountFrame act_as_initiator(NodeState &node, FaultCountFrame fcf,
                                        const ReachabilityTable &table) {
  if (node.self_status != StatusBit::fault_free)
    throw ProtocolViolation("faulty node " + node.id.address +
                            " cannot act as initiator");
  if (node.has_acted_as_initiator)
    throw ProtocolViolation("node " + node.id.address +
                            " already acted as initiator this cycle");
  if (node.local_status.owner != node.id)
    throw ProtocolViolation("node " + node.id.address +
                            " has no local status table");
  for (const auto &row : node.local_status.rows) {
    if (row.status != StatusBit::faulty)
      continue;
    const auto &suspect = table.entry_for_address(row.address);
    fcf = record_vote(std::move(fcf), suspect.node, node.id,
                      static_cast<std::uint32_t>(suspect.reachability));
  }
  node.has_acted_as_initiator = true;
  return fcf;
}

/// First node of `order` not in `skip`.
inline std::optional<NodeId> first_initiator(std::span<const NodeId> order,
                                             const std::set<NodeIndex> &skip) {
  for (const auto &n : order)
    if (!skip.contains(n.index))
      return n;
  return std::nullopt;
}

/// The node after `current` in `order` that is not in `skip`, if any.
inline std::optional<NodeId> next_initiator(std::span<const NodeId> order,
                                            const NodeId &current,
                                            const std::set<NodeIndex> &skip) {
  const auto it = std::find(order.begin(), order.end(), current);
  if (it == order.end())
    throw LookupError("node " + current.address +
                      " is not in the initiator order");
  return first_initiator(
      order.subspan(static_cast<std::size_t>(it - order.begin()) + 1), skip);
}

struct Assessment {
  std::string address;
  PercentAccuracy accuracy;

  friend bool operator==(const Assessment &, const Assessment &) = default;
};

struct Qualification {
  std::vector<Assessment> accuracies;
  std::vector<std::string> certified;

  friend bool operator==(const Qualification &,
                         const Qualification &) = default;
};

/// Percent accuracy of every suspect in the frame and, in frame order, the
/// suspects whose accuracy reaches `threshold`.
inline Qualification qualify_faults(const FaultCountFrame &fcf,
                                    ThresholdPercent threshold) {
  Qualification q;
  for (const auto &e : fcf.entries()) {
    PercentAccuracy accuracy(e.vote, e.reachability);
    if (accuracy.meets(threshold))
      q.certified.push_back(e.faulty_address);
    q.accuracies.push_back({e.faulty_address, accuracy});
  }
  return q;
}

/// Delivers the certified list to every node. Certified nodes are barred
/// but still store the list.
inline void broadcast_certified(std::span<const NodeId> certified,
                                std::span<NodeState> nodes) {
  const std::vector<NodeId> list(certified.begin(), certified.end());
  for (auto &node : nodes) {
    node.certified_faulty = list;
    node.barred = std::find(list.begin(), list.end(), node.id) != list.end();
  }
}

} // namespace fdda

#endif // FDDA_NODE_HPP
