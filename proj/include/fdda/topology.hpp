// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_TOPOLOGY_HPP
#define FDDA_TOPOLOGY_HPP

#include "fdda/error.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdda {

using NodeIndex = std::uint32_t;

/// Stable identity of a node: its index and its network address.
struct NodeId {
  NodeIndex index = 0;
  std::string address;

  friend bool operator==(const NodeId &, const NodeId &) = default;
  friend auto operator<=>(const NodeId &, const NodeId &) = default;
};

/// Unordered edge, stored with `lo < hi`.
struct Edge {
  NodeIndex lo = 0;
  NodeIndex hi = 0;

  friend bool operator==(const Edge &, const Edge &) = default;
  friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Returns true for `a.b.c.d` with each octet a decimal in [0, 255].
inline bool is_dotted_quad(std::string_view text) {
  int octets = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t digits = 0;
    unsigned value = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      value = value * 10 + static_cast<unsigned>(text[pos] - '0');
      ++digits;
      ++pos;
      if (digits > 3)
        return false;
    }
    if (digits == 0 || value > 255)
      return false;
    ++octets;
    if (pos == text.size())
      return octets == 4;
    if (text[pos] != '.' || octets == 4)
      return false;
    ++pos;
  }
}

/// Static undirected network graph over a fixed set of nodes.
///
/// The constructor enforces the structural invariants (unique indices and
/// addresses, no self-loops, no duplicate edges, declared endpoints).
/// Connectivity is checked by `compute_reachability`, which every diagnosis
/// entry point runs before touching the graph.
class Topology {
public:
  Topology() = default;

  Topology(std::vector<NodeId> nodes,
           std::span<const std::pair<NodeIndex, NodeIndex>> edges)
      : nodes_(std::move(nodes)) {
    std::set<std::string> addresses;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto &n = nodes_[i];
      if (!is_dotted_quad(n.address))
        throw ConfigError("node " + std::to_string(n.index) +
                          ": address '" + n.address +
                          "' is not a dotted quad");
      if (!position_.emplace(n.index, i).second)
        throw ConfigError("duplicate node index " + std::to_string(n.index));
      if (!addresses.insert(n.address).second)
        throw ConfigError("duplicate node address " + n.address);
    }
    adjacency_.resize(nodes_.size());
    for (const auto &[a, b] : edges) {
      if (a == b)
        throw ConfigError("self-loop on node " + std::to_string(a));
      if (!contains(a) || !contains(b))
        throw ConfigError("edge " + std::to_string(a) + "-" +
                          std::to_string(b) + " names an undeclared node");
      const Edge e{std::min(a, b), std::max(a, b)};
      if (std::find(edges_.begin(), edges_.end(), e) != edges_.end())
        throw ConfigError("duplicate edge " + std::to_string(e.lo) + "-" +
                          std::to_string(e.hi));
      edges_.push_back(e);
      adjacency_[position_.at(a)].push_back(b);
      adjacency_[position_.at(b)].push_back(a);
    }
    for (auto &list : adjacency_)
      std::sort(list.begin(), list.end());
  }

  Topology(std::vector<NodeId> nodes,
           std::initializer_list<std::pair<NodeIndex, NodeIndex>> edges)
      : Topology(std::move(nodes),
                 std::span<const std::pair<NodeIndex, NodeIndex>>(
                     edges.begin(), edges.size())) {}

  const std::vector<NodeId> &nodes() const noexcept { return nodes_; }
  const std::vector<Edge> &edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  bool contains(NodeIndex index) const { return position_.contains(index); }

  const NodeId &node(NodeIndex index) const {
    return nodes_[position_of(index)];
  }

  /// Node with the given address, or nullptr.
  const NodeId *find_address(std::string_view address) const {
    for (const auto &n : nodes_)
      if (n.address == address)
        return &n;
    return nullptr;
  }

  const NodeId &node_at_address(std::string_view address) const {
    if (const auto *n = find_address(address))
      return *n;
    throw LookupError("unknown address " + std::string(address));
  }

  /// Neighbor indices of `index`, ascending.
  const std::vector<NodeIndex> &adjacent(NodeIndex index) const {
    return adjacency_[position_of(index)];
  }

  bool are_adjacent(NodeIndex a, NodeIndex b) const {
    const auto &list = adjacent(a);
    return std::binary_search(list.begin(), list.end(), b);
  }

  std::size_t degree(NodeIndex index) const { return adjacent(index).size(); }

  bool is_connected() const {
    if (nodes_.empty())
      return false;
    std::vector<bool> seen(nodes_.size(), false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!queue.empty()) {
      const auto at = queue.front();
      queue.pop_front();
      for (auto next : adjacency_[at]) {
        const auto p = position_.at(next);
        if (!seen[p]) {
          seen[p] = true;
          ++visited;
          queue.push_back(p);
        }
      }
    }
    return visited == nodes_.size();
  }

  friend bool operator==(const Topology &a, const Topology &b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

private:
  std::size_t position_of(NodeIndex index) const {
    const auto it = position_.find(index);
    if (it == position_.end())
      throw LookupError("unknown node " + std::to_string(index));
    return it->second;
  }

  std::vector<NodeId> nodes_;
  std::vector<Edge> edges_;
  std::map<NodeIndex, std::size_t> position_;
  std::vector<std::vector<NodeIndex>> adjacency_;
};

/// Nodes sharing an edge with `n`, ascending by index.
inline std::vector<NodeId> neighbors(const Topology &topology,
                                     const NodeId &n) {
  if (!topology.contains(n.index) ||
      topology.node(n.index).address != n.address)
    throw LookupError("node " + std::to_string(n.index) + " (" + n.address +
                      ") is not in the topology");
  std::vector<NodeId> out;
  for (auto i : topology.adjacent(n.index))
    out.push_back(topology.node(i));
  return out;
}

struct ReachabilityEntry {
  NodeId node;
  std::size_t reachability = 0;
  /// Tie-break rank among equal reachability; lower goes first.
  std::size_t priority = 0;

  friend bool operator==(const ReachabilityEntry &,
                         const ReachabilityEntry &) = default;
};

/// Per-node reachability (degree), ordered by descending reachability and
/// then ascending priority.
struct ReachabilityTable {
  std::vector<ReachabilityEntry> entries;

  std::size_t reachability_of(NodeIndex index) const {
    for (const auto &e : entries)
      if (e.node.index == index)
        return e.reachability;
    throw LookupError("node " + std::to_string(index) +
                      " has no reachability entry");
  }

  const ReachabilityEntry &entry_for_address(std::string_view address) const {
    for (const auto &e : entries)
      if (e.node.address == address)
        return e;
    throw LookupError("address " + std::string(address) +
                      " has no reachability entry");
  }

  friend bool operator==(const ReachabilityTable &,
                         const ReachabilityTable &) = default;
};

namespace detail {
inline void sort_by_initiator_priority(std::vector<ReachabilityEntry> &v) {
  std::stable_sort(v.begin(), v.end(), [](const auto &a, const auto &b) {
    if (a.reachability != b.reachability)
      return a.reachability > b.reachability;
    return a.priority < b.priority;
  });
}
} // namespace detail

/// Reachability of every node. Equal-reachability ties go to ascending
/// index unless `priority` ranks nodes explicitly: listed nodes come first
/// in list order, the rest follow by index.
inline ReachabilityTable
compute_reachability(const Topology &topology,
                     std::span<const NodeIndex> priority = {}) {
  if (!topology.is_connected())
    throw ConfigError("topology is not connected; the fault count frame "
                      "cannot visit every node");

  std::map<NodeIndex, std::size_t> rank;
  for (auto index : priority) {
    if (!topology.contains(index))
      throw ConfigError("priority override names unknown node " +
                        std::to_string(index));
    if (!rank.emplace(index, rank.size()).second)
      throw ConfigError("priority override lists node " +
                        std::to_string(index) + " twice");
  }
  std::vector<NodeIndex> unlisted;
  for (const auto &n : topology.nodes())
    if (!rank.contains(n.index))
      unlisted.push_back(n.index);
  std::sort(unlisted.begin(), unlisted.end());
  for (auto index : unlisted)
    rank.emplace(index, rank.size());

  ReachabilityTable table;
  for (const auto &n : topology.nodes())
    table.entries.push_back({n, topology.degree(n.index), rank.at(n.index)});
  detail::sort_by_initiator_priority(table.entries);
  return table;
}

/// Visiting order for the fault count frame: the first element is the
/// first initiator.
inline std::vector<NodeId> initiator_order(const ReachabilityTable &table) {
  auto entries = table.entries;
  detail::sort_by_initiator_priority(entries);
  std::vector<NodeId> order;
  order.reserve(entries.size());
  for (auto &e : entries)
    order.push_back(std::move(e.node));
  return order;
}

} // namespace fdda

#endif // FDDA_TOPOLOGY_HPP
