// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_GENERATORS_HPP
#define FDDA_GENERATORS_HPP

#include "fdda/error.hpp"
#include "fdda/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fdda {

/// Nodes 0..count-1 with addresses 10.0.x.y.
inline std::vector<NodeId> numbered_nodes(std::size_t count) {
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < count; ++i)
    nodes.push_back({static_cast<NodeIndex>(i),
                     "10.0." + std::to_string(i / 256) + "." +
                         std::to_string(i % 256)});
  return nodes;
}

using EdgeList = std::vector<std::pair<NodeIndex, NodeIndex>>;

inline Topology path_topology(std::size_t count) {
  EdgeList edges;
  for (NodeIndex i = 1; i < count; ++i)
    edges.emplace_back(i - 1, i);
  return Topology(numbered_nodes(count), edges);
}

inline Topology ring_topology(std::size_t count) {
  if (count < 3)
    throw ConfigError("a ring needs at least 3 nodes");
  EdgeList edges;
  for (NodeIndex i = 0; i < count; ++i)
    edges.emplace_back(i, static_cast<NodeIndex>((i + 1) % count));
  return Topology(numbered_nodes(count), edges);
}

/// Node 0 is the center.
inline Topology star_topology(std::size_t leaves) {
  EdgeList edges;
  for (NodeIndex i = 1; i <= leaves; ++i)
    edges.emplace_back(0, i);
  return Topology(numbered_nodes(leaves + 1), edges);
}

inline Topology complete_topology(std::size_t count) {
  EdgeList edges;
  for (NodeIndex i = 0; i < count; ++i)
    for (NodeIndex j = i + 1; j < count; ++j)
      edges.emplace_back(i, j);
  return Topology(numbered_nodes(count), edges);
}

/// Connected graph on `count` nodes: a random spanning tree plus each
/// remaining pair with probability `extra_edge_probability`.
template <class Rng>
Topology random_connected_topology(Rng &rng, std::size_t count,
                                   double extra_edge_probability = 0.3) {
  if (count == 0)
    throw ConfigError("a topology needs at least one node");
  EdgeList edges;
  std::vector<std::vector<bool>> linked(count, std::vector<bool>(count));
  std::vector<NodeIndex> perm(count);
  for (NodeIndex i = 0; i < count; ++i)
    perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 1; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    const auto a = perm[i];
    const auto b = perm[pick(rng)];
    edges.emplace_back(a, b);
    linked[a][b] = linked[b][a] = true;
  }
  std::bernoulli_distribution extra(extra_edge_probability);
  for (NodeIndex a = 0; a < count; ++a)
    for (NodeIndex b = a + 1; b < count; ++b)
      if (!linked[a][b] && extra(rng))
        edges.emplace_back(a, b);
  return Topology(numbered_nodes(count), edges);
}

} // namespace fdda

#endif // FDDA_GENERATORS_HPP
