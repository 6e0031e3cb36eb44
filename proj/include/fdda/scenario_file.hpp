// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_SCENARIO_FILE_HPP
#define FDDA_SCENARIO_FILE_HPP

// Scenario files are line-oriented text:
//
//   # comment
//   threshold = 75
//   priority_override = 6 1 2 3 4 5 7
//
//   [nodes]
//   1 = 172.16.30.103
//   [edges]
//   1 2
//   [faults]
//   2 = fail_reporting
//   [drops]
//   6 5
//   [votes]
//   6 = 2 from 4
//
// Top-level keys must precede the first section, and a row may only name
// nodes (and, for drops, edges) declared above it. Unknown keys and
// sections are rejected.

#include "fdda/accuracy.hpp"
#include "fdda/error.hpp"
#include "fdda/simulation.hpp"
#include "fdda/topology.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdda {

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
      ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t')
      ++i;
    if (i > start)
      out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline NodeIndex parse_index(std::string_view word, std::size_t line) {
  NodeIndex v = 0;
  const auto [p, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc{} || p != word.data() + word.size())
    throw ParseError(line, "'" + std::string(word) + "' is not a node index");
  return v;
}

} // namespace detail

inline Scenario parse_scenario(std::string_view text) {
  enum class Section { top, nodes, edges, faults, drops, votes };
  const std::map<std::string_view, Section> section_names{
      {"nodes", Section::nodes},   {"edges", Section::edges},
      {"faults", Section::faults}, {"drops", Section::drops},
      {"votes", Section::votes}};

  Scenario s;
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  std::map<NodeIndex, std::size_t> node_line;
  std::set<std::string> addresses;
  std::set<std::pair<NodeIndex, NodeIndex>> edge_set;
  std::set<std::string_view> seen_sections, seen_keys;
  std::size_t priority_line = 0;
  std::size_t edges_line = 1;

  std::vector<std::string_view> lines;
  for (std::size_t at = 0; at <= text.size();) {
    const auto nl = text.find('\n', at);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(at, end - at));
    at = end + 1;
  }

  Section section = Section::top;
  std::size_t line_no = 0;
  for (auto line : lines) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty())
      continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError(line_no, "unterminated section header");
      const auto name = detail::trim(line.substr(1, line.size() - 2));
      const auto it = section_names.find(name);
      if (it == section_names.end())
        throw ParseError(line_no, "unknown section [" + std::string(name) + "]");
      if (!seen_sections.insert(it->first).second)
        throw ParseError(line_no, "section [" + std::string(name) +
                                      "] appears twice");
      section = it->second;
      if (section == Section::edges)
        edges_line = line_no;
      continue;
    }

    const auto eq = line.find('=');
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = eq == std::string_view::npos
                           ? std::string_view{}
                           : detail::trim(line.substr(eq + 1));
    const auto words = detail::split_words(line);

    const auto require_node = [&](NodeIndex n) {
      if (!node_line.contains(n))
        throw ParseError(line_no, "node " + std::to_string(n) +
                                      " is not declared in [nodes]");
    };

    switch (section) {
    case Section::top: {
      if (eq == std::string_view::npos)
        throw ParseError(line_no, "expected 'key = value'");
      if (!seen_keys.insert(key).second)
        throw ParseError(line_no, "key '" + std::string(key) + "' repeated");
      if (key == "threshold") {
        try {
          s.threshold = ThresholdPercent::parse(value);
        } catch (const ConfigError &e) {
          throw ParseError(line_no, e.what());
        }
      } else if (key == "priority_override") {
        for (auto w : detail::split_words(value))
          s.priority_override.push_back(detail::parse_index(w, line_no));
        priority_line = line_no;
      } else {
        throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
      }
      break;
    }
    case Section::nodes: {
      if (eq == std::string_view::npos)
        throw ParseError(line_no, "expected '<index> = <address>'");
      const auto index = detail::parse_index(key, line_no);
      if (!is_dotted_quad(value))
        throw ParseError(line_no, "'" + std::string(value) +
                                      "' is not a dotted-quad address");
      if (!node_line.emplace(index, line_no).second)
        throw ParseError(line_no, "node " + std::to_string(index) +
                                      " declared twice");
      if (!addresses.insert(std::string(value)).second)
        throw ParseError(line_no, "address " + std::string(value) +
                                      " declared twice");
      nodes.push_back({index, std::string(value)});
      break;
    }
    case Section::edges:
    case Section::drops: {
      if (words.size() != 2 && !(section == Section::drops &&
                                 words.size() == 3 &&
                                 words[2] == "status_frame"))
        throw ParseError(line_no, section == Section::edges
                                      ? "expected '<index> <index>'"
                                      : "expected '<from> <to> [status_frame]'");
      const auto a = detail::parse_index(words[0], line_no);
      const auto b = detail::parse_index(words[1], line_no);
      require_node(a);
      require_node(b);
      if (a == b)
        throw ParseError(line_no, "node " + std::to_string(a) +
                                      " cannot link to itself");
      if (section == Section::edges) {
        if (!edge_set.emplace(std::min(a, b), std::max(a, b)).second)
          throw ParseError(line_no, "duplicate edge");
        edges.emplace_back(a, b);
      } else {
        if (!edge_set.contains({std::min(a, b), std::max(a, b)}))
          throw ParseError(line_no, "drop endpoints are not neighbors");
        s.drops.push_back({a, b, MessageKind::status_frame});
      }
      break;
    }
    case Section::faults: {
      if (eq == std::string_view::npos)
        throw ParseError(line_no, "expected '<index> = <fault mode>'");
      const auto index = detail::parse_index(key, line_no);
      require_node(index);
      const auto mode = parse_fault_mode(value);
      if (!mode)
        throw ParseError(line_no, "unknown fault mode '" + std::string(value) +
                                      "' (fail_silent or fail_reporting)");
      if (!s.faults.emplace(index, *mode).second)
        throw ParseError(line_no, "node " + std::to_string(index) +
                                      " has two faults");
      break;
    }
    case Section::votes: {
      if (eq == std::string_view::npos)
        throw ParseError(line_no, "expected '<index> = <votes> [from <index>]'");
      const auto index = detail::parse_index(key, line_no);
      require_node(index);
      const auto vw = detail::split_words(value);
      if (vw.size() != 1 && !(vw.size() == 3 && vw[1] == "from"))
        throw ParseError(line_no, "expected '<index> = <votes> [from <index>]'");
      SyntheticVote v{index, detail::parse_index(vw[0], line_no), std::nullopt};
      if (vw.size() == 3) {
        v.first_voter = detail::parse_index(vw[2], line_no);
        require_node(*v.first_voter);
      }
      s.synthetic_votes.push_back(v);
      break;
    }
    }
  }

  if (nodes.empty())
    throw ParseError(line_no, "no [nodes] declared");
  std::set<NodeIndex> ranked;
  for (auto n : s.priority_override) {
    if (!node_line.contains(n))
      throw ParseError(priority_line,
                       "priority_override names undeclared node " +
                           std::to_string(n));
    if (!ranked.insert(n).second)
      throw ParseError(priority_line, "priority_override lists node " +
                                          std::to_string(n) + " twice");
  }
  try {
    s.topology = Topology(std::move(nodes), edges);
    validate_scenario(s);
  } catch (const ConfigError &e) {
    throw ParseError(edges_line, e.what());
  }
  return s;
}

inline Scenario load_scenario(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(0, "cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

/// Canonical text form; `parse_scenario(write_scenario(s)) == s`.
inline std::string write_scenario(const Scenario &s) {
  std::ostringstream out;
  out << "threshold = " << s.threshold.to_string() << "\n";
  if (!s.priority_override.empty()) {
    out << "priority_override =";
    for (auto n : s.priority_override)
      out << ' ' << n;
    out << "\n";
  }
  out << "\n[nodes]\n";
  for (const auto &n : s.topology.nodes())
    out << n.index << " = " << n.address << "\n";
  out << "\n[edges]\n";
  for (const auto &e : s.topology.edges())
    out << e.lo << ' ' << e.hi << "\n";
  if (!s.faults.empty()) {
    out << "\n[faults]\n";
    for (const auto &[n, mode] : s.faults)
      out << n << " = " << to_string(mode) << "\n";
  }
  if (!s.drops.empty()) {
    out << "\n[drops]\n";
    for (const auto &d : s.drops)
      out << d.from << ' ' << d.to << "\n";
  }
  if (!s.synthetic_votes.empty()) {
    out << "\n[votes]\n";
    for (const auto &v : s.synthetic_votes) {
      out << v.suspect << " = " << v.votes;
      if (v.first_voter)
        out << " from " << *v.first_voter;
      out << "\n";
    }
  }
  return out.str();
}

} // namespace fdda

#endif // FDDA_SCENARIO_FILE_HPP
