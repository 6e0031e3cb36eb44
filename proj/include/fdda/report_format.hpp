// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_REPORT_FORMAT_HPP
#define FDDA_REPORT_FORMAT_HPP

#include "fdda/accuracy.hpp"
#include "fdda/error.hpp"
#include "fdda/frames.hpp"
#include "fdda/scenario_file.hpp"
#include "fdda/simulation.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace fdda {

/// Header line of the machine report; bump the number on any layout change.
inline constexpr std::string_view machine_report_header = "fdda-report 1";
inline constexpr std::string_view machine_sweep_header = "fdda-sweep 1";

inline std::vector<std::string> addresses_of(std::span<const NodeId> nodes) {
  std::vector<std::string> out;
  for (const auto &n : nodes)
    out.push_back(n.address);
  return out;
}

// Machine format, one record per line:
//
//   fdda-report 1
//   outcome diagnosed|undiagnosable
//   mode protocol|synthetic
//   threshold <percent>
//   node <index> <address>
//   status <owner> <address,bit>...
//   step <initiator> <fcf>          frame after that initiator acted
//   final <fcf>
//   qualifier <index>
//   accuracy <index> <votes> <reachability> <percent>
//   certified <index>
//   barred <index>
//   event <kind> <from> <to> delivered|dropped <payload>
//   end
//
// Frames and payloads run to the end of the line, verbatim.
inline std::string render_machine(const DiagnosisReport &r) {
  std::ostringstream out;
  out << machine_report_header << "\n";
  out << "outcome "
      << (r.outcome == Outcome::diagnosed ? "diagnosed" : "undiagnosable")
      << "\n";
  out << "mode " << (r.synthetic ? "synthetic" : "protocol") << "\n";
  out << "threshold " << r.threshold.to_string() << "\n";
  for (const auto &n : r.nodes)
    out << "node " << n.index << ' ' << n.address << "\n";
  for (const auto &t : r.status_tables) {
    out << "status " << t.owner.index;
    for (const auto &row : t.rows)
      out << ' ' << encode_status_frame(row);
    out << "\n";
  }
  for (std::size_t i = 0; i < r.initiator_sequence.size(); ++i)
    out << "step " << r.initiator_sequence[i].index << ' '
        << encode_fcf(r.fcf_snapshots[i]) << "\n";
  out << "final " << encode_fcf(r.final_fcf) << "\n";
  if (r.qualifier)
    out << "qualifier " << r.qualifier->index << "\n";
  for (const auto &a : r.accuracies)
    out << "accuracy " << a.node.index << ' ' << a.accuracy.votes() << ' '
        << a.accuracy.reachability() << ' '
        << format_percent_precise(a.accuracy) << "\n";
  for (const auto &n : r.certified)
    out << "certified " << n.index << "\n";
  for (auto n : r.barred)
    out << "barred " << n << "\n";
  for (const auto &e : r.trace)
    out << "event " << to_string(e.kind) << ' ' << e.from << ' ' << e.to << ' '
        << (e.delivered ? "delivered" : "dropped") << ' ' << e.payload << "\n";
  out << "end\n";
  return out.str();
}

/// Inverse of `render_machine`.
inline DiagnosisReport parse_machine_report(std::string_view text) {
  DiagnosisReport r;
  std::map<NodeIndex, NodeId> nodes;
  const auto lookup = [&](std::string_view word, std::size_t line) {
    const auto index = detail::parse_index(word, line);
    const auto it = nodes.find(index);
    if (it == nodes.end())
      throw ParseError(line, "record names undeclared node " +
                                 std::to_string(index));
    return it->second;
  };
  const auto number = [](std::string_view word, std::size_t line) {
    return static_cast<std::uint32_t>(detail::parse_index(word, line));
  };

  std::size_t line_no = 0;
  bool ended = false;
  std::size_t at = 0;
  while (at < text.size()) {
    const auto nl = text.find('\n', at);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    const auto line = text.substr(at, end - at);
    at = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != machine_report_header)
        throw ParseError(1, "expected header '" +
                                std::string(machine_report_header) + "'");
      continue;
    }
    if (ended)
      throw ParseError(line_no, "content after 'end'");
    const auto space = line.find(' ');
    const auto tag = line.substr(0, space);
    const auto body =
        space == std::string_view::npos ? std::string_view{}
                                        : line.substr(space + 1);
    const auto words = detail::split_words(body);
    const auto need = [&](std::size_t n) {
      if (words.size() < n)
        throw ParseError(line_no, "record '" + std::string(tag) +
                                      "' is missing fields");
    };
    try {
      if (tag == "outcome") {
        need(1);
        if (words[0] == "diagnosed")
          r.outcome = Outcome::diagnosed;
        else if (words[0] == "undiagnosable")
          r.outcome = Outcome::undiagnosable;
        else
          throw ParseError(line_no, "unknown outcome");
      } else if (tag == "mode") {
        need(1);
        r.synthetic = words[0] == "synthetic";
      } else if (tag == "threshold") {
        need(1);
        r.threshold = ThresholdPercent::parse(words[0]);
      } else if (tag == "node") {
        need(2);
        NodeId n{detail::parse_index(words[0], line_no), std::string(words[1])};
        nodes[n.index] = n;
        r.nodes.push_back(n);
      } else if (tag == "status") {
        need(1);
        LocalStatusTable t{lookup(words[0], line_no), {}};
        for (std::size_t i = 1; i < words.size(); ++i)
          t.rows.push_back(decode_status_frame(words[i]));
        r.status_tables.push_back(std::move(t));
      } else if (tag == "step") {
        need(2);
        r.initiator_sequence.push_back(lookup(words[0], line_no));
        r.fcf_snapshots.push_back(
            decode_fcf(body.substr(body.find(' ') + 1)));
      } else if (tag == "final") {
        r.final_fcf = decode_fcf(body);
      } else if (tag == "qualifier") {
        need(1);
        r.qualifier = lookup(words[0], line_no);
      } else if (tag == "accuracy") {
        need(3);
        r.accuracies.push_back(
            {lookup(words[0], line_no),
             PercentAccuracy(number(words[1], line_no),
                             number(words[2], line_no))});
      } else if (tag == "certified") {
        need(1);
        r.certified.push_back(lookup(words[0], line_no));
      } else if (tag == "barred") {
        need(1);
        r.barred.push_back(lookup(words[0], line_no).index);
      } else if (tag == "event") {
        need(4);
        const auto kind = parse_message_kind(words[0]);
        if (!kind)
          throw ParseError(line_no, "unknown event kind");
        if (words[3] != "delivered" && words[3] != "dropped")
          throw ParseError(line_no, "event must be delivered or dropped");
        // Payload is everything after the fourth field.
        std::size_t pos = 0;
        for (int field = 0; field < 4; ++field) {
          pos = body.find_first_not_of(' ', pos);
          pos = body.find(' ', pos);
        }
        const auto payload = pos == std::string_view::npos
                                 ? std::string_view{}
                                 : body.substr(pos + 1);
        r.trace.push_back({*kind, lookup(words[1], line_no).index,
                           lookup(words[2], line_no).index,
                           std::string(payload), words[3] == "delivered"});
      } else if (tag == "end") {
        ended = true;
      } else {
        throw ParseError(line_no, "unknown record '" + std::string(tag) + "'");
      }
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!ended)
    throw ParseError(line_no, "report is truncated (no 'end')");
  return r;
}

/// Human-readable rendering of a cycle.
inline std::string render_table(const DiagnosisReport &r) {
  std::ostringstream out;
  out << "diagnosis cycle, threshold " << r.threshold.to_string() << "%";
  if (r.synthetic)
    out << " (synthetic votes)";
  out << "\n";
  if (r.outcome == Outcome::undiagnosable) {
    out << "undiagnosable: every node failed its self-test\n";
    return out.str();
  }

  if (!r.status_tables.empty()) {
    out << "\nstatus acquisition\n";
    for (const auto &t : r.status_tables) {
      out << "  at " << t.owner.address << ":\n";
      for (const auto &row : t.rows)
        out << "    " << encode_status_frame(row) << "\n";
    }
  }

  if (!r.initiator_sequence.empty()) {
    out << "\nfault count frame transfer\n";
    out << "  initiator sequence:";
    for (const auto &n : r.initiator_sequence)
      out << ' ' << n.address;
    out << "\n";
    for (std::size_t i = 0; i < r.initiator_sequence.size(); ++i)
      out << "  after " << r.initiator_sequence[i].address << ": "
          << encode_fcf(r.fcf_snapshots[i]) << "\n";
  }
  out << "  final: " << encode_fcf(r.final_fcf) << "\n";

  out << "\nfault qualification";
  if (r.qualifier)
    out << " at " << r.qualifier->address;
  out << "\n";
  if (!r.accuracies.empty()) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "  %-16s %5s %5s %9s\n", "address", "votes",
                  "reach", "accuracy");
    out << buf;
    for (const auto &a : r.accuracies) {
      std::snprintf(buf, sizeof buf, "  %-16s %5u %5u %8s%%\n",
                    a.node.address.c_str(), a.accuracy.votes(),
                    a.accuracy.reachability(),
                    format_percent_table(a.accuracy).c_str());
      out << buf;
    }
  }
  if (r.certified.empty())
    out << "certified: (none)\n";
  else
    out << "certified: " << format_address_list(addresses_of(r.certified))
        << "\n";
  return out.str();
}

inline std::string render_sweep_table(std::span<const SweepPoint> points) {
  std::ostringstream out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-10s %9s\n", "threshold", "certified");
  out << buf;
  for (const auto &p : points) {
    std::snprintf(buf, sizeof buf, "%-10s %9zu\n",
                  p.threshold.to_string().c_str(), p.certified_count());
    out << buf;
  }
  return out.str();
}

// Machine sweep format:
//
//   fdda-sweep 1
//   suspect <index> <address> <votes> <reachability> <percent>
//   point <threshold> <count> <address>...
//   end
inline std::string render_sweep_machine(const DiagnosisReport &report,
                                        std::span<const SweepPoint> points) {
  std::ostringstream out;
  out << machine_sweep_header << "\n";
  for (const auto &a : report.accuracies)
    out << "suspect " << a.node.index << ' ' << a.node.address << ' '
        << a.accuracy.votes() << ' ' << a.accuracy.reachability() << ' '
        << format_percent_precise(a.accuracy) << "\n";
  for (const auto &p : points) {
    out << "point " << p.threshold.to_string() << ' ' << p.certified_count();
    for (const auto &address : p.certified)
      out << ' ' << address;
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

} // namespace fdda

#endif // FDDA_REPORT_FORMAT_HPP
