// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_FRAMES_HPP
#define FDDA_FRAMES_HPP

#include "fdda/error.hpp"
#include "fdda/topology.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdda {

enum class StatusBit : std::uint8_t { fault_free = 0, faulty = 1 };

/// One neighbor's answer to a hello: its address and its self-test result.
struct StatusFrame {
  std::string address;
  StatusBit status = StatusBit::fault_free;

  friend bool operator==(const StatusFrame &, const StatusFrame &) = default;
};

/// A node's view of its neighbors after status acquisition. One row per
/// neighbor; a neighbor that never answered is recorded as faulty.
struct LocalStatusTable {
  NodeId owner;
  std::vector<StatusFrame> rows;

  friend bool operator==(const LocalStatusTable &,
                         const LocalStatusTable &) = default;
};

struct FcfEntry {
  std::uint32_t vote = 0;
  std::string faulty_address;
  std::string first_voter_address;
  std::uint32_t reachability = 0;

  friend bool operator==(const FcfEntry &, const FcfEntry &) = default;
};

/// The fault count frame circulated from initiator to initiator. Entries keep
/// append order and suspects are unique.
class FaultCountFrame {
public:
  FaultCountFrame() = default;

  /// Builds a frame from decoded or synthetic entries, re-checking every
  /// invariant.
  static FaultCountFrame from_entries(std::vector<FcfEntry> entries) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto &e = entries[i];
      if (e.reachability == 0)
        throw ProtocolViolation("entry for " + e.faulty_address +
                                " has reachability 0");
      if (e.vote == 0)
        throw InvariantViolation("entry for " + e.faulty_address +
                                 " has no votes");
      if (e.vote > e.reachability)
        throw ProtocolViolation(
            "entry for " + e.faulty_address + " has " +
            std::to_string(e.vote) + " votes but reachability " +
            std::to_string(e.reachability));
      for (std::size_t j = 0; j < i; ++j)
        if (entries[j].faulty_address == e.faulty_address)
          throw InvariantViolation("duplicate entry for " + e.faulty_address);
    }
    FaultCountFrame fcf;
    fcf.entries_ = std::move(entries);
    return fcf;
  }

  const std::vector<FcfEntry> &entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  const FcfEntry *find(std::string_view faulty_address) const {
    for (const auto &e : entries_)
      if (e.faulty_address == faulty_address)
        return &e;
    return nullptr;
  }

  std::uint64_t total_votes() const {
    return std::accumulate(
        entries_.begin(), entries_.end(), std::uint64_t{0},
        [](std::uint64_t acc, const FcfEntry &e) { return acc + e.vote; });
  }

  friend bool operator==(const FaultCountFrame &,
                         const FaultCountFrame &) = default;

  friend FaultCountFrame record_vote(FaultCountFrame fcf, const NodeId &faulty,
                                     const NodeId &voter,
                                     std::uint32_t reachability_of_faulty);

private:
  std::vector<FcfEntry> entries_;
};

/// Adds `voter`'s vote against `faulty`. A new suspect is appended with the
/// voter recorded as first voter; a known suspect only has its vote bumped.
inline FaultCountFrame record_vote(FaultCountFrame fcf, const NodeId &faulty,
                                   const NodeId &voter,
                                   std::uint32_t reachability_of_faulty) {
  if (voter.address == faulty.address)
    throw ProtocolViolation("node " + voter.address + " voted for itself");
  if (reachability_of_faulty == 0)
    throw ProtocolViolation("suspect " + faulty.address +
                            " has reachability 0");
  for (auto &e : fcf.entries_) {
    if (e.faulty_address != faulty.address)
      continue;
    if (e.reachability != reachability_of_faulty)
      throw ProtocolViolation("suspect " + faulty.address +
                              " carries reachability " +
                              std::to_string(e.reachability) + ", not " +
                              std::to_string(reachability_of_faulty));
    if (e.first_voter_address == voter.address)
      throw ProtocolViolation("node " + voter.address +
                              " voted twice against " + faulty.address);
    if (e.vote >= e.reachability)
      throw ProtocolViolation("vote against " + faulty.address +
                              " would exceed its reachability " +
                              std::to_string(e.reachability));
    ++e.vote;
    return fcf;
  }
  fcf.entries_.push_back(
      {1, faulty.address, voter.address, reachability_of_faulty});
  return fcf;
}

inline std::string encode_status_frame(const StatusFrame &frame) {
  return frame.address + (frame.status == StatusBit::faulty ? ",1" : ",0");
}

/// One `<address>,<bit>\n` line per frame.
inline std::string encode_status_frames(std::span<const StatusFrame> frames) {
  std::string out;
  for (const auto &f : frames) {
    out += encode_status_frame(f);
    out += '\n';
  }
  return out;
}

namespace detail {
inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}
} // namespace detail

inline StatusFrame decode_status_frame(std::string_view line) {
  const auto text = detail::trim(line);
  const auto comma = text.find(',');
  const auto bad = [&] {
    return DecodeError("malformed status frame '" + std::string(line) + "'");
  };
  if (comma == std::string_view::npos)
    throw bad();
  const auto address = detail::trim(text.substr(0, comma));
  const auto bit = detail::trim(text.substr(comma + 1));
  if (!is_dotted_quad(address) || (bit != "0" && bit != "1"))
    throw bad();
  return {std::string(address),
          bit == "1" ? StatusBit::faulty : StatusBit::fault_free};
}

/// Inverse of `encode_status_frames`; blank lines are ignored.
inline std::vector<StatusFrame> decode_status_frames(std::string_view text) {
  std::vector<StatusFrame> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    if (!detail::trim(line).empty())
      out.push_back(decode_status_frame(line));
    if (nl == std::string_view::npos)
      break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

/// JSON array in the exact spacing the reference node prints, e.g.
/// `[{"vote": 1, "ip": "172.16.30.110", "from_ip": "172.16.30.108", "rch": "2"}]`.
/// Addresses are dotted quads, so no escaping is needed.
inline std::string encode_fcf(const FaultCountFrame &fcf) {
  std::string out = "[";
  bool first = true;
  for (const auto &e : fcf.entries()) {
    if (!first)
      out += ", ";
    first = false;
    out += "{\"vote\": " + std::to_string(e.vote) + ", \"ip\": \"" +
           e.faulty_address + "\", \"from_ip\": \"" + e.first_voter_address +
           "\", \"rch\": \"" + std::to_string(e.reachability) + "\"}";
  }
  out += "]";
  return out;
}

inline FaultCountFrame decode_fcf(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw DecodeError(std::string("fault count frame is not JSON: ") +
                      e.what());
  }
  if (!doc.is_array())
    throw DecodeError("fault count frame must be a JSON array");

  const auto count = [](const nlohmann::json &v,
                        const char *key) -> std::uint32_t {
    std::int64_t n = -1;
    if (v.is_number_integer()) {
      n = v.get<std::int64_t>();
    } else if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (!s.empty() && s.size() <= 9 &&
          std::all_of(s.begin(), s.end(),
                      [](char c) { return c >= '0' && c <= '9'; }))
        n = std::stoll(s);
    }
    if (n < 0 || n > 0xffffffffLL)
      throw DecodeError(std::string("field '") + key +
                        "' is not a non-negative integer");
    return static_cast<std::uint32_t>(n);
  };
  const auto address = [](const nlohmann::json &v, const char *key) {
    if (!v.is_string() || !is_dotted_quad(v.get<std::string>()))
      throw DecodeError(std::string("field '") + key +
                        "' is not a dotted-quad string");
    return v.get<std::string>();
  };

  std::vector<FcfEntry> entries;
  for (const auto &item : doc) {
    if (!item.is_object() || item.size() != 4 || !item.contains("vote") ||
        !item.contains("ip") || !item.contains("from_ip") ||
        !item.contains("rch"))
      throw DecodeError("each entry needs exactly the keys vote, ip, "
                        "from_ip, rch: " +
                        item.dump());
    if (item["vote"].is_string())
      throw DecodeError("field 'vote' must be a number");
    entries.push_back({count(item["vote"], "vote"),
                       address(item["ip"], "ip"),
                       address(item["from_ip"], "from_ip"),
                       count(item["rch"], "rch")});
  }
  return FaultCountFrame::from_entries(std::move(entries));
}

} // namespace fdda

#endif // FDDA_FRAMES_HPP
