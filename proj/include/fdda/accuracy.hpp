// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_ACCURACY_HPP
#define FDDA_ACCURACY_HPP

#include "fdda/error.hpp"

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace fdda {

/// Certification cut in percent, held as an exact decimal (millionths of a
/// percent) so that `accuracy >= threshold` never depends on rounding.
class ThresholdPercent {
public:
  static constexpr std::int64_t scale = 1'000'000;

  constexpr ThresholdPercent() = default;

  static ThresholdPercent from_micro(std::int64_t micro) {
    if (micro < 0 || micro > 100 * scale)
      throw ConfigError("threshold must lie in [0, 100]");
    ThresholdPercent t;
    t.micro_ = micro;
    return t;
  }

  /// Nearest representable threshold to `percent`.
  static ThresholdPercent from_percent(double percent) {
    if (!std::isfinite(percent))
      throw ConfigError("threshold must be finite");
    return from_micro(std::llround(percent * static_cast<double>(scale)));
  }

  /// Parses plain decimal text such as `75`, `33.33` or `66.666667`.
  static ThresholdPercent parse(std::string_view text) {
    const auto bad = [&] {
      return ConfigError("invalid threshold '" + std::string(text) +
                         "' (expected a decimal percent in [0, 100])");
    };
    if (text.empty())
      throw bad();
    std::int64_t whole = 0;
    std::int64_t frac = 0;
    std::int64_t frac_scale = scale;
    std::size_t i = 0;
    std::size_t int_digits = 0;
    for (; i < text.size() && text[i] != '.'; ++i) {
      if (text[i] < '0' || text[i] > '9' || ++int_digits > 3)
        throw bad();
      whole = whole * 10 + (text[i] - '0');
    }
    if (i < text.size()) {
      ++i;
      if (i == text.size())
        throw bad();
      for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9' || frac_scale == 1)
          throw bad();
        frac_scale /= 10;
        frac += (text[i] - '0') * frac_scale;
      }
    }
    if (int_digits == 0)
      throw bad();
    const auto micro = whole * scale + frac;
    if (micro > 100 * scale)
      throw bad();
    return from_micro(micro);
  }

  constexpr std::int64_t micro() const noexcept { return micro_; }
  double value() const noexcept {
    return static_cast<double>(micro_) / static_cast<double>(scale);
  }

  /// Shortest exact decimal form: `75`, `33.33`.
  std::string to_string() const {
    auto out = std::to_string(micro_ / scale);
    auto frac = micro_ % scale;
    if (frac != 0) {
      auto digits = std::to_string(frac);
      digits.insert(0, 6 - digits.size(), '0');
      while (digits.back() == '0')
        digits.pop_back();
      out += "." + digits;
    }
    return out;
  }

  friend constexpr bool operator==(ThresholdPercent,
                                   ThresholdPercent) = default;
  friend constexpr auto operator<=>(ThresholdPercent,
                                    ThresholdPercent) = default;

private:
  std::int64_t micro_ = 75 * scale;
};

/// 100 * votes / reachability, kept as the exact ratio.
class PercentAccuracy {
public:
  PercentAccuracy(std::uint32_t votes, std::uint32_t reachability)
      : votes_(votes), reachability_(reachability) {
    if (reachability == 0)
      throw ProtocolViolation("percent accuracy with reachability 0");
    if (votes > reachability)
      throw ProtocolViolation("percent accuracy with votes above "
                              "reachability");
  }

  std::uint32_t votes() const noexcept { return votes_; }
  std::uint32_t reachability() const noexcept { return reachability_; }

  double value() const noexcept {
    return 100.0 * static_cast<double>(votes_) /
           static_cast<double>(reachability_);
  }

  /// 100 * votes >= threshold * reachability, in integers.
  bool meets(ThresholdPercent threshold) const noexcept {
    const auto lhs = static_cast<std::uint64_t>(100 * ThresholdPercent::scale) *
                     votes_;
    const auto rhs =
        static_cast<std::uint64_t>(threshold.micro()) * reachability_;
    return lhs >= rhs;
  }

  friend bool operator==(const PercentAccuracy &,
                         const PercentAccuracy &) = default;

private:
  std::uint32_t votes_;
  std::uint32_t reachability_;
};

/// Twelve significant digits with a trailing `.0` on whole numbers, the
/// way the reference nodes print percentages (`100.0`, `33.3333333333`).
inline std::string format_percent_precise(const PercentAccuracy &a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", a.value());
  std::string out = buf;
  if (out.find_first_of(".e") == std::string::npos)
    out += ".0";
  return out;
}

inline std::string format_percent_table(const PercentAccuracy &a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", a.value());
  return buf;
}

} // namespace fdda

#endif // FDDA_ACCURACY_HPP
