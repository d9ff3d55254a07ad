#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sumset/interval_set.hpp"

inline sumset::Rational Q(const std::string& text) { return sumset::parse_rational(text); }

inline sumset::IntervalSet S(const std::vector<std::pair<std::string, std::string>>& parts) {
  std::vector<sumset::Interval> raw;
  for (const auto& [lo, hi] : parts) raw.push_back({Q(lo), Q(hi)});
  return sumset::IntervalSet::normalize(raw);
}
