#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace mediagraph {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

/// RFC 3339 date-time ("2024-03-01T12:30:00Z", "...+02:00", fractional
/// seconds truncated). Returns nullopt on anything else.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// "YYYY-MM-DD".
std::optional<Date> parse_date(std::string_view text);

/// Always UTC with a trailing "Z".
std::string format_timestamp(Timestamp ts);
std::string format_date(Date date);

/// Inclusive calendar-date range used to filter videos by publication date.
class CollectionWindow {
 public:
  CollectionWindow(Date start, Date end);

  static CollectionWindow parse(std::string_view start, std::string_view end);

  Date start() const noexcept { return start_; }
  Date end() const noexcept { return end_; }

  /// end - start + 1.
  long day_count() const noexcept {
    return (end_ - start_).count() + 1;
  }

  bool contains(Timestamp ts) const noexcept {
    const auto day = std::chrono::floor<std::chrono::days>(ts);
    return day >= start_ && day <= end_;
  }

  friend bool operator==(const CollectionWindow&,
                         const CollectionWindow&) = default;

 private:
  Date start_;
  Date end_;
};

}  // namespace mediagraph
