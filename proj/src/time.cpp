#include "mediagraph/time.hpp"

#include <cctype>

#include <fmt/format.h>

#include "mediagraph/error.hpp"

namespace mediagraph {
namespace {

bool read_digits(std::string_view text, std::size_t pos, std::size_t count,
                 int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    value = value * 10 + (text[i] - '0');
  }
  out = value;
  return true;
}

std::optional<Date> date_prefix(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (!read_digits(text, 0, 4, y) || !read_digits(text, 5, 2, m) ||
      !read_digits(text, 8, 2, d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{unsigned(m)},
                                        std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10) return std::nullopt;
  return date_prefix(text);
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  const auto day = date_prefix(text);
  if (!day || text.size() < 20) return std::nullopt;
  if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') return std::nullopt;
  int hh = 0, mm = 0, ss = 0;
  if (!read_digits(text, 11, 2, hh) || text[13] != ':' ||
      !read_digits(text, 14, 2, mm) || text[16] != ':' ||
      !read_digits(text, 17, 2, ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t first = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos == first) return std::nullopt;
  }
  if (pos >= text.size()) return std::nullopt;
  int offset_minutes = 0;
  const char zone = text[pos];
  if (zone == 'Z' || zone == 'z') {
    ++pos;
  } else if (zone == '+' || zone == '-') {
    int oh = 0, om = 0;
    if (!read_digits(text, pos + 1, 2, oh) || pos + 3 >= text.size() ||
        text[pos + 3] != ':' || !read_digits(text, pos + 4, 2, om)) {
      return std::nullopt;
    }
    offset_minutes = (oh * 60 + om) * (zone == '+' ? 1 : -1);
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;
  using namespace std::chrono;
  return Timestamp{*day} + hours{hh} + minutes{mm} + seconds{ss} -
         minutes{offset_minutes};
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  return fmt::format("{:04d}-{:02d}-{:02d}", int(ymd.year()),
                     unsigned(ymd.month()), unsigned(ymd.day()));
}

std::string format_timestamp(Timestamp ts) {
  const auto day = std::chrono::floor<std::chrono::days>(ts);
  const std::chrono::hh_mm_ss tod{ts - day};
  return fmt::format("{}T{:02d}:{:02d}:{:02d}Z", format_date(day),
                     tod.hours().count(), tod.minutes().count(),
                     tod.seconds().count());
}

CollectionWindow::CollectionWindow(Date start, Date end)
    : start_(start), end_(end) {
  if (end_ < start_) {
    throw Error(ErrorCode::Config,
                fmt::format("collection window ends ({}) before it starts ({})",
                            format_date(end_), format_date(start_)));
  }
}

CollectionWindow CollectionWindow::parse(std::string_view start,
                                         std::string_view end) {
  const auto s = parse_date(start);
  const auto e = parse_date(end);
  if (!s || !e) {
    throw Error(ErrorCode::Config,
                fmt::format("invalid collection window '{}'..'{}'", start, end));
  }
  return CollectionWindow(*s, *e);
}

}  // namespace mediagraph
