#include <doctest.h>

#include "mediagraph/time.hpp"
#include "mediagraph/types.hpp"

using namespace mediagraph;

TEST_SUITE("types") {
  TEST_CASE("orientation spellings") {
    CHECK(parse_orientation("far-right") == Orientation::FarRight);
    CHECK(parse_orientation("FarRight") == Orientation::FarRight);
    CHECK(parse_orientation("far_left") == Orientation::FarLeft);
    CHECK(parse_orientation("Center") == Orientation::Center);
    CHECK_FALSE(parse_orientation("centre-ish").has_value());
    for (auto o : kAllOrientations) CHECK(parse_orientation(to_string(o)) == o);
  }

  TEST_CASE("kinds and labels round-trip") {
    CHECK(parse_kind("nm") == ChannelKind::NM);
    CHECK(parse_kind("PP") == ChannelKind::PP);
    for (auto l : {ShortsLabel::Unlabeled, ShortsLabel::Short, ShortsLabel::Regular})
      CHECK(parse_shorts_label(to_string(l)) == l);
  }

  TEST_CASE("report groups are in ordinal order") {
    for (std::size_t i = 0; i < kReportGroups.size(); ++i)
      CHECK(kReportGroups[i].ordinal() == i);
    CHECK(GroupKey{ChannelKind::NM, Orientation::Right} <
          GroupKey{ChannelKind::PP, Orientation::FarLeft});
  }

  TEST_CASE("timestamps") {
    auto ts = parse_timestamp("2024-03-01T12:30:00Z");
    REQUIRE(ts);
    CHECK(format_timestamp(*ts) == "2024-03-01T12:30:00Z");
    auto offset = parse_timestamp("2024-03-01T14:30:00.250+02:00");
    REQUIRE(offset);
    CHECK(*offset == *ts);
    CHECK_FALSE(parse_timestamp("2024-03-01").has_value());
    CHECK_FALSE(parse_timestamp("2024-13-01T00:00:00Z").has_value());
  }

  TEST_CASE("collection window is inclusive") {
    auto w = CollectionWindow::parse("2024-03-01", "2024-07-14");
    CHECK(w.day_count() == 136);
    CHECK(w.contains(*parse_timestamp("2024-03-01T00:00:00Z")));
    CHECK(w.contains(*parse_timestamp("2024-07-14T23:59:59Z")));
    CHECK_FALSE(w.contains(*parse_timestamp("2024-02-15T10:00:00Z")));
    CHECK_FALSE(w.contains(*parse_timestamp("2024-07-15T00:00:00Z")));
  }
}
