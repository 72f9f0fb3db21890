#include <doctest.h>

#include <cmath>
#include <random>

#include "mediagraph/error.hpp"
#include "mediagraph/stats.hpp"
#include "oracles.hpp"

using namespace mediagraph;

TEST_SUITE("stats") {
  TEST_CASE("group average is unweighted per channel") {
    const GroupKey nm{ChannelKind::NM, Orientation::Left};
    const GroupKey pp{ChannelKind::PP, Orientation::Right};
    std::vector<GroupedRow> rows{{nm, {2.0, 100.0}}, {nm, {4.0, 300.0}}, {pp, {7.0, std::nullopt}}};
    auto avg = group_average(rows);
    REQUIRE(avg.size() == 2);
    CHECK(avg[0].key == nm);
    CHECK(*avg[0].means[0] == 3.0);
    CHECK(*avg[0].means[1] == 200.0);
    CHECK(avg[0].rows == 2);
    CHECK(avg[1].key == pp);
    CHECK(*avg[1].means[0] == 7.0);
    CHECK_FALSE(avg[1].means[1].has_value());
    CHECK(avg[1].counts[1] == 0);
  }

  TEST_CASE("macro average differs from pooling") {
    // Channel one: 1 video with 100 views. Channel two: 9 videos of 300.
    const GroupKey g{ChannelKind::NM, Orientation::Center};
    std::vector<GroupedRow> rows{{g, {100.0}}, {g, {300.0}}};
    CHECK(*group_average(rows)[0].means[0] == 200.0);
    const double pooled = (100.0 + 9 * 300.0) / 10.0;
    CHECK(pooled != 200.0);
  }

  TEST_CASE("nan values are skipped") {
    const GroupKey g{ChannelKind::NM, Orientation::Center};
    std::vector<GroupedRow> rows{{g, {std::nan("")}}, {g, {5.0}}};
    CHECK(*group_average(rows)[0].means[0] == 5.0);
  }

  TEST_CASE("ccdf survival convention") {
    std::vector<double> v{3, 1, 2};
    auto c = ccdf(v);
    CHECK(c.values == std::vector<double>{1, 2, 3});
    CHECK(c.survival[0] == 1.0);
    CHECK(c.survival[1] == doctest::Approx(2.0 / 3.0));
    CHECK(c.survival[2] == doctest::Approx(1.0 / 3.0));
    std::vector<double> one{5};
    auto s = ccdf(one);
    CHECK(s.values == std::vector<double>{5});
    CHECK(s.survival == std::vector<double>{1.0});
    std::vector<double> constant{4, 4, 4};
    CHECK(ccdf(constant).values.size() == 1);
    CHECK_THROWS_AS(ccdf(std::vector<double>{}), Error);
  }

  TEST_CASE("ccdf is non-increasing on random data") {
    std::mt19937_64 rng(5);
    std::lognormal_distribution<double> d(3.0, 1.5);
    std::vector<double> v(500);
    for (auto& x : v) x = std::floor(d(rng));
    auto c = ccdf(v);
    for (std::size_t i = 1; i < c.survival.size(); ++i) {
      CHECK(c.survival[i] <= c.survival[i - 1]);
      CHECK(c.values[i] > c.values[i - 1]);
    }
  }

  TEST_CASE("pearson exact cases") {
    std::vector<double> x(10), y(10);
    for (int i = 0; i < 10; ++i) {
      x[i] = i;
      y[i] = 2 * i + 1;
    }
    auto r = pearson(x, y);
    CHECK(r.r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.n == 10);
    std::vector<double> a{1, 2, 1, 2}, b{1, 1, 2, 2};
    CHECK(std::abs(pearson(a, b).r) < 1e-12);
    CHECK(pearson(a, b).p == doctest::Approx(1.0));
  }

  TEST_CASE("pearson p-values agree with a reference package") {
    // Reference values from scipy.stats.pearsonr.
    std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8}, y{2, 1, 4, 3, 7, 8, 6, 9};
    auto r = pearson(x, y);
    CHECK(r.r == doctest::Approx(0.8964214570007951).epsilon(1e-12));
    CHECK(r.p == doctest::Approx(0.002566766096253243).epsilon(1e-9));
    std::vector<double> u{3.1, 4.7, 1.2, 8.8, 5.5}, w{2.0, 3.9, 2.2, 6.1, 3.0};
    auto s = pearson(u, w);
    CHECK(s.r == doctest::Approx(0.9092738234036698).epsilon(1e-12));
    CHECK(s.p == doctest::Approx(0.03235433574696088).epsilon(1e-9));
  }

  TEST_CASE("pearson matches the textbook formula") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> d(0.0, 1.0);
    for (int round = 0; round < 20; ++round) {
      std::vector<double> x(100), y(100);
      for (int i = 0; i < 100; ++i) {
        x[i] = d(rng);
        y[i] = 0.5 * x[i] + d(rng);
      }
      CHECK(std::abs(pearson(x, y).r - oracle::pearson_r(x, y)) < 1e-9);
    }
  }

  TEST_CASE("pearson undefined cases") {
    std::vector<double> x{1, 2, 3}, flat{2, 2, 2}, shortv{1, 2};
    CHECK_THROWS_AS(pearson(x, flat), Error);
    CHECK_THROWS_AS(pearson(shortv, shortv), Error);
    CHECK_THROWS_AS(pearson(x, shortv), Error);
  }
}
