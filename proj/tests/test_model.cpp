#include "cbap/model.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cbap;
using doctest::Approx;

TEST_CASE("frame airtime")
{
    CHECK(frame_duration(20, 27.5e6) * 1e6 == Approx(5.818).epsilon(1e-4));
    CHECK(frame_duration(0, 27.5e6) == 0.0);
    CHECK(frame_duration(1024, 1.15e9) * 1e6 == Approx(7.123).epsilon(1e-4));
    CHECK_THROWS_AS(frame_duration(10, 0.0), InvalidParameter);
}

TEST_CASE("slot durations from default timing")
{
    const SlotDurations d = slot_durations(TimingParams{});
    CHECK(d.t_idle * 1e6 == Approx(oracle::t_idle_us).epsilon(1e-12));
    CHECK(d.t_suc * 1e6 == Approx(oracle::t_suc_us).epsilon(1e-12));
    CHECK(d.t_col * 1e6 == Approx(oracle::t_col_us).epsilon(1e-12));
    CHECK(d.e_payload * 1e6 == Approx(oracle::data_us).epsilon(1e-12));

    CHECK(d.t_idle * 1e6 == Approx(6.5));
    CHECK(d.t_suc * 1e6 == Approx(43.08).epsilon(1e-3));
    CHECK(d.t_col * 1e6 == Approx(29.38).epsilon(1e-3));
}

TEST_CASE("explicit collision timeout replaces the CTS airtime")
{
    TimingParams t;
    t.timeout = 10e-6;
    const SlotDurations d = slot_durations(t);
    CHECK(d.t_col * 1e6 == Approx(oracle::rts_us + 2.5 + 13.5 + 10.0));
}

TEST_CASE("MAC parameters")
{
    MacParams mac;
    CHECK(mac.w_max() == 64);
    CHECK(mac.window(0) == 8);
    CHECK(mac.window(3) == 64);
    CHECK(mac.window(5) == 64);
    CHECK_THROWS_AS(mac.window(6), InvalidParameter);

    CHECK_THROWS_AS((MacParams{0, 3, 5}.validate()), InvalidParameter);
    CHECK_THROWS_AS((MacParams{8, 4, 3}.validate()), InvalidParameter);
    CHECK_NOTHROW((MacParams{8, 3, 3}.validate()));
}

TEST_CASE("angle helpers")
{
    CHECK(deg_to_rad(180.0) == Approx(kPi));
    CHECK(rad_to_deg(kPi / 2) == Approx(90.0));
    CHECK(normalize_angle(-0.5) == Approx(kTwoPi - 0.5));
    CHECK(normalize_angle(kTwoPi) == 0.0);
    CHECK(normalize_angle(7.0) == Approx(7.0 - kTwoPi));
    for (double a : {-1e-18, -20.0, 1e3, kTwoPi - 1e-17}) {
        const double r = normalize_angle(a);
        CHECK(r >= 0.0);
        CHECK(r < kTwoPi);
    }
}

TEST_CASE("scenario invariants")
{
    Scenario s;
    s.stations = {{0, 2.0, 0.1}, {1, 5.0, 3.0}};
    CHECK_NOTHROW(s.validate());

    auto bad = s;
    bad.stations[1].id = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = s;
    bad.stations[0].distance = 11.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = s;
    bad.stations[0].angle = kTwoPi;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = s;
    bad.stations[0].distance = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
}
