// SPDX-License-Identifier: Apache-2.0

#include "cbap/model.hpp"

#include <cmath>
#include <unordered_set>

namespace cbap {

double normalize_angle(double rad)
{
    double a = std::fmod(rad, kTwoPi);
    if (a < 0.0)
        a += kTwoPi;
    // fmod of a tiny negative value can round back up to exactly 2*pi
    if (a >= kTwoPi)
        a = 0.0;
    return a;
}

void MacParams::validate() const
{
    if (w0 < 1)
        throw InvalidParameter("MacParams: w0 must be >= 1");
    if (m < 0 || m > h)
        throw InvalidParameter("MacParams: require 0 <= m <= h");
    if (m > 20)
        throw InvalidParameter("MacParams: m too large for a 32-bit window");
}

int MacParams::window(int stage) const
{
    if (stage < 0 || stage > h)
        throw InvalidParameter("MacParams::window: stage out of [0, h]");
    return stage >= m ? w_max() : (w0 << stage);
}

void TimingParams::validate() const
{
    for (double v : {sifs, difs, cca_detect, rifs}) {
        if (!(v >= 0.0))
            throw InvalidParameter("TimingParams: durations must be >= 0");
    }
    if (timeout && !(*timeout >= 0.0))
        throw InvalidParameter("TimingParams: timeout must be >= 0");
    if (!(control_rate > 0.0) || !(data_rate > 0.0))
        throw InvalidParameter("TimingParams: rates must be > 0");
}

void Scenario::validate() const
{
    if (!(radius > 0.0))
        throw InvalidParameter("Scenario: radius must be > 0");
    std::unordered_set<int> ids;
    for (const auto& s : stations) {
        if (!ids.insert(s.id).second)
            throw InvalidParameter("Scenario: duplicate station id " + std::to_string(s.id));
        if (!(s.distance > 0.0) || s.distance > radius)
            throw InvalidParameter("Scenario: station " + std::to_string(s.id) +
                                   " distance outside (0, radius]");
        if (!(s.angle >= 0.0 && s.angle < kTwoPi))
            throw InvalidParameter("Scenario: station " + std::to_string(s.id) +
                                   " angle outside [0, 2pi)");
    }
}

double frame_duration(std::size_t octets, double rate)
{
    if (!(rate > 0.0))
        throw InvalidParameter("frame_duration: rate must be > 0");
    return 8.0 * static_cast<double>(octets) / rate;
}

SlotDurations slot_durations(const TimingParams& t)
{
    t.validate();
    const double rts = frame_duration(t.rts_bytes, t.control_rate);
    const double cts = frame_duration(t.cts_bytes, t.control_rate);
    const double ack = frame_duration(t.ack_bytes, t.control_rate);
    const double data = frame_duration(t.data_bytes, t.data_rate);
    const double timeout = t.timeout.value_or(cts);

    SlotDurations d;
    d.t_idle = t.sifs + t.cca_detect;
    d.t_suc = rts + 2.0 * t.sifs + cts + t.difs + data + ack;
    d.t_col = rts + t.sifs + t.difs + timeout;
    d.e_payload = data;
    return d;
}

} // namespace cbap
