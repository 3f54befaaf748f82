// SPDX-License-Identifier: Apache-2.0
//
// Shared domain types for the CBAP contention model: MAC backoff constants,
// frame timing, slot durations and the AP-centred station layout.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbap {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// A parameter is outside its documented range.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The model is undefined for the requested input (e.g. d < 1 m, p >= 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A fixed-point solve did not reach its tolerance.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Malformed input file; the message carries line or field context.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Reduce an angle into [0, 2*pi).
double normalize_angle(double rad);

/// Binary exponential backoff constants.
struct MacParams {
    int w0 = 8; ///< minimum contention window (slots)
    int m = 3;  ///< maximum backoff stage
    int h = 5;  ///< retry limit

    void validate() const;
    int w_max() const { return w0 << m; }
    /// W_i = min(2^i W0, W_max), valid for 0 <= stage <= h.
    int window(int stage) const;
};

/// Interframe spacings, frame sizes and PHY rates. Defaults are the DMG
/// control PHY / MCS4 values used throughout the analysis.
struct TimingParams {
    double sifs = 2.5e-6;
    double difs = 13.5e-6;
    double cca_detect = 4e-6;
    double rifs = 9e-6; // carried, not used by any duration
    std::size_t rts_bytes = 20;
    std::size_t cts_bytes = 26;
    std::size_t ack_bytes = 14;
    std::size_t data_bytes = 1024;
    double control_rate = 27.5e6;
    double data_rate = 1.15e9;
    /// Response timeout after a collided RTS. Unset means one CTS airtime.
    std::optional<double> timeout;

    void validate() const;
};

/// Durations of the three slot outcomes, plus one payload airtime.
struct SlotDurations {
    double t_idle = 0.0;
    double t_suc = 0.0;
    double t_col = 0.0;
    double e_payload = 0.0;
};

struct Station {
    int id = 0;
    double distance = 0.0; ///< metres from the AP
    double angle = 0.0;    ///< radians in [0, 2*pi)

    bool operator==(const Station&) const = default;
};

struct Scenario {
    std::vector<Station> stations;
    double radius = 10.0;

    /// Throws InvalidParameter on duplicate ids, non-positive or
    /// out-of-radius distances, or angles outside [0, 2*pi).
    void validate() const;
    std::size_t size() const { return stations.size(); }

    bool operator==(const Scenario&) const = default;
};

/// Airtime of `octets` bytes at `rate` bit/s, without PHY preamble.
double frame_duration(std::size_t octets, double rate);

/// T_idle = SIFS + CCA; T_suc = RTS + 2 SIFS + CTS + DIFS + DATA + ACK;
/// T_col = RTS + SIFS + DIFS + T_out.
SlotDurations slot_durations(const TimingParams& t);

} // namespace cbap
