// SPDX-License-Identifier: Apache-2.0
//
// 60 GHz link budget with an ideal conical antenna: gain 2*pi/Omega over
// the beam, log-distance path loss referenced to 1 m.

#pragma once

#include "cbap/model.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace cbap {

inline constexpr double kSpeedOfLight = 2.998e8;

struct PhyEnv {
    double tx_power_dbm = 10.0;
    double frequency_hz = 60e9;
    double path_loss_exp = 2.0;
    double fading_db = 2.0;
    double link_margin_db = 20.0;
    std::map<std::string, double> sensitivities_dbm{{"MCS0", -78.0}, {"MCS4", -64.0}};

    void validate() const;
    double wavelength() const { return kSpeedOfLight / frequency_hz; }
    /// PL0 = 10 alpha log10(4 pi / lambda).
    double reference_loss_db() const;
    /// Throws InvalidParameter for an unknown MCS name.
    double sensitivity_dbm(const std::string& mcs) const;
};

/// Linear gain 2*pi/Omega for 0 < Omega <= 2*pi.
double directivity_gain(double beamwidth);
double directivity_gain_db(double beamwidth);

/// P_r(d) = P_t + G(Omega_t) + G(Omega_r) - PL0 - 10 alpha log10(d) - X_sigma - LM.
/// Throws DomainError for d < 1 m.
double received_power(double distance, double tx_beamwidth, double rx_beamwidth, const PhyEnv& env);

struct BeamwidthLimit {
    enum class Status { ok, omni_clamped, infeasible };
    double beamwidth = 0.0; ///< radians; for `infeasible` the (too narrow) exact solution
    Status status = Status::ok;
};

/// Widest transmit beam that keeps P_r >= RS(mcs). Solved in closed form
/// on the dB equation. Results wider than omni are clamped to 2*pi; results
/// narrower than `resolution_floor` are reported infeasible.
BeamwidthLimit max_tx_beamwidth(double distance, double rx_beamwidth, const std::string& mcs,
                                const PhyEnv& env, double resolution_floor = 0.0);

struct CurvePoint {
    double rx_beamwidth = 0.0;
    BeamwidthLimit tx;
};

std::vector<CurvePoint> required_tx_beamwidth_curve(std::span<const double> rx_beamwidths,
                                                    const std::string& mcs, double distance,
                                                    const PhyEnv& env, double resolution_floor = 0.0);

} // namespace cbap
