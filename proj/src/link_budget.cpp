// SPDX-License-Identifier: Apache-2.0

#include "cbap/link_budget.hpp"

#include <cmath>

namespace cbap {

namespace {
// slack for beamwidths computed as 2*pi by round-off
constexpr double kOmniSlack = 1e-12;
} // namespace

void PhyEnv::validate() const
{
    if (!(frequency_hz > 0.0))
        throw InvalidParameter("PhyEnv: frequency must be > 0");
    if (!(path_loss_exp > 0.0))
        throw InvalidParameter("PhyEnv: path loss exponent must be > 0");
    if (sensitivities_dbm.empty())
        throw InvalidParameter("PhyEnv: no receiver sensitivities");
}

double PhyEnv::reference_loss_db() const
{
    return 10.0 * path_loss_exp * std::log10(4.0 * kPi / wavelength());
}

double PhyEnv::sensitivity_dbm(const std::string& mcs) const
{
    const auto it = sensitivities_dbm.find(mcs);
    if (it == sensitivities_dbm.end())
        throw InvalidParameter("unknown MCS '" + mcs + "'");
    return it->second;
}

double directivity_gain(double beamwidth)
{
    if (!(beamwidth > 0.0 && beamwidth <= kTwoPi + kOmniSlack))
        throw InvalidParameter("directivity_gain: beamwidth must lie in (0, 2pi]");
    return kTwoPi / beamwidth;
}

double directivity_gain_db(double beamwidth)
{
    return 10.0 * std::log10(directivity_gain(beamwidth));
}

double received_power(double distance, double tx_beamwidth, double rx_beamwidth, const PhyEnv& env)
{
    env.validate();
    if (!(distance >= 1.0))
        throw DomainError("received_power: distance below the 1 m reference");
    return env.tx_power_dbm + directivity_gain_db(tx_beamwidth) + directivity_gain_db(rx_beamwidth) -
           env.reference_loss_db() - 10.0 * env.path_loss_exp * std::log10(distance) - env.fading_db -
           env.link_margin_db;
}

BeamwidthLimit max_tx_beamwidth(double distance, double rx_beamwidth, const std::string& mcs,
                                const PhyEnv& env, double resolution_floor)
{
    const double rs = env.sensitivity_dbm(mcs);
    // received power with an omni transmitter; the tx gain must cover the gap
    const double omni = received_power(distance, kTwoPi, rx_beamwidth, env);
    const double needed_gain_db = rs - omni;
    const double width = kTwoPi / std::pow(10.0, needed_gain_db / 10.0);

    BeamwidthLimit out;
    if (width >= kTwoPi) {
        out.beamwidth = kTwoPi;
        out.status = BeamwidthLimit::Status::omni_clamped;
    } else if (width < resolution_floor) {
        out.beamwidth = width;
        out.status = BeamwidthLimit::Status::infeasible;
    } else {
        out.beamwidth = width;
    }
    return out;
}

std::vector<CurvePoint> required_tx_beamwidth_curve(std::span<const double> rx_beamwidths,
                                                    const std::string& mcs, double distance,
                                                    const PhyEnv& env, double resolution_floor)
{
    std::vector<CurvePoint> out;
    out.reserve(rx_beamwidths.size());
    for (double rx : rx_beamwidths)
        out.push_back({rx, max_tx_beamwidth(distance, rx, mcs, env, resolution_floor)});
    return out;
}

} // namespace cbap
