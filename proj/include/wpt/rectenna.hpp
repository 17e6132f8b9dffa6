// SPDX-License-Identifier: Apache-2.0
//
// wptsim - beam scanning and link simulation for phased-array wireless power transfer
// Copyright (C) 2026 wptsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "wpt/geometry.hpp"
#include "wpt/types.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wpt
{

// RF power available from one receive element, |y|^2 / 2.
template <typename Scalar>
Scalar sensor_power(const std::complex<Scalar>& wave)
{
    return std::norm(wave) / Scalar(2);
}

// RF-to-DC conversion efficiency as a function of the RF input power.
// Piecewise linear between breakpoints, clamped to the end values
// outside their range.
template <typename Scalar>
class EfficiencyModel
{
  public:
    static EfficiencyModel constant(Scalar efficiency)
    {
        return piecewise({{Scalar(1), efficiency}});
    }

    static EfficiencyModel piecewise(std::vector<std::pair<Scalar, Scalar>> breakpoints)
    {
        if (breakpoints.empty())
            throw std::invalid_argument("EfficiencyModel: at least one breakpoint required");
        for (std::size_t i = 0; i < breakpoints.size(); ++i)
        {
            if (!(breakpoints[i].first >= Scalar(0)))
                throw std::invalid_argument("EfficiencyModel: breakpoint powers must be non-negative");
            if (i > 0 && !(breakpoints[i].first > breakpoints[i - 1].first))
                throw std::invalid_argument(
                    "EfficiencyModel: breakpoint powers must be strictly increasing");
            if (!(breakpoints[i].second >= Scalar(0)) || !(breakpoints[i].second <= Scalar(1)))
                throw std::invalid_argument("EfficiencyModel: efficiencies must lie in [0, 1]");
        }
        return EfficiencyModel(std::move(breakpoints));
    }

    Scalar operator()(Scalar rf_input_w) const
    {
        if (!(rf_input_w >= Scalar(0)))
            throw std::invalid_argument("EfficiencyModel: RF input power must be non-negative");
        if (rf_input_w <= points_.front().first)
            return points_.front().second;
        if (rf_input_w >= points_.back().first)
            return points_.back().second;
        auto hi = std::upper_bound(points_.begin(), points_.end(), rf_input_w,
                                   [](Scalar p, const auto& bp) { return p < bp.first; });
        auto lo = hi - 1;
        const Scalar t = (rf_input_w - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    }

    const std::vector<std::pair<Scalar, Scalar>>& breakpoints() const
    {
        return points_;
    }

  private:
    explicit EfficiencyModel(std::vector<std::pair<Scalar, Scalar>> points)
        : points_(std::move(points))
    {
    }

    std::vector<std::pair<Scalar, Scalar>> points_;
};

// Per-element and combined harvest of one receive snapshot.
template <typename Scalar>
struct ReceiverReport
{
    VecX<Scalar> per_element_rf{}; // |y_m|^2 / 2
    VecX<Scalar> per_element_dc{}; // eps(rf_m) * rf_m
    Scalar combined_dc = Scalar(0);
    Scalar sensor_rf = Scalar(0); // RF power at the anchor element
};

// DC-domain combining: each element rectifies independently and the DC
// outputs add, p_dc = sum_m eps(rf_m) * rf_m.
template <typename Scalar>
ReceiverReport<Scalar> combined_dc_power(const CVecX<Scalar>& waves,
                                         const EfficiencyModel<Scalar>& efficiency,
                                         Eigen::Index anchor_index)
{
    if (waves.size() < 1)
        throw std::invalid_argument("combined_dc_power: at least one receive wave required");
    if (anchor_index < 1 || anchor_index > waves.size())
        throw std::invalid_argument("combined_dc_power: anchor index out of range");

    ReceiverReport<Scalar> report;
    report.per_element_rf.resize(waves.size());
    report.per_element_dc.resize(waves.size());
    for (Eigen::Index m = 0; m < waves.size(); ++m)
    {
        const Scalar rf = sensor_power(waves(m));
        report.per_element_rf(m) = rf;
        report.per_element_dc(m) = efficiency(rf) * rf;
        report.combined_dc += report.per_element_dc(m);
    }
    report.sensor_rf = report.per_element_rf(anchor_index - 1);
    return report;
}

// End-to-end efficiency: harvested DC power over the RF power spent by
// the active transmit elements.
template <typename Scalar>
Scalar transfer_efficiency(Scalar dc_power, const ArraySpec<Scalar>& tx, const MaskArray& mask)
{
    tx.validate();
    if (!(dc_power >= Scalar(0)))
        throw std::invalid_argument("transfer_efficiency: DC power must be non-negative");
    if (mask.size() != tx.size())
        throw std::invalid_argument("transfer_efficiency: mask length must match element count");

    const Eigen::Index active = mask.count();
    if (active < 1)
        throw std::invalid_argument("transfer_efficiency: at least one active element required");
    const Scalar spent = tx.per_element_power * Scalar(active);
    if (!(spent > Scalar(0)))
        throw std::invalid_argument("transfer_efficiency: transmit power must be positive");
    return dc_power / spent;
}

template <typename Scalar>
Scalar transfer_efficiency(Scalar dc_power, const ArraySpec<Scalar>& tx)
{
    return transfer_efficiency(dc_power, tx, MaskArray::Constant(tx.size(), true));
}

} // namespace wpt
