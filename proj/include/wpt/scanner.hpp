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

#include "wpt/channel.hpp"
#include "wpt/codebook.hpp"
#include "wpt/excitation.hpp"
#include "wpt/geometry.hpp"
#include "wpt/rectenna.hpp"
#include "wpt/types.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wpt
{

// Power feedback channel: reports the received power at the rectenna
// anchor for a commanded excitation. In hardware this is the telemetry
// link; in simulation it is backed by a channel model.
template <typename Scalar>
using PowerProbe = std::function<Scalar(const Excitation<Scalar>&)>;

// Hardware conditioning applied to every excitation a scan commands.
template <typename Scalar>
struct ScanOptions
{
    std::optional<Scalar> quantize_lsb{}; // phase shifter step, radians
    std::optional<MaskArray> mask{};
};

template <typename Scalar>
Excitation<Scalar> conditioned(Excitation<Scalar> x, const ScanOptions<Scalar>& options)
{
    if (options.quantize_lsb)
        x = quantize_phases(x, *options.quantize_lsb);
    if (options.mask)
        x = apply_element_mask(x, *options.mask);
    return x;
}

template <typename Scalar>
struct FarScanResult
{
    Eigen::Index k_star = 0; // best valid beam, 1-based, lowest index on ties
    std::vector<std::optional<Scalar>> powers{}; // one slot per beam; invalid beams empty
};

template <typename Scalar>
struct NearScanResult
{
    Eigen::Index i_star = 0; // best grid slot, 1-based, lowest index on ties
    VecX<Scalar> powers{};
    Scalar r_opt = Scalar(0);
};

// Outcome of the two-phase scan.
template <typename Scalar>
struct ScanOutcome
{
    FarScanResult<Scalar> far{};
    DirectionUV<Scalar> xi_opt{};
    NearScanResult<Scalar> near{};
    Excitation<Scalar> final_excitation{};
    bool near_selected = false; // final beam focused at r_opt rather than plane-wave
    long probe_calls = 0;
};

// Probes every valid far beam in ascending index order and returns the
// measurements plus the argmax.
template <typename Scalar>
FarScanResult<Scalar> run_far_scan(const PowerProbe<Scalar>& probe,
                                   const PropagationContext<Scalar>& ctx,
                                   const ArrayGeometry<Scalar>& tx, const Codebook<Scalar>& book,
                                   const ScanOptions<Scalar>& options = {})
{
    if (book.beam_count() < 1)
        throw std::invalid_argument("run_far_scan: codebook has no beams");

    FarScanResult<Scalar> result;
    result.powers.resize(static_cast<std::size_t>(book.beam_count()));
    bool found = false;
    Scalar best = Scalar(0);
    for (const auto& beam : book.far_beams)
    {
        if (!beam.valid)
            continue;
        const Scalar p =
            probe(conditioned(far_field_excitation(ctx, tx, beam.direction), options));
        result.powers[static_cast<std::size_t>(beam.index - 1)] = p;
        if (!found || p > best)
        {
            found = true;
            best = p;
            result.k_star = beam.index;
        }
    }
    if (!found)
        throw std::invalid_argument("run_far_scan: codebook has no valid beams");
    return result;
}

// Probes a focused beam at every grid distance along xi_opt and returns
// the measurements plus the argmax.
template <typename Scalar>
NearScanResult<Scalar> run_near_scan(const PowerProbe<Scalar>& probe,
                                     const PropagationContext<Scalar>& ctx,
                                     const ArrayGeometry<Scalar>& tx,
                                     const DirectionUV<Scalar>& xi_opt,
                                     const VecX<Scalar>& distance_grid,
                                     const ScanOptions<Scalar>& options = {})
{
    if (distance_grid.size() < 1)
        throw std::invalid_argument("run_near_scan: distance grid is empty");

    NearScanResult<Scalar> result;
    result.powers.resize(distance_grid.size());
    for (Eigen::Index i = 0; i < distance_grid.size(); ++i)
    {
        result.powers(i) =
            probe(conditioned(near_field_excitation(ctx, tx, xi_opt, distance_grid(i)), options));
        if (i == 0 || result.powers(i) > result.powers(result.i_star - 1))
            result.i_star = i + 1;
    }
    result.r_opt = distance_grid(result.i_star - 1);
    return result;
}

// Two-phase beam scan: find the best far-field beam direction, then
// refine the focus distance along it. The final excitation is the best
// of everything measured, so a focused beam is only adopted when it did
// not lose to the plane-wave beam.
template <typename Scalar>
ScanOutcome<Scalar> beam_scan(const PowerProbe<Scalar>& probe,
                              const PropagationContext<Scalar>& ctx,
                              const ArrayGeometry<Scalar>& tx, const Codebook<Scalar>& book,
                              const ScanOptions<Scalar>& options = {})
{
    ScanOutcome<Scalar> outcome;
    PowerProbe<Scalar> counted = [&](const Excitation<Scalar>& x) {
        ++outcome.probe_calls;
        return probe(x);
    };

    outcome.far = run_far_scan(counted, ctx, tx, book, options);
    outcome.xi_opt = book.beam(outcome.far.k_star).direction;
    outcome.near = run_near_scan(counted, ctx, tx, outcome.xi_opt, book.distance_grid, options);

    const Scalar far_best = *outcome.far.powers[static_cast<std::size_t>(outcome.far.k_star - 1)];
    outcome.near_selected = outcome.near.powers(outcome.near.i_star - 1) >= far_best;
    outcome.final_excitation =
        outcome.near_selected
            ? conditioned(near_field_excitation(ctx, tx, outcome.xi_opt, outcome.near.r_opt),
                          options)
            : conditioned(far_field_excitation(ctx, tx, outcome.xi_opt), options);
    return outcome;
}

// Probe backed by a channel model: the receiver reports the RF power
// seen at its anchor element.
template <typename Scalar>
PowerProbe<Scalar> simulated_probe(const PropagationContext<Scalar>& ctx,
                                   const ArrayGeometry<Scalar>& tx,
                                   const ReceiverPose<Scalar>& pose,
                                   const ArrayGeometry<Scalar>& rx_local, ChannelModel model)
{
    const ChannelMatrix<Scalar> channel = make_channel(ctx, tx, pose, rx_local, model);
    const Eigen::Index anchor = rx_local.anchor_index;
    return [channel, anchor](const Excitation<Scalar>& x) {
        const CVecX<Scalar> y = received_waves(channel, x);
        return sensor_power(y(anchor - 1));
    };
}

} // namespace wpt
