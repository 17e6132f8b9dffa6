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
#include "wpt/geometry.hpp"
#include "wpt/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <type_traits>

namespace wpt
{

// Per-element transmit waves x_n = |x_n| exp(-j w_n). phases keeps the
// unwrapped steering phases w_n alongside the complex waves; hardware
// conditioning (quantization, masking) acts on this representation.
template <typename Scalar>
struct Excitation
{
    CVecX<Scalar> waves{};
    VecX<Scalar> phases{};

    Eigen::Index size() const
    {
        return waves.size();
    }
};

// Builds x_n = magnitude * exp(-j phases_n).
template <typename Scalar>
Excitation<Scalar> excitation_from_phases(Scalar magnitude, VecX<Scalar> phases)
{
    if (!(magnitude >= Scalar(0)))
        throw std::invalid_argument("excitation_from_phases: magnitude must be non-negative");
    const std::complex<Scalar> j(Scalar(0), Scalar(1));
    Excitation<Scalar> x{CVecX<Scalar>(phases.size()), std::move(phases)};
    for (Eigen::Index n = 0; n < x.phases.size(); ++n)
        x.waves(n) = magnitude * std::exp(-j * x.phases(n));
    return x;
}

// Expression-friendly overload: accepts any dense phase vector.
template <typename Scalar, typename Derived>
Excitation<Scalar> excitation_from_phases(Scalar magnitude,
                                          const Eigen::MatrixBase<Derived>& phases)
{
    static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                  "phase vector scalar type must match the magnitude type");
    return excitation_from_phases(magnitude, VecX<Scalar>(phases));
}

namespace detail
{

template <typename Scalar>
Scalar element_magnitude(const ArraySpec<Scalar>& spec)
{
    return std::sqrt(Scalar(2) * spec.per_element_power);
}

} // namespace detail

// Plane-wave steering toward the direction xi: w_n = (2 pi / lambda) *
// (u a_n_x + v a_n_y). Every element radiates at the full per-element
// power, |x_n| = sqrt(2 rho).
template <typename Scalar>
Excitation<Scalar> far_field_excitation(const PropagationContext<Scalar>& ctx,
                                        const ArrayGeometry<Scalar>& tx,
                                        const DirectionUV<Scalar>& xi)
{
    ctx.validate();
    if (!xi.valid())
        throw std::invalid_argument("far_field_excitation: direction outside the unit disk");

    const Scalar k = ctx.wavenumber();
    VecX<Scalar> phases(tx.positions.cols());
    for (Eigen::Index n = 0; n < phases.size(); ++n)
        phases(n) = k * (xi.u * tx.positions(0, n) + xi.v * tx.positions(1, n));
    return excitation_from_phases(detail::element_magnitude(tx.spec), std::move(phases));
}

// Spherical steering focused at range r along xi: the plane-wave phase
// minus the quadratic focusing term |a_n|^2 / (2 r).
template <typename Scalar>
Excitation<Scalar> near_field_excitation(const PropagationContext<Scalar>& ctx,
                                         const ArrayGeometry<Scalar>& tx,
                                         const DirectionUV<Scalar>& xi, Scalar focus_range)
{
    ctx.validate();
    if (!xi.valid())
        throw std::invalid_argument("near_field_excitation: direction outside the unit disk");
    if (!(focus_range > Scalar(0)))
        throw std::invalid_argument("near_field_excitation: focus range must be positive");

    const Scalar k = ctx.wavenumber();
    VecX<Scalar> phases(tx.positions.cols());
    for (Eigen::Index n = 0; n < phases.size(); ++n)
    {
        const Scalar steer = xi.u * tx.positions(0, n) + xi.v * tx.positions(1, n);
        const Scalar focus = tx.positions.col(n).squaredNorm() / (Scalar(2) * focus_range);
        phases(n) = k * (steer - focus);
    }
    return excitation_from_phases(detail::element_magnitude(tx.spec), std::move(phases));
}

// Excitation that maximizes the anchor received power under the
// decomposed channel: spherical steering at the receiver's own
// direction and range.
template <typename Scalar>
Excitation<Scalar> optimal_excitation(const PropagationContext<Scalar>& ctx,
                                      const ArrayGeometry<Scalar>& tx,
                                      const ReceiverPose<Scalar>& pose)
{
    return near_field_excitation(ctx, tx, pose.direction(), pose.range());
}

// Rounds each steering phase to the nearest multiple of the phase
// shifter step (ties toward +infinity). The step must divide a full
// turn, as for an integer-width phase shifter word.
template <typename Scalar>
Excitation<Scalar> quantize_phases(const Excitation<Scalar>& x, Scalar lsb)
{
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    if (!(lsb > Scalar(0)))
        throw std::invalid_argument("quantize_phases: lsb must be positive");
    const Scalar levels = two_pi / lsb;
    if (std::abs(levels - std::round(levels)) > Scalar(1e-9))
        throw std::invalid_argument("quantize_phases: lsb must divide a full turn");

    const std::complex<Scalar> j(Scalar(0), Scalar(1));
    Excitation<Scalar> out = x;
    for (Eigen::Index n = 0; n < out.size(); ++n)
    {
        out.phases(n) = std::floor(x.phases(n) / lsb + Scalar(0.5)) * lsb;
        out.waves(n) = std::abs(x.waves(n)) * std::exp(-j * out.phases(n));
    }
    return out;
}

// Switches elements on or off: masked-off elements transmit nothing,
// the rest keep their waves. The commanded phases are retained for all
// elements.
template <typename Scalar>
Excitation<Scalar> apply_element_mask(const Excitation<Scalar>& x, const MaskArray& mask)
{
    if (mask.size() != x.size())
        throw std::invalid_argument("apply_element_mask: mask length must match element count");

    Excitation<Scalar> out = x;
    for (Eigen::Index n = 0; n < out.size(); ++n)
        if (!mask(n))
            out.waves(n) = std::complex<Scalar>(0, 0);
    return out;
}

template <typename Scalar>
CVecX<Scalar> received_waves(const ChannelMatrix<Scalar>& channel, const Excitation<Scalar>& x)
{
    return received_waves(channel, x.waves);
}

} // namespace wpt
