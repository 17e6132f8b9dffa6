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

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace wpt
{

// Carrier-level quantities shared by every link computation.
template <typename Scalar>
struct PropagationContext
{
    Scalar frequency = Scalar(0);  // Hz
    Scalar wavelength = Scalar(0); // m
    Scalar tx_gain = Scalar(1);    // linear power gain per transmit element
    Scalar rx_gain = Scalar(1);    // linear power gain per receive element

    static PropagationContext from_frequency(Scalar frequency, Scalar tx_gain = Scalar(1),
                                             Scalar rx_gain = Scalar(1))
    {
        PropagationContext ctx{frequency, Scalar(speed_of_light_mps) / frequency, tx_gain, rx_gain};
        ctx.validate();
        return ctx;
    }

    Scalar wavenumber() const
    {
        return Scalar(2) * std::numbers::pi_v<Scalar> / wavelength;
    }

    void validate() const
    {
        if (!(frequency > Scalar(0)))
            throw std::invalid_argument("PropagationContext: frequency must be positive");
        if (!(wavelength > Scalar(0)))
            throw std::invalid_argument("PropagationContext: wavelength must be positive");
        if (std::abs(wavelength - Scalar(speed_of_light_mps) / frequency) >
            Scalar(1e-12) * wavelength)
            throw std::invalid_argument(
                "PropagationContext: wavelength does not match frequency");
        if (!(tx_gain > Scalar(0)) || !(rx_gain > Scalar(0)))
            throw std::invalid_argument("PropagationContext: element gains must be positive");
    }
};

enum class ChannelModel
{
    exact,     // spherical-wave gain from true pairwise distances
    decomposed // range/direction/focusing factorization about the anchor
};

// Complex gains between every transmit element n and receive element m,
// plus the geometric offset that produced each entry (a_n - s_m for the
// exact model, the anchor-relative offset for the decomposed one).
template <typename Scalar>
struct ChannelMatrix
{
    CMatX<Scalar> gains{};  // tx element per row, rx element per column
    ChannelModel model = ChannelModel::exact;
    Mat3X<Scalar> offsets{}; // column (m-1)*N + (n-1)

    Eigen::Index tx_count() const
    {
        return gains.rows();
    }
    Eigen::Index rx_count() const
    {
        return gains.cols();
    }

    std::complex<Scalar> gain(Eigen::Index n, Eigen::Index m) const
    {
        check_pair(n, m);
        return gains(n - 1, m - 1);
    }

    Vec3<Scalar> offset(Eigen::Index n, Eigen::Index m) const
    {
        check_pair(n, m);
        return offsets.col((m - 1) * gains.rows() + (n - 1));
    }

  private:
    void check_pair(Eigen::Index n, Eigen::Index m) const
    {
        if (n < 1 || n > gains.rows() || m < 1 || m > gains.cols())
            throw std::invalid_argument("ChannelMatrix: element pair out of range");
    }
};

namespace detail
{

template <typename Scalar, typename Derived>
void require_position_block(const Eigen::MatrixBase<Derived>& positions)
{
    static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                  "position scalar type must match the context scalar type");
    if (positions.rows() != 3 || positions.cols() < 1)
        throw std::invalid_argument("positions must be a 3 x M matrix with M >= 1");
}

} // namespace detail

// Euclidean separation of every (transmit, receive) element pair, with
// receive positions given in the transmitter frame. Separations below
// min_separation_m are outside the model and rejected.
template <typename Scalar, typename Derived>
MatX<Scalar> pairwise_distances(const ArrayGeometry<Scalar>& tx,
                                const Eigen::MatrixBase<Derived>& rx_positions)
{
    detail::require_position_block<Scalar>(rx_positions);

    const Eigen::Index n_tx = tx.positions.cols();
    const Eigen::Index n_rx = rx_positions.cols();
    MatX<Scalar> dist(n_tx, n_rx);
    for (Eigen::Index m = 0; m < n_rx; ++m)
        for (Eigen::Index n = 0; n < n_tx; ++n)
        {
            const Scalar d = (tx.positions.col(n) - rx_positions.col(m)).norm();
            if (d < Scalar(min_separation_m))
                throw std::invalid_argument("pairwise_distances: element pair " +
                                            std::to_string(n + 1) + "," + std::to_string(m + 1) +
                                            " is closer than 1 mm");
            dist(n, m) = d;
        }
    return dist;
}

// Free-space spherical-wave gain h = lambda * sqrt(G_tx G_rx) / (4 pi d)
// * exp(-j 2 pi d / lambda) for every element pair.
template <typename Scalar, typename Derived>
ChannelMatrix<Scalar> channel_gain_exact(const PropagationContext<Scalar>& ctx,
                                         const ArrayGeometry<Scalar>& tx,
                                         const Eigen::MatrixBase<Derived>& rx_positions)
{
    ctx.validate();
    detail::require_position_block<Scalar>(rx_positions);

    const Eigen::Index n_tx = tx.positions.cols();
    const Eigen::Index n_rx = rx_positions.cols();
    const Scalar amp = ctx.wavelength * std::sqrt(ctx.tx_gain * ctx.rx_gain) /
                       (Scalar(4) * std::numbers::pi_v<Scalar>);
    const Scalar k = ctx.wavenumber();
    const std::complex<Scalar> j(Scalar(0), Scalar(1));

    ChannelMatrix<Scalar> channel{CMatX<Scalar>(n_tx, n_rx), ChannelModel::exact,
                                  Mat3X<Scalar>(3, n_tx * n_rx)};
    for (Eigen::Index m = 0; m < n_rx; ++m)
        for (Eigen::Index n = 0; n < n_tx; ++n)
        {
            const Vec3<Scalar> diff = tx.positions.col(n) - rx_positions.col(m);
            const Scalar d = diff.norm();
            if (d < Scalar(min_separation_m))
                throw std::invalid_argument("channel_gain_exact: element pair " +
                                            std::to_string(n + 1) + "," + std::to_string(m + 1) +
                                            " is closer than 1 mm");
            channel.gains(n, m) = amp / d * std::exp(-j * (k * d));
            channel.offsets.col(m * n_tx + n) = diff;
        }
    return channel;
}

// Factorized near-field gain about the receiver anchor,
//   h = Phi(r) * Omega(theta, phi) * Lambda(r),
// with Phi the anchor range response, Omega the plane-wave direction
// response of the anchor-relative offset kappa = a_n - R s_m, and
// Lambda the quadratic focusing correction kappa^2 / (2 r).
template <typename Scalar>
ChannelMatrix<Scalar> channel_gain_decomposed(const PropagationContext<Scalar>& ctx,
                                              const ArrayGeometry<Scalar>& tx,
                                              const ReceiverPose<Scalar>& pose,
                                              const ArrayGeometry<Scalar>& rx_local)
{
    ctx.validate();
    detail::require_anchor_at_origin(rx_local);

    const Scalar r = pose.range();
    if (r < Scalar(min_separation_m))
        throw std::invalid_argument("channel_gain_decomposed: anchor closer than 1 mm");

    const Eigen::Index n_tx = tx.positions.cols();
    const Eigen::Index n_rx = rx_local.positions.cols();
    const Scalar k = ctx.wavenumber();
    const std::complex<Scalar> j(Scalar(0), Scalar(1));
    const Vec3<Scalar> unit_dir = pose.anchor_position() / r;
    const Mat3<Scalar> rot = rotation_matrix(pose.attitude());

    const std::complex<Scalar> phi = ctx.wavelength * std::sqrt(ctx.tx_gain * ctx.rx_gain) /
                                     (Scalar(4) * std::numbers::pi_v<Scalar> * r) *
                                     std::exp(-j * (k * r));

    ChannelMatrix<Scalar> channel{CMatX<Scalar>(n_tx, n_rx), ChannelModel::decomposed,
                                  Mat3X<Scalar>(3, n_tx * n_rx)};
    for (Eigen::Index m = 0; m < n_rx; ++m)
    {
        const Vec3<Scalar> s_rot = rot * rx_local.positions.col(m);
        for (Eigen::Index n = 0; n < n_tx; ++n)
        {
            const Vec3<Scalar> kappa = tx.positions.col(n) - s_rot;
            const std::complex<Scalar> omega = std::exp(j * (k * unit_dir.dot(kappa)));
            const std::complex<Scalar> lambda =
                std::exp(-j * (k * kappa.squaredNorm() / (Scalar(2) * r)));
            channel.gains(n, m) = phi * omega * lambda;
            channel.offsets.col(m * n_tx + n) = kappa;
        }
    }
    return channel;
}

template <typename Scalar>
ChannelMatrix<Scalar> make_channel(const PropagationContext<Scalar>& ctx,
                                   const ArrayGeometry<Scalar>& tx,
                                   const ReceiverPose<Scalar>& pose,
                                   const ArrayGeometry<Scalar>& rx_local, ChannelModel model)
{
    if (model == ChannelModel::exact)
        return channel_gain_exact(ctx, tx, receiver_global_positions(pose, rx_local));
    return channel_gain_decomposed(ctx, tx, pose, rx_local);
}

// Noise-free receive waves y = H^T x for a transmit excitation vector.
template <typename Scalar, typename Derived>
CVecX<Scalar> received_waves(const ChannelMatrix<Scalar>& channel,
                             const Eigen::MatrixBase<Derived>& excitation)
{
    static_assert(std::is_same_v<typename Derived::Scalar, std::complex<Scalar>>,
                  "excitation must be a complex vector of the channel scalar type");
    if (excitation.cols() != 1 || excitation.rows() != channel.gains.rows())
        throw std::invalid_argument("received_waves: excitation length must match tx count");
    return channel.gains.transpose() * excitation;
}

// Aperture footprint (x, y) in meters used for the radiating-boundary
// estimate. Without a configured element extent an axis spans
// count * spacing, except that a single element row or column spans
// nothing; with an extent it spans (count - 1) * spacing + extent.
template <typename Scalar>
std::pair<Scalar, Scalar> aperture_dimensions(const ArraySpec<Scalar>& spec)
{
    spec.validate();
    auto axis = [](Eigen::Index count, Scalar spacing, const std::optional<Scalar>& extent) {
        if (extent)
            return Scalar(count - 1) * spacing + *extent;
        return count > 1 ? Scalar(count) * spacing : Scalar(0);
    };
    return {axis(spec.n_cols, spec.col_spacing, spec.element_extent_x),
            axis(spec.n_rows, spec.row_spacing, spec.element_extent_y)};
}

// Radiating near-field boundary r_b = 2 L^2 / lambda for an aperture of
// maximum linear dimension L.
template <typename Scalar>
Scalar fraunhofer_distance(const PropagationContext<Scalar>& ctx, Scalar max_linear_dimension)
{
    ctx.validate();
    if (!(max_linear_dimension >= Scalar(0)))
        throw std::invalid_argument("fraunhofer_distance: aperture dimension must be non-negative");
    return Scalar(2) * max_linear_dimension * max_linear_dimension / ctx.wavelength;
}

template <typename Scalar>
Scalar fraunhofer_distance(const PropagationContext<Scalar>& ctx, const ArrayGeometry<Scalar>& tx)
{
    const auto [dim_x, dim_y] = aperture_dimensions(tx.spec);
    return fraunhofer_distance(ctx, std::hypot(dim_x, dim_y));
}

} // namespace wpt
