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

#include "wpt/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace wpt
{

// Wraps an angle in radians to the canonical range (-pi, pi].
template <typename Scalar>
Scalar wrap_angle(Scalar angle)
{
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    Scalar w = std::fmod(angle + pi, Scalar(2) * pi);
    if (w <= Scalar(0))
        w += Scalar(2) * pi;
    return w - pi;
}

// Static description of a uniform rectangular antenna array in its own
// x-y plane. Spacings are in meters, gain is a linear power gain, and
// per_element_power is the per-element transmit power in watts.
template <typename Scalar>
struct ArraySpec
{
    Eigen::Index n_rows = 1;
    Eigen::Index n_cols = 1;
    Scalar row_spacing = Scalar(0);
    Scalar col_spacing = Scalar(0);
    Scalar element_gain = Scalar(1);
    Scalar per_element_power = Scalar(0);

    // Physical element size per axis. Only the radiating-boundary
    // aperture uses these; element placement never does.
    std::optional<Scalar> element_extent_x{};
    std::optional<Scalar> element_extent_y{};

    Eigen::Index size() const
    {
        return n_rows * n_cols;
    }

    void validate() const
    {
        if (n_rows < 1)
            throw std::invalid_argument("ArraySpec: n_rows must be at least 1");
        if (n_cols < 1)
            throw std::invalid_argument("ArraySpec: n_cols must be at least 1");
        if (!(row_spacing > Scalar(0)))
            throw std::invalid_argument("ArraySpec: row_spacing must be positive");
        if (!(col_spacing > Scalar(0)))
            throw std::invalid_argument("ArraySpec: col_spacing must be positive");
        if (!(element_gain > Scalar(0)))
            throw std::invalid_argument("ArraySpec: element_gain must be positive");
        if (!(per_element_power >= Scalar(0)))
            throw std::invalid_argument("ArraySpec: per_element_power must be non-negative");
        if (element_extent_x && !(*element_extent_x > Scalar(0)))
            throw std::invalid_argument("ArraySpec: element_extent_x must be positive");
        if (element_extent_y && !(*element_extent_y > Scalar(0)))
            throw std::invalid_argument("ArraySpec: element_extent_y must be positive");
    }
};

// Realized element layout. Positions are one column per element, in the
// frame of the owning device. anchor_index is the 1-based index of the
// element closest to the array centroid (lowest index on ties); it is
// the reference element for pose placement and power measurements.
template <typename Scalar>
struct ArrayGeometry
{
    ArraySpec<Scalar> spec{};
    Mat3X<Scalar> positions{};
    Eigen::Index anchor_index = 1;

    Eigen::Index size() const
    {
        return positions.cols();
    }

    Vec3<Scalar> position(Eigen::Index n) const
    {
        if (n < 1 || n > positions.cols())
            throw std::invalid_argument("ArrayGeometry: element index out of range");
        return positions.col(n - 1);
    }

    Vec3<Scalar> anchor_position() const
    {
        return positions.col(anchor_index - 1);
    }
};

// Builds the element layout for a uniform rectangular array centered on
// the origin. Elements are numbered 1..N row by row; x decreases along
// a row and y increases with the row number, so the layout is
// centrosymmetric about the origin.
template <typename Scalar>
ArrayGeometry<Scalar> build_planar_array(const ArraySpec<Scalar>& spec)
{
    spec.validate();

    const Eigen::Index n = spec.size();
    Mat3X<Scalar> pos(3, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const Eigen::Index row = i / spec.n_cols + 1;
        const Eigen::Index col = i % spec.n_cols + 1;
        pos(0, i) = spec.col_spacing * (Scalar(spec.n_cols + 1) / Scalar(2) - Scalar(col));
        pos(1, i) = spec.row_spacing * (Scalar(row) - Scalar(spec.n_rows + 1) / Scalar(2));
        pos(2, i) = Scalar(0);
    }

    const Vec3<Scalar> centroid = pos.rowwise().mean();
    Eigen::Index anchor = 0;
    Scalar best = (pos.col(0) - centroid).squaredNorm();
    for (Eigen::Index i = 1; i < n; ++i)
    {
        const Scalar d2 = (pos.col(i) - centroid).squaredNorm();
        if (d2 < best)
            best = d2, anchor = i;
    }

    return {spec, std::move(pos), anchor + 1};
}

// Shifts every element so the anchor sits at the local origin, as
// required by the receiver placement and channel decomposition.
template <typename Scalar>
ArrayGeometry<Scalar> recenter_on_anchor(ArrayGeometry<Scalar> geometry)
{
    const Vec3<Scalar> shift = geometry.anchor_position();
    geometry.positions.colwise() -= shift;
    return geometry;
}

// Intrinsic x-y'-z'' rotation. Angles are held in (-pi, pi].
template <typename Scalar>
class EulerAngles
{
  public:
    EulerAngles() = default;

    EulerAngles(Scalar alpha, Scalar beta, Scalar gamma)
    {
        if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
            throw std::invalid_argument("EulerAngles: angles must be finite");
        alpha_ = wrap_angle(alpha);
        beta_ = wrap_angle(beta);
        gamma_ = wrap_angle(gamma);
    }

    Scalar alpha() const
    {
        return alpha_;
    }
    Scalar beta() const
    {
        return beta_;
    }
    Scalar gamma() const
    {
        return gamma_;
    }

  private:
    Scalar alpha_ = Scalar(0);
    Scalar beta_ = Scalar(0);
    Scalar gamma_ = Scalar(0);
};

// Rotation matrix R = R_x(alpha) * R_y(beta) * R_z(gamma).
template <typename Scalar>
Mat3<Scalar> rotation_matrix(const EulerAngles<Scalar>& angles)
{
    const Scalar ca = std::cos(angles.alpha()), sa = std::sin(angles.alpha());
    const Scalar cb = std::cos(angles.beta()), sb = std::sin(angles.beta());
    const Scalar cg = std::cos(angles.gamma()), sg = std::sin(angles.gamma());

    Mat3<Scalar> rx, ry, rz;
    rx << Scalar(1), Scalar(0), Scalar(0), //
        Scalar(0), ca, -sa,                //
        Scalar(0), sa, ca;
    ry << cb, Scalar(0), sb,      //
        Scalar(0), Scalar(1), Scalar(0), //
        -sb, Scalar(0), cb;
    rz << cg, -sg, Scalar(0), //
        sg, cg, Scalar(0),    //
        Scalar(0), Scalar(0), Scalar(1);

    return rx * ry * rz;
}

template <typename Scalar>
struct SphericalPosition
{
    Scalar range = Scalar(0);
    Scalar theta = Scalar(0); // polar angle from +z
    Scalar phi = Scalar(0);   // azimuth from +x
};

template <typename Scalar>
Vec3<Scalar> spherical_to_cartesian(Scalar range, Scalar theta, Scalar phi)
{
    if (!(range > Scalar(0)))
        throw std::invalid_argument("spherical_to_cartesian: range must be positive");
    const Scalar st = std::sin(theta);
    return {range * st * std::cos(phi), range * st * std::sin(phi), range * std::cos(theta)};
}

template <typename Scalar>
SphericalPosition<Scalar> cartesian_to_spherical(const Vec3<Scalar>& p)
{
    const Scalar r = p.norm();
    if (!(r > Scalar(0)))
        throw std::invalid_argument("cartesian_to_spherical: zero-length position");
    const Scalar c = std::clamp(p.z() / r, Scalar(-1), Scalar(1));
    return {r, std::acos(c), std::atan2(p.y(), p.x())};
}

// Beam direction in u-v space: u = sin(theta)cos(phi), v = sin(theta)sin(phi).
// Physical directions satisfy u^2 + v^2 <= 1.
template <typename Scalar>
struct DirectionUV
{
    Scalar u = Scalar(0);
    Scalar v = Scalar(0);

    bool valid() const
    {
        return u * u + v * v <= Scalar(1);
    }
};

template <typename Scalar>
DirectionUV<Scalar> direction_to_uv(Scalar theta, Scalar phi)
{
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    if (!(std::abs(theta) <= pi / Scalar(2)))
        throw std::invalid_argument("direction_to_uv: |theta| must not exceed pi/2");
    const Scalar st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi)};
}

// Inverse of direction_to_uv on the unit disk; theta comes out in [0, pi/2].
template <typename Scalar>
std::pair<Scalar, Scalar> uv_to_direction(const DirectionUV<Scalar>& xi)
{
    const Scalar n2 = xi.u * xi.u + xi.v * xi.v;
    if (!(n2 <= Scalar(1)))
        throw std::invalid_argument("uv_to_direction: u^2 + v^2 must not exceed 1");
    const Scalar s = std::min(Scalar(1), std::sqrt(n2));
    return {std::asin(s), std::atan2(xi.v, xi.u)};
}

// Receiver placement: position of the anchor element in the transmitter
// frame plus the receiver attitude. The anchor is restricted to the
// radiation half-space z >= 0, range > 0.
template <typename Scalar>
class ReceiverPose
{
  public:
    ReceiverPose(const Vec3<Scalar>& anchor_position, const EulerAngles<Scalar>& attitude)
        : anchor_(anchor_position), attitude_(attitude)
    {
        if (!anchor_.allFinite())
            throw std::invalid_argument("ReceiverPose: position must be finite");
        if (!(anchor_.norm() > Scalar(0)))
            throw std::invalid_argument("ReceiverPose: range must be positive");
        if (anchor_.z() < Scalar(0))
            throw std::invalid_argument("ReceiverPose: position must lie in the z >= 0 half-space");
    }

    static ReceiverPose from_spherical(Scalar range, Scalar theta, Scalar phi,
                                       const EulerAngles<Scalar>& attitude)
    {
        constexpr Scalar pi = std::numbers::pi_v<Scalar>;
        if (!(std::abs(theta) <= pi / Scalar(2)))
            throw std::invalid_argument("ReceiverPose: |theta| must not exceed pi/2");
        if (!(std::abs(phi) <= pi))
            throw std::invalid_argument("ReceiverPose: |phi| must not exceed pi");
        return ReceiverPose(spherical_to_cartesian(range, theta, phi), attitude);
    }

    const Vec3<Scalar>& anchor_position() const
    {
        return anchor_;
    }
    const EulerAngles<Scalar>& attitude() const
    {
        return attitude_;
    }

    Scalar range() const
    {
        return anchor_.norm();
    }
    Scalar theta() const
    {
        return cartesian_to_spherical(anchor_).theta;
    }
    Scalar phi() const
    {
        return cartesian_to_spherical(anchor_).phi;
    }

    DirectionUV<Scalar> direction() const
    {
        const Scalar r = range();
        return {anchor_.x() / r, anchor_.y() / r};
    }

  private:
    Vec3<Scalar> anchor_;
    EulerAngles<Scalar> attitude_;
};

namespace detail
{

template <typename Scalar>
void require_anchor_at_origin(const ArrayGeometry<Scalar>& local)
{
    if (local.anchor_position().norm() > Scalar(1e-12))
        throw std::invalid_argument("receiver local geometry must be recentered on its anchor");
}

} // namespace detail

// Element positions of a posed receiver in the transmitter frame:
// s_m = s_anchor + R * s_m_local. The local geometry must have its
// anchor at the origin (see recenter_on_anchor).
template <typename Scalar>
Mat3X<Scalar> receiver_global_positions(const ReceiverPose<Scalar>& pose,
                                        const ArrayGeometry<Scalar>& local)
{
    detail::require_anchor_at_origin(local);
    const Mat3<Scalar> rot = rotation_matrix(pose.attitude());
    Mat3X<Scalar> global = rot * local.positions;
    global.colwise() += pose.anchor_position();
    return global;
}

} // namespace wpt
