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

#include <stdexcept>
#include <vector>

namespace wpt
{

// One direction of the far-field scan grid. Beams outside the unit
// disk do not correspond to a physical direction and are flagged
// invalid; scans skip them but keep their index.
template <typename Scalar>
struct FarBeam
{
    Eigen::Index index = 0; // 1-based beam number k
    DirectionUV<Scalar> direction{};
    bool valid = false;
};

// Two-phase scan grid: a rectangular u-v beam grid for the far scan and
// a uniform distance grid (0, boundary] for the near scan.
template <typename Scalar>
struct Codebook
{
    std::vector<FarBeam<Scalar>> far_beams{};
    Scalar delta_u = Scalar(0); // scanned width in u, centered on broadside
    Scalar delta_v = Scalar(0);
    Eigen::Index psi_u = 0; // beam count along u (varies fastest in k)
    Eigen::Index psi_v = 0;
    Scalar boundary = Scalar(0);    // r_b the distance grid is built from
    VecX<Scalar> distance_grid{};   // r_i = boundary * i / size, i = 1..size

    Eigen::Index beam_count() const
    {
        return static_cast<Eigen::Index>(far_beams.size());
    }

    Eigen::Index valid_beam_count() const
    {
        Eigen::Index n = 0;
        for (const auto& beam : far_beams)
            n += beam.valid ? 1 : 0;
        return n;
    }

    const FarBeam<Scalar>& beam(Eigen::Index k) const
    {
        if (k < 1 || k > beam_count())
            throw std::invalid_argument("Codebook: beam index out of range");
        return far_beams[static_cast<std::size_t>(k - 1)];
    }

    Scalar distance(Eigen::Index i) const
    {
        if (i < 1 || i > distance_grid.size())
            throw std::invalid_argument("Codebook: distance index out of range");
        return distance_grid(i - 1);
    }
};

// Symmetric grid coordinate for slot j of J: j - J/2 - 1/2, giving
// points centered on zero with unit pitch.
template <typename Scalar>
Scalar grid_point(Eigen::Index j, Eigen::Index size)
{
    return Scalar(j) - Scalar(size) / Scalar(2) - Scalar(1) / Scalar(2);
}

// Builds the scan codebook for a transmit array. The u grid carries
// 2 * n_rows beams over width delta_u and the v grid 2 * n_cols beams
// over width delta_v; beam k combines slot ((k-1) mod psi_u) + 1 along
// u with slot floor((k-1) / psi_u) + 1 along v. The distance grid
// divides (0, r_b] into upsilon_d equal steps.
template <typename Scalar>
Codebook<Scalar> generate_codebook(const ArraySpec<Scalar>& tx, Scalar delta_u, Scalar delta_v,
                                   Scalar r_b, Eigen::Index upsilon_d)
{
    tx.validate();
    if (!(delta_u > Scalar(0)) || delta_u > Scalar(2))
        throw std::invalid_argument("generate_codebook: delta_u must lie in (0, 2]");
    if (!(delta_v > Scalar(0)) || delta_v > Scalar(2))
        throw std::invalid_argument("generate_codebook: delta_v must lie in (0, 2]");
    if (!(r_b > Scalar(0)))
        throw std::invalid_argument("generate_codebook: r_b must be positive");
    if (upsilon_d < 1)
        throw std::invalid_argument("generate_codebook: upsilon_d must be at least 1");

    Codebook<Scalar> book;
    book.delta_u = delta_u;
    book.delta_v = delta_v;
    book.psi_u = 2 * tx.n_rows;
    book.psi_v = 2 * tx.n_cols;
    book.boundary = r_b;

    const Scalar pitch_u = delta_u / Scalar(book.psi_u - 1);
    const Scalar pitch_v = delta_v / Scalar(book.psi_v - 1);
    book.far_beams.reserve(static_cast<std::size_t>(book.psi_u * book.psi_v));
    for (Eigen::Index k = 1; k <= book.psi_u * book.psi_v; ++k)
    {
        const Eigen::Index k_u = (k - 1) % book.psi_u + 1;
        const Eigen::Index k_v = (k - 1) / book.psi_u + 1;
        const DirectionUV<Scalar> dir{pitch_u * grid_point<Scalar>(k_u, book.psi_u),
                                      pitch_v * grid_point<Scalar>(k_v, book.psi_v)};
        book.far_beams.push_back({k, dir, dir.valid()});
    }

    book.distance_grid.resize(upsilon_d);
    for (Eigen::Index i = 1; i <= upsilon_d; ++i)
        book.distance_grid(i - 1) = r_b / Scalar(upsilon_d) * Scalar(i);

    return book;
}

} // namespace wpt
