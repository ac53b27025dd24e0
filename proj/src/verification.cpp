// SPDX-License-Identifier: Apache-2.0
//
// ialab - interference alignment simulation library
// Copyright (C) 2026 The ialab authors
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

#include "ialab/verification.hpp"

#include "ialab/errors.hpp"
#include "ialab/precoder_mimo.hpp"
#include "ialab/precoder_siso.hpp"

#include <algorithm>

namespace ialab
{

arma::cx_mat build_S_matrix(const ExtendedChannel &ext, int order)
{
    if (order < 1)
        throw ParameterError("alignment order n must be >= 1");
    if (ext.users() != 3 || ext.antennas() != 1 || ext.slots() != 2 * order + 1)
        throw ShapeError("S matrix needs a 3-user single-antenna extension with L = 2n+1");

    const arma::cx_vec t = build_T_k3(ext).diagonal();
    const arma::cx_vec d = (ext.link(0, 0).inverse() * ext.link(0, 1)).diagonal();
    const int length = ext.slots();

    arma::cx_mat s(length, length);
    arma::cx_vec power(length, arma::fill::ones);
    for (int i = 0; i <= order; ++i)
    {
        s.col(i) = power;
        if (i < order)
            s.col(order + 1 + i) = d % power;
        power %= t;
    }
    return s;
}

arma::cx_mat vandermonde_matrix(const arma::cx_vec &nodes)
{
    const arma::uword n = nodes.n_elem;
    arma::cx_mat v(n, n);
    for (arma::uword r = 0; r < n; ++r)
    {
        arma::cx_double x(1.0, 0.0);
        for (arma::uword c = 0; c < n; ++c)
        {
            v(r, c) = x;
            x *= nodes[r];
        }
    }
    return v;
}

VandermondeCheck vandermonde_check(const arma::cx_vec &nodes)
{
    VandermondeCheck out;
    out.lu_determinant = lu_determinant(vandermonde_matrix(nodes));
    out.product_formula = {1.0, 0.0};
    for (arma::uword i = 0; i < nodes.n_elem; ++i)
        for (arma::uword j = i + 1; j < nodes.n_elem; ++j)
            out.product_formula *= nodes[j] - nodes[i];
    const double scale = std::max(std::abs(out.lu_determinant), std::abs(out.product_formula));
    out.relative_error = scale > 0.0 ? std::abs(out.lu_determinant - out.product_formula) / scale : 0.0;
    return out;
}

namespace
{

void require_even(int antennas)
{
    if (antennas < 2 || antennas % 2 != 0)
        throw ParameterError("infeasibility demo requires M >= 2 even");
}

} // namespace

AlignmentReport demonstrate_diagonal_infeasibility(int antennas, std::uint64_t seed)
{
    require_even(antennas);
    ChannelParams params;
    params.users = 3;
    params.antennas = 1;
    params.slots = antennas;
    params.seed = seed;
    const ExtendedChannel extended = extend_channel(generate_channels(params), antennas, ExtensionMode::frequency);

    // Reinterpret each M-slot diagonal link as a single M x M block.
    std::vector<BlockDiagonal> links;
    for (const BlockDiagonal &link : extended.links())
    {
        arma::cx_cube block(antennas, antennas, 1);
        block.slice(0) = link.dense();
        links.emplace_back(std::move(block));
    }
    const ExtendedChannel diagonal(3, std::move(links));
    return check_alignment(build_mimo_even(diagonal), diagonal);
}

AlignmentReport dense_channel_control(int antennas, std::uint64_t seed)
{
    require_even(antennas);
    ChannelParams params;
    params.users = 3;
    params.antennas = antennas;
    params.slots = 1;
    params.seed = seed;
    const ChannelSet channels = generate_channels(params);
    const ExtendedChannel ext = mimo_extension(channels);
    return check_alignment(build_mimo_even(ext), ext);
}

nlohmann::json probe_to_json(const RankProbe &probe, std::uint64_t seed)
{
    return {{"seed", seed},
            {"rows", probe.rows},
            {"cols", probe.cols},
            {"rank", probe.rank},
            {"tolerance", probe.tolerance},
            {"sigma_max", probe.sigma_max()},
            {"sigma_min", probe.sigma_min()}};
}

} // namespace ialab
