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

#include "ialab/precoder_mimo.hpp"

#include "ialab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ialab
{

namespace
{

void require_three_users(const ExtendedChannel &ext)
{
    if (ext.users() != 3)
        throw ShapeError("MIMO construction requires K = 3, got K = " + std::to_string(ext.users()));
}

void require_constant(const ChannelSet &ch)
{
    if (ch.users() != 3)
        throw ParameterError("MIMO construction requires K = 3");
    if (ch.slots() != 1)
        throw ParameterError("MIMO construction uses constant channels (F = 1), got F = " +
                             std::to_string(ch.slots()));
}

PrecoderScheme finish(const ExtendedChannel &ext, SchemeFamily family, arma::cx_mat v1)
{
    auto h = [&](int rx, int tx) -> const BlockDiagonal & { return ext.link(rx - 1, tx - 1); };
    PrecoderScheme scheme;
    scheme.family = family;
    scheme.users = 3;
    scheme.antennas = ext.antennas();
    scheme.slots = ext.slots();
    arma::cx_mat v2 = h(3, 2).inverse() * (h(3, 1) * v1);
    arma::cx_mat v3 = h(2, 3).inverse() * (h(2, 1) * v1);
    scheme.precoders = {std::move(v1), std::move(v2), std::move(v3)};
    return scheme;
}

} // namespace

Eigenbasis sorted_eigenbasis(const arma::cx_mat &e)
{
    arma::cx_vec values;
    arma::cx_mat vectors;
    if (!arma::eig_gen(values, vectors, e))
        throw DegeneracyError("eigendecomposition failed");

    const arma::uword m = values.n_elem;
    std::vector<arma::uword> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](arma::uword a, arma::uword b) {
        const double ma = std::abs(values[a]), mb = std::abs(values[b]);
        if (ma != mb)
            return ma > mb;
        return std::arg(values[a]) < std::arg(values[b]);
    });

    Eigenbasis basis;
    basis.values.set_size(m);
    basis.vectors.set_size(m, m);
    for (arma::uword i = 0; i < m; ++i)
    {
        basis.values[i] = values[order[i]];
        basis.vectors.col(i) = arma::normalise(vectors.col(order[i]));
    }

    const double scale = std::abs(basis.values[0]);
    for (arma::uword i = 0; i < m; ++i)
        for (arma::uword j = i + 1; j < m; ++j)
            if (std::abs(basis.values[i] - basis.values[j]) <= 1e-10 * scale)
                throw DegeneracyError("repeated eigenvalues: eigenvector choice is not unique");

    basis.condition = arma::cond(basis.vectors);
    if (!std::isfinite(basis.condition) || basis.condition > kEigenbasisConditionLimit)
        throw DegeneracyError("eigenbasis condition number " + std::to_string(basis.condition) + " exceeds limit");
    return basis;
}

arma::cx_mat mimo_alignment_operator(const ExtendedChannel &ext)
{
    require_three_users(ext);
    auto h = [&](int rx, int tx) -> arma::cx_mat { return ext.link(rx - 1, tx - 1).block(0); };
    auto inv = [](const arma::cx_mat &m) -> arma::cx_mat {
        if (arma::rcond(m) < 1e-14)
            throw SingularityError("singular MIMO channel matrix");
        return arma::inv(m);
    };
    return inv(h(3, 1)) * h(3, 2) * inv(h(1, 2)) * h(1, 3) * inv(h(2, 3)) * h(2, 1);
}

PrecoderScheme build_mimo_even(const ExtendedChannel &ext)
{
    require_three_users(ext);
    const int m = ext.antennas();
    if (m < 2 || m % 2 != 0)
        throw ParameterError("even-M construction requires M >= 2 even, got M = " + std::to_string(m));
    if (ext.slots() != 1)
        throw ShapeError("even-M construction runs on the constant channel (L = 1)");

    const Eigenbasis basis = sorted_eigenbasis(mimo_alignment_operator(ext));
    return finish(ext, SchemeFamily::mimo_even, basis.vectors.cols(0, m / 2 - 1));
}

PrecoderScheme build_mimo_even(const ChannelSet &channels)
{
    require_constant(channels);
    return build_mimo_even(extend_channel(channels, 1, ExtensionMode::constant_time));
}

PrecoderScheme build_mimo_odd(const ExtendedChannel &ext)
{
    require_three_users(ext);
    const int m = ext.antennas();
    if (m < 3 || m % 2 == 0)
        throw ParameterError("odd-M construction requires M >= 3 odd, got M = " + std::to_string(m));
    if (ext.slots() != 2)
        throw ShapeError("odd-M construction runs on the two-slot extension (L = 2)");
    for (const BlockDiagonal &link : ext.links())
        if (arma::any(arma::vectorise(link.block(0) != link.block(1))))
            throw ShapeError("odd-M construction needs a constant-time extension (equal blocks)");

    const Eigenbasis basis = sorted_eigenbasis(mimo_alignment_operator(ext));
    const arma::cx_mat &e = basis.vectors;

    arma::cx_mat v1(2 * m, m, arma::fill::zeros);
    for (int j = 1; j < m; ++j)
    {
        const int top = (j % 2 == 1) ? 0 : m;
        v1.submat(top, j - 1, top + m - 1, j - 1) = e.col(j - 1);
    }
    v1.submat(0, m - 1, m - 1, m - 1) = e.col(m - 1);
    v1.submat(m, m - 1, 2 * m - 1, m - 1) = e.col(m - 1);

    return finish(ext, SchemeFamily::mimo_odd, std::move(v1));
}

PrecoderScheme build_mimo_odd(const ChannelSet &channels)
{
    require_constant(channels);
    return build_mimo_odd(extend_channel(channels, 2, ExtensionMode::constant_time));
}

ExtendedChannel mimo_extension(const ChannelSet &channels)
{
    require_constant(channels);
    return extend_channel(channels, channels.antennas() % 2 == 0 ? 1 : 2, ExtensionMode::constant_time);
}

PrecoderScheme build_mimo(const ChannelSet &channels)
{
    return channels.antennas() % 2 == 0 ? build_mimo_even(channels) : build_mimo_odd(channels);
}

} // namespace ialab
