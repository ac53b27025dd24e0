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

#include "ialab/precoder_siso.hpp"

#include "ialab/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ialab
{

namespace
{

void require_single_antenna(const ExtendedChannel &ext)
{
    if (ext.antennas() != 1)
        throw ShapeError("single-antenna construction requires M = 1, got M = " + std::to_string(ext.antennas()));
}

// Columns diag^0 w, ..., diag^count-1 w with w = ones.
arma::cx_mat power_columns(const arma::cx_vec &diag, int count)
{
    arma::cx_mat out(diag.n_elem, count);
    arma::cx_vec col(diag.n_elem, arma::fill::ones);
    for (int i = 0; i < count; ++i)
    {
        out.col(i) = col;
        col %= diag;
    }
    return out;
}

} // namespace

BlockDiagonal build_T_k3(const ExtendedChannel &ext)
{
    if (ext.users() != 3)
        throw ShapeError("K=3 construction on a " + std::to_string(ext.users()) + "-user channel");
    require_single_antenna(ext);
    auto h = [&](int rx, int tx) -> const BlockDiagonal & { return ext.link(rx - 1, tx - 1); };
    return h(1, 2) * h(2, 1).inverse() * h(2, 3) * h(3, 2).inverse() * h(3, 1) * h(1, 3).inverse();
}

PrecoderScheme build_precoders_k3(const ExtendedChannel &ext, int order)
{
    if (order < 1)
        throw ParameterError("alignment order n must be >= 1");
    if (ext.slots() != 2 * order + 1)
        throw ShapeError("K=3 scheme of order " + std::to_string(order) + " needs L = " +
                         std::to_string(2 * order + 1) + ", extension has L = " + std::to_string(ext.slots()));
    const BlockDiagonal t = build_T_k3(ext);
    auto h = [&](int rx, int tx) -> const BlockDiagonal & { return ext.link(rx - 1, tx - 1); };

    const arma::cx_mat a = power_columns(t.diagonal(), order + 1);
    const arma::cx_mat b = a.cols(1, order);
    const arma::cx_mat c = a.cols(0, order - 1);

    PrecoderScheme scheme;
    scheme.family = SchemeFamily::siso_k3;
    scheme.users = 3;
    scheme.antennas = 1;
    scheme.slots = ext.slots();
    scheme.order = order;
    scheme.precoders = {
        a,
        h(3, 2).inverse() * (h(3, 1) * c),
        h(2, 3).inverse() * (h(2, 1) * b),
    };
    return scheme;
}

int general_exponent_count(int users)
{
    if (users < 3)
        throw ParameterError("general construction requires K >= 3");
    return (users - 1) * (users - 2) - 1;
}

std::vector<std::pair<int, int>> general_exponent_pairs(int users)
{
    general_exponent_count(users);
    std::vector<std::pair<int, int>> pairs;
    for (int m = 2; m <= users; ++m)
        for (int k = 2; k <= users; ++k)
            if (m != k && !(m == 2 && k == 3))
                pairs.emplace_back(m, k);
    return pairs;
}

std::size_t general_extension_length(int users, int order, std::size_t max_slots)
{
    if (order < 1)
        throw ParameterError("alignment order n must be >= 1");
    const int n_pairs = general_exponent_count(users);
    std::size_t big = 1, small = 1;
    for (int i = 0; i < n_pairs; ++i)
    {
        if (big > max_slots / static_cast<std::size_t>(order + 1))
            throw SizeError("extension length (n+1)^N + n^N exceeds the cap of " + std::to_string(max_slots) +
                            " slots");
        big *= static_cast<std::size_t>(order + 1);
        small *= static_cast<std::size_t>(order);
    }
    if (big + small > max_slots)
        throw SizeError("extension length " + std::to_string(big + small) + " exceeds the cap of " +
                        std::to_string(max_slots) + " slots");
    return big + small;
}

std::vector<std::vector<int>> exponent_tuples(int length, int radix)
{
    if (length < 0 || radix < 1)
        throw ParameterError("exponent_tuples: invalid length or radix");
    std::size_t count = 1;
    for (int i = 0; i < length; ++i)
        count *= static_cast<std::size_t>(radix);

    std::vector<std::vector<int>> tuples;
    tuples.reserve(count);
    for (std::size_t index = 0; index < count; ++index)
    {
        std::vector<int> alpha(length);
        std::size_t rest = index;
        for (int p = 0; p < length; ++p)
        {
            alpha[p] = static_cast<int>(rest % radix);
            rest /= radix;
        }
        tuples.push_back(std::move(alpha));
    }
    return tuples;
}

GeneralAlignmentMaps general_alignment_maps(const ExtendedChannel &ext)
{
    const int users = ext.users();
    general_exponent_count(users);
    require_single_antenna(ext);
    auto h = [&](int rx, int tx) -> const BlockDiagonal & { return ext.link(rx - 1, tx - 1); };

    GeneralAlignmentMaps maps;
    const BlockDiagonal common = h(1, 3) * h(2, 3).inverse() * h(2, 1);
    for (int j = 2; j <= users; ++j)
        maps.s.emplace(j, h(1, j).inverse() * common);
    for (int i = 2; i <= users; ++i)
        for (int j = 2; j <= users; ++j)
            if (i != j)
                maps.t.emplace(std::pair{i, j}, h(i, 1).inverse() * h(i, j) * maps.s.at(j));
    return maps;
}

PrecoderScheme build_precoders_general(const ExtendedChannel &ext, int order, std::size_t max_slots)
{
    const int users = ext.users();
    const std::size_t length = general_extension_length(users, order, max_slots);
    if (static_cast<std::size_t>(ext.slots()) != length)
        throw ShapeError("K=" + std::to_string(users) + " scheme of order " + std::to_string(order) + " needs L = " +
                         std::to_string(length) + ", extension has L = " + std::to_string(ext.slots()));

    const GeneralAlignmentMaps maps = general_alignment_maps(ext);

    // T^{[2]}_3 telescopes to the identity.
    const arma::cx_vec t23 = maps.t.at({2, 3}).diagonal();
    if (arma::abs(t23 - arma::cx_double(1.0, 0.0)).max() > 1e-9)
        throw Error("internal: T^{[2]}_3 is not the identity");

    const std::vector<std::pair<int, int>> pairs = general_exponent_pairs(users);
    const int n_pairs = static_cast<int>(pairs.size());

    // powers[p][e] = diag(T_p)^e for e = 0..n
    std::vector<arma::cx_mat> powers;
    powers.reserve(pairs.size());
    for (const auto &pair : pairs)
        powers.push_back(power_columns(maps.t.at(pair).diagonal(), order + 1));

    auto build = [&](int radix) {
        const std::vector<std::vector<int>> tuples = exponent_tuples(n_pairs, radix);
        arma::cx_mat cols(length, tuples.size());
        for (std::size_t c = 0; c < tuples.size(); ++c)
        {
            arma::cx_vec col(length, arma::fill::ones);
            for (int p = 0; p < n_pairs; ++p)
                if (tuples[c][p] > 0)
                    col %= powers[p].col(tuples[c][p]);
            cols.col(c) = col;
        }
        return cols;
    };

    const arma::cx_mat b = build(order);
    PrecoderScheme scheme;
    scheme.family = SchemeFamily::siso_general;
    scheme.users = users;
    scheme.antennas = 1;
    scheme.slots = static_cast<int>(length);
    scheme.order = order;
    scheme.precoders.push_back(build(order + 1));
    for (int j = 2; j <= users; ++j)
        scheme.precoders.push_back(maps.s.at(j) * b);
    return scheme;
}

} // namespace ialab
