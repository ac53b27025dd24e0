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

#ifndef IALAB_SCHEME_HPP
#define IALAB_SCHEME_HPP

#include <armadillo>
#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace ialab
{

enum class SchemeFamily
{
    siso_k3,      // 3 users, single antenna, 2n+1 frequency slots
    siso_general, // K users, single antenna, (n+1)^N + n^N slots
    mimo_even,    // 3 users, M even antennas, constant channel
    mimo_odd,     // 3 users, M odd antennas, two-slot constant extension
    designed,     // chosen channels diag(1,-1) / identity over two slots
    generic       // externally supplied precoders; only rank conditions are checked
};

std::string_view to_string(SchemeFamily family);

// Per-transmitter beamforming matrices over an L-slot extension.
// precoders[i] is (L*M) x d_i; columns are not normalized.
struct PrecoderScheme
{
    SchemeFamily family = SchemeFamily::generic;
    int users = 0;
    int antennas = 1;
    int slots = 1;
    int order = 0; // alignment order n; 0 where it does not apply
    std::vector<arma::cx_mat> precoders;

    std::vector<int> stream_counts() const;
    int total_streams() const;
    double streams_per_channel_use() const;
};

// {family, K, M, n, L, parity, stream_counts, V} with V column-major {re, im} arrays.
nlohmann::json scheme_to_json(const PrecoderScheme &scheme);

// Column-major {rows, cols, data: [{re, im}, ...]}.
nlohmann::json matrix_to_json(const arma::cx_mat &m);

} // namespace ialab

#endif
