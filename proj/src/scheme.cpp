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

#include "ialab/scheme.hpp"

#include <numeric>

namespace ialab
{

std::string_view to_string(SchemeFamily family)
{
    switch (family)
    {
    case SchemeFamily::siso_k3:
        return "siso-k3";
    case SchemeFamily::siso_general:
        return "siso-general";
    case SchemeFamily::mimo_even:
        return "mimo-even";
    case SchemeFamily::mimo_odd:
        return "mimo-odd";
    case SchemeFamily::designed:
        return "designed";
    case SchemeFamily::generic:
        return "generic";
    }
    return "unknown";
}

std::vector<int> PrecoderScheme::stream_counts() const
{
    std::vector<int> d;
    d.reserve(precoders.size());
    for (const arma::cx_mat &v : precoders)
        d.push_back(static_cast<int>(v.n_cols));
    return d;
}

int PrecoderScheme::total_streams() const
{
    const std::vector<int> d = stream_counts();
    return std::accumulate(d.begin(), d.end(), 0);
}

double PrecoderScheme::streams_per_channel_use() const
{
    return static_cast<double>(total_streams()) / slots;
}

nlohmann::json matrix_to_json(const arma::cx_mat &m)
{
    nlohmann::json data = nlohmann::json::array();
    for (arma::uword c = 0; c < m.n_cols; ++c)
        for (arma::uword r = 0; r < m.n_rows; ++r)
            data.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
    return {{"rows", m.n_rows}, {"cols", m.n_cols}, {"data", std::move(data)}};
}

nlohmann::json scheme_to_json(const PrecoderScheme &scheme)
{
    nlohmann::json v = nlohmann::json::array();
    for (const arma::cx_mat &p : scheme.precoders)
        v.push_back(matrix_to_json(p));

    nlohmann::json out = {
        {"family", std::string(to_string(scheme.family))},
        {"K", scheme.users},
        {"M", scheme.antennas},
        {"n", scheme.order},
        {"L", scheme.slots},
        {"stream_counts", scheme.stream_counts()},
        {"V", std::move(v)},
    };
    if (scheme.family == SchemeFamily::mimo_even || scheme.family == SchemeFamily::mimo_odd)
        out["parity"] = scheme.family == SchemeFamily::mimo_even ? "even" : "odd";
    return out;
}

} // namespace ialab
