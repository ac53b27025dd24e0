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

#include "ialab/designed_channels.hpp"

#include "ialab/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace ialab
{

DesignedSystem build_designed_channel(int users)
{
    if (users < 2)
        throw ParameterError("designed channel requires K >= 2");

    std::vector<arma::cx_mat> coeffs;
    coeffs.reserve(static_cast<std::size_t>(users) * users * 2);
    for (int k = 0; k < users; ++k)
        for (int j = 0; j < users; ++j)
        {
            coeffs.push_back(arma::cx_mat(1, 1, arma::fill::value(arma::cx_double(1.0, 0.0))));
            coeffs.push_back(arma::cx_mat(1, 1, arma::fill::value(arma::cx_double(k == j ? 1.0 : -1.0, 0.0))));
        }
    ChannelSet channels(users, 1, 2, 1.0, 1.0, 0, std::move(coeffs));
    ExtendedChannel extended = extend_channel(channels, 2, ExtensionMode::frequency);

    PrecoderScheme scheme;
    scheme.family = SchemeFamily::designed;
    scheme.users = users;
    scheme.antennas = 1;
    scheme.slots = 2;
    scheme.precoders.assign(users, arma::cx_mat(2, 1, arma::fill::ones));

    return DesignedSystem{std::move(channels), std::move(extended), std::move(scheme)};
}

// ---------------------------------------------------------------------------
// Delay alignment

DelayMatrix::DelayMatrix(int users, std::vector<long> delays) : users_(users), delays_(std::move(delays))
{
    if (users < 2)
        throw ParameterError("delay matrix needs K >= 2");
    if (delays_.size() != static_cast<std::size_t>(users) * users)
        throw ShapeError("delay matrix must be K x K");
    for (long d : delays_)
        if (d < 0)
            throw ParameterError("delays must be non-negative");
}

long DelayMatrix::max_delay() const
{
    return *std::max_element(delays_.begin(), delays_.end());
}

DelayMatrix DelayMatrix::from_csv(std::istream &in)
{
    std::vector<std::vector<long>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::vector<long> row;
        std::stringstream cells(line);
        std::string cell;
        int column = 0;
        while (std::getline(cells, cell, ','))
        {
            ++column;
            std::size_t used = 0;
            long value = 0;
            try
            {
                value = std::stol(cell, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || cell.find_first_not_of(" \t", used) != std::string::npos)
                throw ParseError("delay matrix: line " + std::to_string(line_no) + ", column " +
                                 std::to_string(column) + ": '" + cell + "' is not an integer");
            if (value < 0)
                throw ParseError("delay matrix: line " + std::to_string(line_no) + ", column " +
                                 std::to_string(column) + ": negative delay");
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    const std::size_t k = rows.size();
    if (k < 2)
        throw ParseError("delay matrix: need at least 2 rows");
    std::vector<long> flat;
    for (std::size_t r = 0; r < k; ++r)
    {
        if (rows[r].size() != k)
            throw ParseError("delay matrix: row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                             " entries, expected " + std::to_string(k));
        flat.insert(flat.end(), rows[r].begin(), rows[r].end());
    }
    return DelayMatrix(static_cast<int>(k), std::move(flat));
}

DelayMatrix DelayMatrix::load_csv(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open delay matrix " + path.string());
    return from_csv(in);
}

bool check_delay_parity(const DelayMatrix &d)
{
    for (int i = 0; i < d.users(); ++i)
        for (int j = 0; j < d.users(); ++j)
        {
            const bool even = d.delay(i, j) % 2 == 0;
            if ((i == j) != even)
                return false;
        }
    return true;
}

DelaySchedule simulate_delay_schedule(const DelayMatrix &d, long slots)
{
    if (!check_delay_parity(d))
        throw PreconditionError("delay matrix violates the parity condition (direct even, cross odd)");
    if (slots < 2 || slots % 2 != 0)
        throw PreconditionError("schedule length must be even and >= 2");
    if (slots < 2 * d.max_delay())
        throw PreconditionError("schedule length must be at least twice the largest delay");

    const int users = d.users();
    DelaySchedule out;
    out.slots = slots;
    out.useful_slots.resize(users);
    out.interference_free_fraction.resize(users);

    for (int rx = 0; rx < users; ++rx)
    {
        // arrival slot -> {own arrivals, interfering arrivals}
        std::map<long, std::pair<int, int>> arrivals;
        for (int tx = 0; tx < users; ++tx)
            for (long t = 0; t < slots; t += 2)
            {
                auto &slot = arrivals[t + d.delay(tx, rx)];
                (tx == rx ? slot.first : slot.second) += 1;
            }
        for (const auto &[slot, count] : arrivals)
            if (count.first > 0 && count.second == 0)
                out.useful_slots[rx].push_back(slot);
        out.interference_free_fraction[rx] = static_cast<double>(out.useful_slots[rx].size()) / slots;
    }
    return out;
}

} // namespace ialab
