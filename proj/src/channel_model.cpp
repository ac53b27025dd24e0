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

#include "ialab/channel_model.hpp"

#include "ialab/errors.hpp"
#include "ialab/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace ialab
{

namespace
{

// Magnitudes produced by std::polar may differ from the requested value in the last ulp.
constexpr double kMagnitudeSlack = 1e-12;

void validate_dims(int users, int antennas, int slots)
{
    if (users < 2)
        throw ParameterError("user count K must be >= 2, got " + std::to_string(users));
    if (antennas < 1)
        throw ParameterError("antenna count M must be >= 1, got " + std::to_string(antennas));
    if (slots < 1)
        throw ParameterError("slot count F must be >= 1, got " + std::to_string(slots));
}

void validate_bounds(double a_min, double a_max)
{
    if (!(a_min > 0.0) || !std::isfinite(a_max) || a_min > a_max)
        throw ParameterError("magnitude bounds must satisfy 0 < a_min <= a_max < inf");
}

std::string format_double(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

} // namespace

// ---------------------------------------------------------------------------
// ChannelSet

ChannelSet::ChannelSet(int users, int antennas, int slots, double a_min, double a_max,
                       std::uint64_t seed, std::vector<arma::cx_mat> coeffs)
    : users_(users), antennas_(antennas), slots_(slots), a_min_(a_min), a_max_(a_max),
      seed_(seed), coeffs_(std::move(coeffs))
{
    validate_dims(users, antennas, slots);
    validate_bounds(a_min, a_max);

    const std::size_t expected = static_cast<std::size_t>(users) * users * slots;
    if (coeffs_.size() != expected)
        throw ShapeError("expected " + std::to_string(expected) + " channel matrices, got " +
                         std::to_string(coeffs_.size()));

    const double lo = a_min * (1.0 - kMagnitudeSlack);
    const double hi = a_max * (1.0 + kMagnitudeSlack);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
    {
        const arma::cx_mat &h = coeffs_[i];
        if (h.n_rows != static_cast<arma::uword>(antennas) || h.n_cols != static_cast<arma::uword>(antennas))
            throw ShapeError("channel matrix " + std::to_string(i) + " is not M x M");
        for (const arma::cx_double &c : h)
        {
            const double mag = std::abs(c);
            if (!std::isfinite(mag) || mag < lo || mag > hi)
                throw ParameterError("channel matrix " + std::to_string(i) + " has coefficient magnitude " +
                                     format_double(mag) + " outside [a_min, a_max]");
        }
    }
}

std::size_t ChannelSet::index(int rx, int tx, int slot) const
{
    if (rx < 0 || rx >= users_ || tx < 0 || tx >= users_ || slot < 0 || slot >= slots_)
        throw ShapeError("channel index out of range");
    return (static_cast<std::size_t>(rx) * users_ + tx) * slots_ + slot;
}

const arma::cx_mat &ChannelSet::link(int rx, int tx, int slot) const
{
    return coeffs_[index(rx, tx, slot)];
}

bool ChannelSet::operator==(const ChannelSet &other) const
{
    if (users_ != other.users_ || antennas_ != other.antennas_ || slots_ != other.slots_ ||
        a_min_ != other.a_min_ || a_max_ != other.a_max_ || seed_ != other.seed_)
        return false;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
    {
        const arma::cx_mat &a = coeffs_[i];
        const arma::cx_mat &b = other.coeffs_[i];
        for (arma::uword e = 0; e < a.n_elem; ++e)
            if (a[e].real() != b[e].real() || a[e].imag() != b[e].imag())
                return false;
    }
    return true;
}

ChannelSet generate_channels(const ChannelParams &p)
{
    validate_dims(p.users, p.antennas, p.slots);
    validate_bounds(p.a_min, p.a_max);

    const double span = p.a_max - p.a_min;
    std::vector<arma::cx_mat> coeffs;
    coeffs.reserve(static_cast<std::size_t>(p.users) * p.users * p.slots);

    for (int k = 0; k < p.users; ++k)
        for (int j = 0; j < p.users; ++j)
            for (int f = 0; f < p.slots; ++f)
            {
                // One independent stream per (k, j, f).
                std::mt19937_64 engine(derive_seed(p.seed, {std::uint64_t(k), std::uint64_t(j), std::uint64_t(f)}));
                arma::cx_mat h(p.antennas, p.antennas);
                for (int r = 0; r < p.antennas; ++r)
                    for (int c = 0; c < p.antennas; ++c)
                    {
                        const double mag = p.a_min + span * unit_uniform(engine);
                        const double phase = 2.0 * std::numbers::pi * unit_uniform(engine);
                        h(r, c) = std::polar(mag, phase);
                    }
                coeffs.push_back(std::move(h));
            }

    return ChannelSet(p.users, p.antennas, p.slots, p.a_min, p.a_max, p.seed, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// BlockDiagonal

BlockDiagonal::BlockDiagonal(arma::cx_cube blocks) : blocks_(std::move(blocks))
{
    if (blocks_.n_rows != blocks_.n_cols)
        throw ShapeError("block-diagonal blocks must be square");
}

BlockDiagonal BlockDiagonal::identity(int block_size, int slots)
{
    arma::cx_cube blocks(block_size, block_size, slots);
    for (int f = 0; f < slots; ++f)
        blocks.slice(f).eye();
    return BlockDiagonal(std::move(blocks));
}

BlockDiagonal BlockDiagonal::from_diagonal(const arma::cx_vec &diagonal)
{
    arma::cx_cube blocks(1, 1, diagonal.n_elem);
    for (arma::uword f = 0; f < diagonal.n_elem; ++f)
        blocks(0, 0, f) = diagonal[f];
    return BlockDiagonal(std::move(blocks));
}

arma::cx_vec BlockDiagonal::diagonal() const
{
    const int m = block_size();
    arma::cx_vec d(dim());
    for (int f = 0; f < slots(); ++f)
        for (int i = 0; i < m; ++i)
            d[f * m + i] = blocks_(i, i, f);
    return d;
}

arma::cx_mat BlockDiagonal::dense() const
{
    const int m = block_size();
    arma::cx_mat out(dim(), dim(), arma::fill::zeros);
    for (int f = 0; f < slots(); ++f)
        out.submat(f * m, f * m, f * m + m - 1, f * m + m - 1) = blocks_.slice(f);
    return out;
}

BlockDiagonal BlockDiagonal::inverse() const
{
    arma::cx_cube out(arma::size(blocks_));
    for (int f = 0; f < slots(); ++f)
    {
        const arma::cx_mat &b = blocks_.slice(f);
        if (block_size() == 1)
        {
            if (b(0, 0) == arma::cx_double(0.0, 0.0))
                throw SingularityError("zero diagonal entry in slot " + std::to_string(f));
            out(0, 0, f) = 1.0 / b(0, 0);
            continue;
        }
        if (arma::rcond(b) < 1e-14)
            throw SingularityError("singular channel block in slot " + std::to_string(f));
        out.slice(f) = arma::inv(b);
    }
    return BlockDiagonal(std::move(out));
}

BlockDiagonal BlockDiagonal::power(int exponent) const
{
    if (exponent < 0)
        return inverse().power(-exponent);
    BlockDiagonal result = identity(block_size(), slots());
    for (int e = 0; e < exponent; ++e)
        result = result * *this;
    return result;
}

BlockDiagonal BlockDiagonal::operator*(const BlockDiagonal &rhs) const
{
    if (block_size() != rhs.block_size() || slots() != rhs.slots())
        throw ShapeError("block-diagonal product with mismatched shapes");
    if (block_size() == 1)
        return BlockDiagonal(arma::cx_cube(blocks_ % rhs.blocks_));
    arma::cx_cube out(arma::size(blocks_));
    for (int f = 0; f < slots(); ++f)
        out.slice(f) = blocks_.slice(f) * rhs.blocks_.slice(f);
    return BlockDiagonal(std::move(out));
}

BlockDiagonal BlockDiagonal::operator*(arma::cx_double scale) const
{
    return BlockDiagonal(arma::cx_cube(blocks_ * scale));
}

arma::cx_mat BlockDiagonal::operator*(const arma::cx_mat &rhs) const
{
    if (rhs.n_rows != static_cast<arma::uword>(dim()))
        throw ShapeError("block-diagonal apply: expected " + std::to_string(dim()) + " rows, got " +
                         std::to_string(rhs.n_rows));
    const int m = block_size();
    if (m == 1)
    {
        const arma::cx_vec d(const_cast<arma::cx_double *>(blocks_.memptr()), blocks_.n_elem, false, true);
        return arma::cx_mat(rhs.each_col() % d);
    }
    arma::cx_mat out(arma::size(rhs));
    for (int f = 0; f < slots(); ++f)
        out.rows(f * m, f * m + m - 1) = blocks_.slice(f) * rhs.rows(f * m, f * m + m - 1);
    return out;
}

// ---------------------------------------------------------------------------
// ExtendedChannel

ExtendedChannel::ExtendedChannel(int users, std::vector<BlockDiagonal> links) : users_(users), links_(std::move(links))
{
    if (users < 2)
        throw ParameterError("extended channel needs K >= 2");
    if (links_.size() != static_cast<std::size_t>(users) * users)
        throw ShapeError("extended channel needs K*K links");
    for (const BlockDiagonal &b : links_)
        if (b.block_size() != links_.front().block_size() || b.slots() != links_.front().slots())
            throw ShapeError("extended channel links differ in shape");
}

const BlockDiagonal &ExtendedChannel::link(int rx, int tx) const
{
    if (rx < 0 || rx >= users_ || tx < 0 || tx >= users_)
        throw ShapeError("link index out of range");
    return links_[static_cast<std::size_t>(rx) * users_ + tx];
}

ExtendedChannel extend_channel(const ChannelSet &ch, int slots, ExtensionMode mode)
{
    if (slots < 1)
        throw ParameterError("extension length must be >= 1");
    if (mode == ExtensionMode::frequency && slots > ch.slots())
        throw InsufficientSlotsError("frequency extension of length " + std::to_string(slots) + " needs " +
                                     std::to_string(slots) + " slots, channel set has " +
                                     std::to_string(ch.slots()));

    const int m = ch.antennas();
    std::vector<BlockDiagonal> links;
    links.reserve(static_cast<std::size_t>(ch.users()) * ch.users());
    for (int k = 0; k < ch.users(); ++k)
        for (int j = 0; j < ch.users(); ++j)
        {
            arma::cx_cube blocks(m, m, slots);
            for (int f = 0; f < slots; ++f)
                blocks.slice(f) = ch.link(k, j, mode == ExtensionMode::frequency ? f : 0);
            links.emplace_back(std::move(blocks));
        }
    return ExtendedChannel(ch.users(), std::move(links));
}

// ---------------------------------------------------------------------------
// Persistence

void write_channels(const ChannelSet &ch, std::ostream &out)
{
    out << "{\n";
    out << "  \"schema_version\": 1,\n";
    out << "  \"K\": " << ch.users() << ",\n";
    out << "  \"M\": " << ch.antennas() << ",\n";
    out << "  \"F\": " << ch.slots() << ",\n";
    out << "  \"seed\": " << ch.seed() << ",\n";
    out << "  \"a_min\": " << format_double(ch.a_min()) << ",\n";
    out << "  \"a_max\": " << format_double(ch.a_max()) << ",\n";
    out << "  \"coeffs\": [";
    bool first = true;
    for (const arma::cx_mat &h : ch.coefficients())
        for (int r = 0; r < ch.antennas(); ++r)
            for (int c = 0; c < ch.antennas(); ++c)
            {
                out << (first ? "\n" : ",\n");
                out << "    {\"re\": " << format_double(h(r, c).real()) << ", \"im\": " << format_double(h(r, c).imag())
                    << "}";
                first = false;
            }
    out << "\n  ]\n}\n";
}

void save_channels(const ChannelSet &ch, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    write_channels(ch, out);
    if (!out)
        throw Error("failed writing " + path.string());
}

namespace
{

using nlohmann::json;

const json &require_field(const json &doc, const char *name)
{
    auto it = doc.find(name);
    if (it == doc.end())
        throw ParseError(std::string("channel file: missing field '") + name + "'");
    return *it;
}

long long require_integer(const json &doc, const char *name)
{
    const json &v = require_field(doc, name);
    if (!v.is_number_integer())
        throw ParseError(std::string("channel file: field '") + name + "' must be an integer");
    return v.get<long long>();
}

double require_number(const json &v, const std::string &field)
{
    if (!v.is_number())
        throw ParseError("channel file: field '" + field + "' must be a number");
    return v.get<double>();
}

} // namespace

ChannelSet read_channels(std::istream &in)
{
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < byte; ++i)
        {
            if (text[i] == '\n')
            {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
        throw ParseError("channel file: syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what());
    }
    if (!doc.is_object())
        throw ParseError("channel file: top level must be an object");

    const long long version = require_integer(doc, "schema_version");
    if (version != 1)
        throw ParseError("channel file: unsupported schema_version " + std::to_string(version));

    const long long users = require_integer(doc, "K");
    const long long antennas = require_integer(doc, "M");
    const long long slots = require_integer(doc, "F");
    if (users < 2)
        throw ParseError("channel file: field 'K' must be >= 2, got " + std::to_string(users));
    if (antennas < 1)
        throw ParseError("channel file: field 'M' must be >= 1, got " + std::to_string(antennas));
    if (slots < 1)
        throw ParseError("channel file: field 'F' must be >= 1, got " + std::to_string(slots));

    const json &seed_field = require_field(doc, "seed");
    if (!seed_field.is_number_unsigned() && !(seed_field.is_number_integer() && seed_field.get<long long>() >= 0))
        throw ParseError("channel file: field 'seed' must be a non-negative integer");
    const std::uint64_t seed = seed_field.get<std::uint64_t>();

    const double a_min = require_number(require_field(doc, "a_min"), "a_min");
    const double a_max = require_number(require_field(doc, "a_max"), "a_max");
    if (!(a_min > 0.0) || a_min > a_max)
        throw ParseError("channel file: fields 'a_min'/'a_max' must satisfy 0 < a_min <= a_max");

    const json &flat = require_field(doc, "coeffs");
    const std::size_t per_matrix = static_cast<std::size_t>(antennas * antennas);
    const std::size_t count = static_cast<std::size_t>(users * users * slots);
    if (!flat.is_array() || flat.size() != count * per_matrix)
        throw ParseError("channel file: field 'coeffs' must be an array of " + std::to_string(count * per_matrix) +
                         " {re, im} entries");

    std::vector<arma::cx_mat> coeffs(count, arma::cx_mat(antennas, antennas));
    for (std::size_t i = 0; i < flat.size(); ++i)
    {
        const std::string field = "coeffs[" + std::to_string(i) + "]";
        const json &entry = flat[i];
        if (!entry.is_object() || !entry.contains("re") || !entry.contains("im"))
            throw ParseError("channel file: field '" + field + "' must be an object {re, im}");
        const arma::cx_double value(require_number(entry["re"], field + ".re"), require_number(entry["im"], field + ".im"));
        const double mag = std::abs(value);
        if (!(mag > 0.0))
            throw ParseError("channel file: field '" + field + "' has zero magnitude");
        if (mag < a_min * (1.0 - kMagnitudeSlack) || mag > a_max * (1.0 + kMagnitudeSlack))
            throw ParseError("channel file: field '" + field + "' magnitude " + format_double(mag) +
                             " outside [a_min, a_max]");
        const std::size_t matrix = i / per_matrix;
        const std::size_t within = i % per_matrix;
        coeffs[matrix](within / antennas, within % antennas) = value;
    }

    return ChannelSet(static_cast<int>(users), static_cast<int>(antennas), static_cast<int>(slots), a_min, a_max,
                      seed, std::move(coeffs));
}

ChannelSet load_channels(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open channel file " + path.string());
    return read_channels(in);
}

} // namespace ialab
