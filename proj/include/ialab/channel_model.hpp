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

#ifndef IALAB_CHANNEL_MODEL_HPP
#define IALAB_CHANNEL_MODEL_HPP

#include <armadillo>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace ialab
{

// Generation parameters. Magnitudes are uniform in [a_min, a_max], phases uniform in [0, 2pi).
struct ChannelParams
{
    int users = 3;
    int antennas = 1;
    int slots = 1;
    double a_min = 0.5;
    double a_max = 2.0;
    std::uint64_t seed = 0;
};

// All per-slot M x M channel matrices H^{[kj]}(f) of a K-user network.
// Indices are 0-based: rx k, tx j, slot f. Immutable after construction.
class ChannelSet
{
public:
    // Validates K >= 2, M >= 1, F >= 1, 0 < a_min <= a_max and that every
    // coefficient magnitude lies in [a_min, a_max]. Coefficients are ordered
    // (k, j, f) with k slowest.
    ChannelSet(int users, int antennas, int slots, double a_min, double a_max,
               std::uint64_t seed, std::vector<arma::cx_mat> coeffs);

    int users() const { return users_; }
    int antennas() const { return antennas_; }
    int slots() const { return slots_; }
    double a_min() const { return a_min_; }
    double a_max() const { return a_max_; }
    std::uint64_t seed() const { return seed_; }

    const arma::cx_mat &link(int rx, int tx, int slot) const;
    const std::vector<arma::cx_mat> &coefficients() const { return coeffs_; }

    // Bit-exact comparison of all fields.
    bool operator==(const ChannelSet &other) const;

private:
    std::size_t index(int rx, int tx, int slot) const;

    int users_;
    int antennas_;
    int slots_;
    double a_min_;
    double a_max_;
    std::uint64_t seed_;
    std::vector<arma::cx_mat> coeffs_;
};

ChannelSet generate_channels(const ChannelParams &params);

// Block-diagonal (L*M) x (L*M) matrix stored as L blocks of size M x M.
// With M = 1 this is a plain diagonal matrix and all arithmetic is O(L).
class BlockDiagonal
{
public:
    BlockDiagonal() = default;
    explicit BlockDiagonal(arma::cx_cube blocks);

    static BlockDiagonal identity(int block_size, int slots);
    static BlockDiagonal from_diagonal(const arma::cx_vec &diagonal);

    int block_size() const { return static_cast<int>(blocks_.n_rows); }
    int slots() const { return static_cast<int>(blocks_.n_slices); }
    int dim() const { return block_size() * slots(); }

    const arma::cx_cube &blocks() const { return blocks_; }
    arma::cx_mat block(int slot) const { return blocks_.slice(slot); }

    // Diagonal of the dense matrix.
    arma::cx_vec diagonal() const;
    arma::cx_mat dense() const;

    // Throws SingularityError when a block is not invertible.
    BlockDiagonal inverse() const;
    BlockDiagonal power(int exponent) const;

    BlockDiagonal operator*(const BlockDiagonal &rhs) const;
    BlockDiagonal operator*(arma::cx_double scale) const;
    arma::cx_mat operator*(const arma::cx_mat &rhs) const;

private:
    arma::cx_cube blocks_;
};

enum class ExtensionMode
{
    frequency,    // block f is slot f of the source set
    constant_time // every block repeats slot 1
};

// Symbol-extended channel Hbar^{[kj]} for every receiver/transmitter pair.
class ExtendedChannel
{
public:
    ExtendedChannel() = default;
    // links in (rx, tx) order with rx slowest; all must share block size and slot count.
    ExtendedChannel(int users, std::vector<BlockDiagonal> links);

    int users() const { return users_; }
    int antennas() const { return links_.empty() ? 0 : links_.front().block_size(); }
    int slots() const { return links_.empty() ? 0 : links_.front().slots(); }
    int dim() const { return antennas() * slots(); }

    const BlockDiagonal &link(int rx, int tx) const;
    const std::vector<BlockDiagonal> &links() const { return links_; }

private:
    int users_ = 0;
    std::vector<BlockDiagonal> links_;
};

ExtendedChannel extend_channel(const ChannelSet &channels, int slots, ExtensionMode mode);

// JSON channel file: {schema_version, K, M, F, seed, a_min, a_max, coeffs}
// with coeffs a flat (k, j, f, row, col) array of {re, im}, 17 significant digits.
void save_channels(const ChannelSet &channels, const std::filesystem::path &path);
void write_channels(const ChannelSet &channels, std::ostream &out);
ChannelSet load_channels(const std::filesystem::path &path);
ChannelSet read_channels(std::istream &in);

} // namespace ialab

#endif
