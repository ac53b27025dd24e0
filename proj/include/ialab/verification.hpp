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

#ifndef IALAB_VERIFICATION_HPP
#define IALAB_VERIFICATION_HPP

#include "ialab/channel_model.hpp"
#include "ialab/numerics.hpp"
#include "ialab/zf_receiver.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>

namespace ialab
{

// S = [w, Tw, ..., T^n w, Dw, DTw, ..., D T^(n-1) w] with D = (H11)^-1 H12,
// the receiver-1 desired+interference matrix after removing H11.
arma::cx_mat build_S_matrix(const ExtendedChannel &ext, int order);

// Rows (1, x, x^2, ...) for every node x.
arma::cx_mat vandermonde_matrix(const arma::cx_vec &nodes);

struct VandermondeCheck
{
    std::complex<double> lu_determinant;
    std::complex<double> product_formula; // prod_{i<j} (x_j - x_i)
    double relative_error = 0.0;
};

VandermondeCheck vandermonde_check(const arma::cx_vec &nodes);

// Builds the even-M scheme on diagonal M x M channels (the M-slot extension of
// single-antenna links) and reports its alignment. Receiver 1 ends up rank
// deficient: every eigenvector of a diagonal E is a standard basis vector.
AlignmentReport demonstrate_diagonal_infeasibility(int antennas, std::uint64_t seed);

// Same scheme on generic dense M x M channels, for contrast.
AlignmentReport dense_channel_control(int antennas, std::uint64_t seed);

// One JSON object per probe: {seed, rows, cols, rank, tolerance, sigma_max, sigma_min}.
nlohmann::json probe_to_json(const RankProbe &probe, std::uint64_t seed);

} // namespace ialab

#endif
