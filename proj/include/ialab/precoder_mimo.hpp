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

#ifndef IALAB_PRECODER_MIMO_HPP
#define IALAB_PRECODER_MIMO_HPP

#include "ialab/channel_model.hpp"
#include "ialab/scheme.hpp"

namespace ialab
{

// Eigenbasis condition number above which a basis is declared degenerate.
inline constexpr double kEigenbasisConditionLimit = 1e8;

// Unit-norm eigenvectors sorted by eigenvalue magnitude descending, ties by phase ascending.
struct Eigenbasis
{
    arma::cx_vec values;
    arma::cx_mat vectors;
    double condition = 0.0;
};

// Throws DegeneracyError for repeated eigenvalues or an ill-conditioned basis.
Eigenbasis sorted_eigenbasis(const arma::cx_mat &e);

// E = (H31)^-1 H32 (H12)^-1 H13 (H23)^-1 H21 on the M x M constant channel.
arma::cx_mat mimo_alignment_operator(const ExtendedChannel &ext);

// Even M on a constant channel (L = 1): V1 = first M/2 eigenvectors of E,
// V2 = (H32)^-1 H31 V1, V3 = (H23)^-1 H21 V1.
PrecoderScheme build_mimo_even(const ExtendedChannel &ext);
PrecoderScheme build_mimo_even(const ChannelSet &channels);

// Odd M on the two-slot constant extension: V1 is 2M x M with e_j in the top
// block for odd j, the bottom block for even j, and e_M in both; V2 and V3
// follow the same maps as the even case applied blockwise.
PrecoderScheme build_mimo_odd(const ExtendedChannel &ext);
PrecoderScheme build_mimo_odd(const ChannelSet &channels);

// Constant-time extension matching the parity of M (L = 1 even, L = 2 odd).
ExtendedChannel mimo_extension(const ChannelSet &channels);

// Dispatches on the parity of M.
PrecoderScheme build_mimo(const ChannelSet &channels);

} // namespace ialab

#endif
