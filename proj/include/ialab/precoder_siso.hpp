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

#ifndef IALAB_PRECODER_SISO_HPP
#define IALAB_PRECODER_SISO_HPP

#include "ialab/channel_model.hpp"
#include "ialab/scheme.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace ialab
{

// Largest extension length built without an explicit override.
inline constexpr std::size_t kDefaultMaxSlots = 4096;

// T = H12 (H21)^-1 H23 (H32)^-1 H31 (H13)^-1 for a 3-user single-antenna extension.
// Diagonal; throws SingularityError if any involved link has a zero entry.
BlockDiagonal build_T_k3(const ExtendedChannel &ext);

// 3-user scheme on a (2n+1)-slot extension:
//   V1 = A = [w, Tw, ..., T^n w]
//   V3 = (H23)^-1 H21 B,  B = [Tw, ..., T^n w]
//   V2 = (H32)^-1 H31 C,  C = [w, ..., T^(n-1) w]
// with w the all-ones vector. Throws ShapeError unless L = 2n+1.
PrecoderScheme build_precoders_k3(const ExtendedChannel &ext, int order);

// N = (K-1)(K-2) - 1, the number of exponent pairs.
int general_exponent_count(int users);

// Ordered pairs (m, k), m != k, m, k in 2..K, excluding (2, 3), sorted lexicographically (1-based).
std::vector<std::pair<int, int>> general_exponent_pairs(int users);

// (n+1)^N + n^N; throws SizeError when it exceeds max_slots.
std::size_t general_extension_length(int users, int order, std::size_t max_slots = kDefaultMaxSlots);

// All tuples in {0..radix-1}^length, mixed-radix little-endian (first entry varies fastest).
std::vector<std::vector<int>> exponent_tuples(int length, int radix);

// S^{[j]} (j = 2..K) and T^{[i]}_j (i, j = 2..K, i != j), 1-based keys.
struct GeneralAlignmentMaps
{
    std::map<int, BlockDiagonal> s;
    std::map<std::pair<int, int>, BlockDiagonal> t;
};

GeneralAlignmentMaps general_alignment_maps(const ExtendedChannel &ext);

// K-user scheme on an (n+1)^N + n^N slot extension. Columns of B and V1 are
// products of T^{[m]}_k powers applied to w with exponents below n and n+1
// respectively, enumerated by exponent_tuples over general_exponent_pairs.
// V^{[j]} = S^{[j]} B for j >= 2.
PrecoderScheme build_precoders_general(const ExtendedChannel &ext, int order,
                                       std::size_t max_slots = kDefaultMaxSlots);

} // namespace ialab

#endif
