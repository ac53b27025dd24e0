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

#ifndef IALAB_EVALUATION_HPP
#define IALAB_EVALUATION_HPP

#include "ialab/channel_model.hpp"
#include "ialab/precoder_siso.hpp"
#include "ialab/scheme.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ialab
{

// ---------------------------------------------------------------------------
// Monte-Carlo sweeps

struct TrialSystem
{
    PrecoderScheme scheme;
    ExtendedChannel channel;
};

// Builds the scheme for one trial from its derived seed.
using SchemeBuilder = std::function<TrialSystem(std::uint64_t seed)>;

enum class SchemeKind
{
    siso_k3,
    siso_general,
    mimo,
    designed
};

struct SchemeConfig
{
    SchemeKind kind = SchemeKind::siso_k3;
    int users = 3;
    int antennas = 1;
    int order = 1;
    double a_min = 0.5;
    double a_max = 2.0;
    std::size_t max_slots = kDefaultMaxSlots;
};

SchemeBuilder make_scheme_builder(const SchemeConfig &config);

// Streams per channel use the construction achieves.
double theoretical_dof(const SchemeConfig &config);

struct RateRow
{
    double snr_db = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::vector<double> rates; // empty unless status == "ok"
    double sum_rate = 0.0;     // NaN unless status == "ok"
    std::string status;        // ok | alignment_failed | degenerate | singular | error
};

// Rows ordered by SNR, then trial.
struct RateTable
{
    std::vector<double> snr_db;
    int trials = 0;
    std::vector<RateRow> rows;

    std::size_t failures() const;
};

// Worker count from IA_LAB_THREADS, else hardware concurrency.
int default_thread_count();

// Trial t uses seed derive_seed(root_seed, {t}) at every SNR, so slopes compare one
// channel realization across the grid. Failed trials are kept as status rows.
RateTable snr_sweep(const SchemeBuilder &builder, const std::vector<double> &snr_db, int trials,
                    std::uint64_t root_seed, int threads = 0);

// CSV header: snr_db,seed,user,rate_bits,sum_rate_bits,status
void write_rate_csv(const RateTable &table, std::ostream &out);

// ---------------------------------------------------------------------------
// DoF and gap estimation

// SNR points below this are ignored by the slope fit.
inline constexpr double kMinSlopeSnrDb = 40.0;

struct DofEstimate
{
    double slope = 0.0;
    double half_width = 0.0; // 95% normal half-width from per-trial slopes
    std::size_t points = 0;
    std::size_t trials = 0;
};

// Least-squares slope of mean sum rate against log2(rho).
DofEstimate estimate_dof(const RateTable &table);
DofEstimate estimate_dof(std::span<const double> snr_db, std::span<const double> sum_rate);

struct GapProbe
{
    std::vector<double> snr_db;
    std::vector<double> gap; // C(rho) - D log2(1 + rho)
    double oscillation = 0.0; // max - min
};

GapProbe estimate_o1_gap(const RateTable &table, double dof);
GapProbe estimate_o1_gap(std::span<const double> snr_db, std::span<const double> capacity, double dof);

// ---------------------------------------------------------------------------
// 3-user DoF region

struct DofPoint
{
    std::array<double, 3> d{};
};

// Convex weights over corners J=(1,0,0), L=(0,1,0), K=(0,0,1), N=(1/2,1/2,1/2), O=(0,0,0).
struct DecompositionWeights
{
    std::array<double, 5> alpha{};

    DofPoint reconstruct() const;
    double total() const;
};

bool in_dof_region(const DofPoint &p);

// Throws MembershipError outside the region.
DecompositionWeights decompose_dof_point(const DofPoint &p);

// ---------------------------------------------------------------------------
// Cognitive message sharing

enum class CognitiveScenario
{
    one_message_shared = 1,
    two_messages_shared = 2,
    cognitive_receiver = 3,
    cognitive_transmitter = 4
};

// Throws ParameterError outside 1..4.
CognitiveScenario cognitive_scenario(int case_number);

double cognitive_dof(CognitiveScenario scenario);

} // namespace ialab

#endif
