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

#ifndef IALAB_DESIGNED_CHANNELS_HPP
#define IALAB_DESIGNED_CHANNELS_HPP

#include "ialab/channel_model.hpp"
#include "ialab/scheme.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace ialab
{

// Two-slot network with H^{[ij]} = diag(1, -1) for i != j and the identity for
// i == j; every transmitter sends one stream along [1, 1]^T.
struct DesignedSystem
{
    ChannelSet channels;
    ExtendedChannel extended;
    PrecoderScheme scheme;
};

DesignedSystem build_designed_channel(int users);

// Integer propagation delays in symbol durations; delay(tx, rx) is from
// transmitter tx to receiver rx (0-based).
class DelayMatrix
{
public:
    DelayMatrix(int users, std::vector<long> delays);

    // K rows of K comma-separated non-negative integers; row i is transmitter i.
    static DelayMatrix from_csv(std::istream &in);
    static DelayMatrix load_csv(const std::filesystem::path &path);

    int users() const { return users_; }
    long delay(int tx, int rx) const { return delays_[static_cast<std::size_t>(tx) * users_ + rx]; }
    long max_delay() const;

private:
    int users_;
    std::vector<long> delays_;
};

// True iff every direct delay is even and every cross delay is odd.
bool check_delay_parity(const DelayMatrix &delays);

struct DelaySchedule
{
    long slots = 0;
    // Per receiver: slots where its own signal arrives and no interferer does.
    std::vector<std::vector<long>> useful_slots;
    // useful slot count / schedule slots.
    std::vector<double> interference_free_fraction;
};

// All transmitters emit in even slots 0, 2, ..., slots-2; receivers observe every
// arrival. Requires valid parity, even slots and slots >= 2 * max delay.
DelaySchedule simulate_delay_schedule(const DelayMatrix &delays, long slots);

} // namespace ialab

#endif
