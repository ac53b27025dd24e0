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

#include "ialab/evaluation.hpp"

#include "ialab/designed_channels.hpp"
#include "ialab/errors.hpp"
#include "ialab/precoder_mimo.hpp"
#include "ialab/rng.hpp"
#include "ialab/zf_receiver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

namespace ialab
{

namespace
{

double log2_snr(double snr_db)
{
    return snr_db * std::log2(10.0) / 10.0;
}

double ls_slope(const std::vector<double> &x, const std::vector<double> &y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

void check_grid(std::span<const double> snr_db)
{
    if (snr_db.empty())
        throw ParameterError("SNR grid is empty");
    for (std::size_t i = 1; i < snr_db.size(); ++i)
        if (!(snr_db[i] > snr_db[i - 1]))
            throw ParameterError("SNR grid must be strictly increasing");
}

// Trials that succeeded at every SNR, and the per-SNR row index base.
std::vector<int> usable_trials(const RateTable &table)
{
    std::vector<int> out;
    for (int t = 0; t < table.trials; ++t)
    {
        bool ok = true;
        for (std::size_t s = 0; s < table.snr_db.size(); ++s)
            ok = ok && table.rows[s * table.trials + t].status == "ok";
        if (ok)
            out.push_back(t);
    }
    return out;
}

ExtendedChannel random_extension(int users, int antennas, int slots, const SchemeConfig &c, std::uint64_t seed,
                                 ExtensionMode mode)
{
    ChannelParams p;
    p.users = users;
    p.antennas = antennas;
    p.slots = slots;
    p.a_min = c.a_min;
    p.a_max = c.a_max;
    p.seed = seed;
    return extend_channel(generate_channels(p), slots, mode);
}

struct TrialOutcome
{
    std::string status;
    std::vector<RateResult> results;
};

TrialOutcome run_trial(const SchemeBuilder &builder, const std::vector<double> &snr_db, std::uint64_t seed)
{
    TrialOutcome out;
    try
    {
        const TrialSystem sys = builder(seed);
        const ZeroForcingReceiver rx(sys.scheme, sys.channel);
        for (double db : snr_db)
            out.results.push_back(rx.rates(std::pow(10.0, db / 10.0)));
        out.status = "ok";
    }
    catch (const AlignmentError &)
    {
        out.status = "alignment_failed";
    }
    catch (const DegeneracyError &)
    {
        out.status = "degenerate";
    }
    catch (const SingularityError &)
    {
        out.status = "singular";
    }
    return out;
}

} // namespace

SchemeBuilder make_scheme_builder(const SchemeConfig &config)
{
    const SchemeConfig c = config;
    if (c.order < 1)
        throw ParameterError("n must be >= 1");
    if (c.antennas < 1)
        throw ParameterError("M must be >= 1");
    if (!(c.a_min > 0.0) || c.a_max < c.a_min)
        throw ParameterError("magnitude bounds must satisfy 0 < a_min <= a_max");

    switch (c.kind)
    {
    case SchemeKind::siso_k3:
        if (c.users != 3 || c.antennas != 1)
            throw ParameterError("siso-k3 requires K = 3 and M = 1");
        return [c](std::uint64_t seed)
        {
            const int slots = 2 * c.order + 1;
            ExtendedChannel ext = random_extension(3, 1, slots, c, seed, ExtensionMode::frequency);
            PrecoderScheme scheme = build_precoders_k3(ext, c.order);
            return TrialSystem{std::move(scheme), std::move(ext)};
        };
    case SchemeKind::siso_general:
    {
        if (c.users < 3 || c.antennas != 1)
            throw ParameterError("siso-general requires K >= 3 and M = 1");
        const int slots = static_cast<int>(general_extension_length(c.users, c.order, c.max_slots));
        return [c, slots](std::uint64_t seed)
        {
            ExtendedChannel ext = random_extension(c.users, 1, slots, c, seed, ExtensionMode::frequency);
            PrecoderScheme scheme = build_precoders_general(ext, c.order, c.max_slots);
            return TrialSystem{std::move(scheme), std::move(ext)};
        };
    }
    case SchemeKind::mimo:
        if (c.users != 3 || c.antennas < 2)
            throw ParameterError("mimo requires K = 3 and M >= 2");
        return [c](std::uint64_t seed)
        {
            ChannelParams p;
            p.users = 3;
            p.antennas = c.antennas;
            p.slots = 1;
            p.a_min = c.a_min;
            p.a_max = c.a_max;
            p.seed = seed;
            const ChannelSet ch = generate_channels(p);
            ExtendedChannel ext = mimo_extension(ch);
            PrecoderScheme scheme = build_mimo(ch);
            return TrialSystem{std::move(scheme), std::move(ext)};
        };
    case SchemeKind::designed:
        if (c.users < 2 || c.antennas != 1)
            throw ParameterError("designed requires K >= 2 and M = 1");
        return [c](std::uint64_t)
        {
            DesignedSystem d = build_designed_channel(c.users);
            return TrialSystem{std::move(d.scheme), std::move(d.extended)};
        };
    }
    throw ParameterError("unknown scheme kind");
}

double theoretical_dof(const SchemeConfig &c)
{
    switch (c.kind)
    {
    case SchemeKind::siso_k3:
        return (3.0 * c.order + 1.0) / (2.0 * c.order + 1.0);
    case SchemeKind::siso_general:
    {
        const int big_n = general_exponent_count(c.users);
        const double a = std::pow(c.order + 1.0, big_n);
        const double b = std::pow(static_cast<double>(c.order), big_n);
        return (a + (c.users - 1) * b) / (a + b);
    }
    case SchemeKind::mimo:
        return 1.5 * c.antennas;
    case SchemeKind::designed:
        return 0.5 * c.users;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::size_t RateTable::failures() const
{
    std::size_t n = 0;
    for (const auto &r : rows)
        n += r.status != "ok";
    return n;
}

int default_thread_count()
{
    if (const char *env = std::getenv("IA_LAB_THREADS"))
    {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            return static_cast<int>(v);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

RateTable snr_sweep(const SchemeBuilder &builder, const std::vector<double> &snr_db, int trials,
                    std::uint64_t root_seed, int threads)
{
    check_grid(snr_db);
    if (trials < 1)
        throw ParameterError("trials must be >= 1");
    if (threads <= 0)
        threads = default_thread_count();
    threads = std::min(threads, trials);

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t)
        seeds[t] = derive_seed(root_seed, {static_cast<std::uint64_t>(t)});

    std::atomic<int> next{0};
    auto worker = [&]
    {
        for (int t = next++; t < trials; t = next++)
            outcomes[t] = run_trial(builder, snr_db, seeds[t]);
    };
    if (threads == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }

    RateTable table;
    table.snr_db = snr_db;
    table.trials = trials;
    for (std::size_t s = 0; s < snr_db.size(); ++s)
        for (int t = 0; t < trials; ++t)
        {
            RateRow row;
            row.snr_db = snr_db[s];
            row.trial = t;
            row.seed = seeds[t];
            row.status = outcomes[t].status;
            if (row.status == "ok")
            {
                row.rates = outcomes[t].results[s].rates;
                row.sum_rate = outcomes[t].results[s].sum_rate();
            }
            else
                row.sum_rate = std::numeric_limits<double>::quiet_NaN();
            table.rows.push_back(std::move(row));
        }
    return table;
}

void write_rate_csv(const RateTable &table, std::ostream &out)
{
    char buf[64];
    auto num = [&buf](double v)
    {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "snr_db,seed,user,rate_bits,sum_rate_bits,status\n";
    for (const auto &r : table.rows)
    {
        if (r.status != "ok")
        {
            out << num(r.snr_db) << ',' << r.seed << ",,,," << r.status << '\n';
            continue;
        }
        for (std::size_t k = 0; k < r.rates.size(); ++k)
            out << num(r.snr_db) << ',' << r.seed << ',' << k + 1 << ',' << num(r.rates[k]) << ','
                << num(r.sum_rate) << ",ok\n";
    }
}

DofEstimate estimate_dof(const RateTable &table)
{
    std::vector<std::size_t> cols;
    std::vector<double> x;
    for (std::size_t s = 0; s < table.snr_db.size(); ++s)
        if (table.snr_db[s] >= kMinSlopeSnrDb)
        {
            cols.push_back(s);
            x.push_back(log2_snr(table.snr_db[s]));
        }
    if (cols.size() < 2)
        throw InsufficientDataError("need at least 2 SNR points at or above 40 dB");
    const std::vector<int> trials = usable_trials(table);
    if (trials.empty())
        throw InsufficientDataError("no trial succeeded at every SNR");

    std::vector<double> slopes;
    std::vector<double> mean(cols.size(), 0.0);
    for (int t : trials)
    {
        std::vector<double> y;
        for (std::size_t i = 0; i < cols.size(); ++i)
        {
            const double v = table.rows[cols[i] * table.trials + t].sum_rate;
            y.push_back(v);
            mean[i] += v / static_cast<double>(trials.size());
        }
        slopes.push_back(ls_slope(x, y));
    }

    DofEstimate est;
    est.slope = ls_slope(x, mean);
    est.points = cols.size();
    est.trials = trials.size();
    if (slopes.size() >= 2)
    {
        double m = 0.0, ss = 0.0;
        for (double s : slopes)
            m += s;
        m /= static_cast<double>(slopes.size());
        for (double s : slopes)
            ss += (s - m) * (s - m);
        const double sd = std::sqrt(ss / static_cast<double>(slopes.size() - 1));
        est.half_width = 1.96 * sd / std::sqrt(static_cast<double>(slopes.size()));
    }
    return est;
}

DofEstimate estimate_dof(std::span<const double> snr_db, std::span<const double> sum_rate)
{
    if (snr_db.size() != sum_rate.size())
        throw ShapeError("SNR grid and sum-rate sequence differ in length");
    check_grid(snr_db);
    std::vector<double> x, y;
    for (std::size_t s = 0; s < snr_db.size(); ++s)
        if (snr_db[s] >= kMinSlopeSnrDb)
        {
            x.push_back(log2_snr(snr_db[s]));
            y.push_back(sum_rate[s]);
        }
    if (x.size() < 2)
        throw InsufficientDataError("need at least 2 SNR points at or above 40 dB");
    DofEstimate est;
    est.slope = ls_slope(x, y);
    est.points = x.size();
    est.trials = 1;
    return est;
}

GapProbe estimate_o1_gap(std::span<const double> snr_db, std::span<const double> capacity, double dof)
{
    if (snr_db.size() != capacity.size())
        throw ShapeError("SNR grid and capacity sequence differ in length");
    check_grid(snr_db);
    if (snr_db.back() - snr_db.front() < 40.0)
        throw PreconditionError("gap probing needs a grid spanning at least 40 dB");
    GapProbe g;
    g.snr_db.assign(snr_db.begin(), snr_db.end());
    for (std::size_t s = 0; s < snr_db.size(); ++s)
    {
        const double rho = std::pow(10.0, snr_db[s] / 10.0);
        g.gap.push_back(capacity[s] - dof * std::log2(1.0 + rho));
    }
    const auto [lo, hi] = std::minmax_element(g.gap.begin(), g.gap.end());
    g.oscillation = *hi - *lo;
    return g;
}

GapProbe estimate_o1_gap(const RateTable &table, double dof)
{
    const std::vector<int> trials = usable_trials(table);
    if (trials.empty())
        throw InsufficientDataError("no trial succeeded at every SNR");
    std::vector<double> mean(table.snr_db.size(), 0.0);
    for (std::size_t s = 0; s < table.snr_db.size(); ++s)
        for (int t : trials)
            mean[s] += table.rows[s * table.trials + t].sum_rate / static_cast<double>(trials.size());
    return estimate_o1_gap(table.snr_db, mean, dof);
}

namespace
{

constexpr double kRegionSlack = 1e-12;

const std::array<DofPoint, 5> kCorners = {
    DofPoint{{1.0, 0.0, 0.0}}, DofPoint{{0.0, 1.0, 0.0}}, DofPoint{{0.0, 0.0, 1.0}},
    DofPoint{{0.5, 0.5, 0.5}}, DofPoint{{0.0, 0.0, 0.0}}};

} // namespace

DofPoint DecompositionWeights::reconstruct() const
{
    DofPoint p;
    for (std::size_t c = 0; c < kCorners.size(); ++c)
        for (std::size_t i = 0; i < 3; ++i)
            p.d[i] += alpha[c] * kCorners[c].d[i];
    return p;
}

double DecompositionWeights::total() const
{
    double s = 0.0;
    for (double a : alpha)
        s += a;
    return s;
}

bool in_dof_region(const DofPoint &p)
{
    for (double v : p.d)
        if (!std::isfinite(v) || v < -kRegionSlack)
            return false;
    return p.d[0] + p.d[1] <= 1.0 + kRegionSlack && p.d[0] + p.d[2] <= 1.0 + kRegionSlack &&
           p.d[1] + p.d[2] <= 1.0 + kRegionSlack;
}

DecompositionWeights decompose_dof_point(const DofPoint &p)
{
    if (!in_dof_region(p))
        throw MembershipError("point lies outside the 3-user DoF region");
    const auto &d = p.d;
    const double s = d[0] + d[1] + d[2];
    DecompositionWeights w;
    if (s <= 1.0)
    {
        w.alpha = {d[0], d[1], d[2], 0.0, 1.0 - s};
    }
    else
    {
        w.alpha = {1.0 - d[1] - d[2], 1.0 - d[0] - d[2], 1.0 - d[0] - d[1], 2.0 * (s - 1.0), 0.0};
    }
    return w;
}

CognitiveScenario cognitive_scenario(int case_number)
{
    if (case_number < 1 || case_number > 4)
        throw ParameterError("cognitive case must be 1, 2, 3 or 4");
    return static_cast<CognitiveScenario>(case_number);
}

double cognitive_dof(CognitiveScenario scenario)
{
    switch (scenario)
    {
    case CognitiveScenario::one_message_shared:
    case CognitiveScenario::cognitive_receiver:
        return 1.5;
    case CognitiveScenario::two_messages_shared:
    case CognitiveScenario::cognitive_transmitter:
        return 2.0;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace ialab
