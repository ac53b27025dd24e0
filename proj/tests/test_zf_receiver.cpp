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


#include "ialab/errors.hpp"
#include "ialab/precoder_mimo.hpp"
#include "ialab/precoder_siso.hpp"
#include "ialab/zf_receiver.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace ialab;
using oracle::H;

namespace
{

ExtendedChannel siso(int users, int slots, std::uint64_t seed)
{
    ChannelParams p;
    p.users = users;
    p.slots = slots;
    p.seed = seed;
    return extend_channel(generate_channels(p), slots, ExtensionMode::frequency);
}

ChannelSet mimo_channels(int m, std::uint64_t seed)
{
    ChannelParams p;
    p.antennas = m;
    p.seed = seed;
    return generate_channels(p);
}

// Rates computed from scratch: null space of the interference, orthonormal desired basis.
std::vector<double> oracle_rates(const PrecoderScheme &s, const ExtendedChannel &e, double rho)
{
    const int k_users = s.users;
    std::vector<double> out;
    for (int k = 1; k <= k_users; ++k)
    {
        arma::cx_mat interference;
        for (int j = 1; j <= k_users; ++j)
            if (j != k)
                interference = arma::join_rows(interference, H(e, k, j) * s.precoders[j - 1]);
        arma::cx_mat u, v;
        arma::vec sv;
        arma::svd(u, sv, v, oracle::unit_columns(interference));
        const int r = oracle::rank(interference);
        const arma::cx_mat q = u.cols(r, u.n_cols - 1);
        const arma::cx_mat vhat = arma::orth(s.precoders[k - 1]);
        const arma::cx_mat g = q.t() * H(e, k, k) * vhat;
        const double d = static_cast<double>(s.precoders[k - 1].n_cols);
        const double p = rho / k_users * s.slots / d;
        const arma::cx_mat m = arma::eye<arma::cx_mat>(g.n_rows, g.n_rows) + p * g * g.t();
        out.push_back(std::real(arma::log_det(m)) / std::log(2.0) / s.slots);
    }
    return out;
}

arma::cx_mat random_unitary(int m, int seed)
{
    arma::arma_rng::set_seed(seed);
    arma::cx_mat q, r;
    arma::qr(q, r, arma::cx_mat(m, m, arma::fill::randn));
    return q;
}

} // namespace

TEST_CASE("aligned 3-user schemes pass every check")
{
    for (int n : {1, 2, 3})
    {
        const ExtendedChannel e = siso(3, 2 * n + 1, 9 + n);
        const AlignmentReport r = check_alignment(build_precoders_k3(e, n), e);
        CHECK(r.pass());
        CHECK(r.family == SchemeFamily::siso_k3);
        REQUIRE(r.receivers.size() == 3);
        CHECK(r.receivers[0].interference_rank == n);
        CHECK(r.receivers[0].desired_rank == n + 1);
        CHECK(r.receivers[1].interference_rank == n + 1);
        CHECK(r.receivers[2].joint_rank == 2 * n + 1);
        CHECK(r.relations.size() == 3);
        for (const auto &rel : r.relations)
            CHECK(rel.residual <= rel.tolerance);
        const nlohmann::json j = to_json(r);
        CHECK(j["pass"] == true);
        CHECK(j["receivers"].size() == 3);
    }
}

TEST_CASE("a perturbed precoder is caught")
{
    const ExtendedChannel e = siso(3, 5, 3);
    PrecoderScheme s = build_precoders_k3(e, 2);
    s.precoders[1](0, 0) *= 1.001;
    const AlignmentReport r = check_alignment(s, e);
    CHECK_FALSE(r.pass());
    CHECK_THROWS_AS(ZeroForcingReceiver(s, e), AlignmentError);

    // Interference spilling into a generic scheme leaves too few clean dimensions.
    s.family = SchemeFamily::generic;
    CHECK_FALSE(check_alignment(s, e).pass());
}

TEST_CASE("projections are orthonormal and annihilate interference")
{
    const ExtendedChannel e = siso(3, 7, 21);
    const PrecoderScheme s = build_precoders_k3(e, 3);
    const ZeroForcingReceiver rx(s, e);
    for (int k = 1; k <= 3; ++k)
    {
        const arma::cx_mat &q = rx.projection(k - 1);
        CHECK(q.n_rows == 7);
        CHECK(q.n_cols == s.precoders[k - 1].n_cols);
        CHECK(arma::norm(q.t() * q - arma::eye<arma::cx_mat>(q.n_cols, q.n_cols), "fro") < 1e-12);
        for (int j = 1; j <= 3; ++j)
            if (j != k)
            {
                const arma::cx_mat leak = q.t() * oracle::unit_columns(H(e, k, j) * s.precoders[j - 1]);
                CHECK(arma::norm(leak, "fro") < 1e-8);
            }
    }
}

TEST_CASE("rates agree with a from-scratch computation")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const ExtendedChannel e = siso(3, 5, 300 + seed);
        const PrecoderScheme s = build_precoders_k3(e, 2);
        const ZeroForcingReceiver rx(s, e);
        for (double rho : {10.0, 1e4, 1e7})
        {
            const RateResult r = rx.rates(rho);
            const std::vector<double> o = oracle_rates(s, e, rho);
            for (int k = 0; k < 3; ++k)
                CHECK(r.rates[k] == doctest::Approx(o[k]).epsilon(1e-9));
            CHECK(r.sum_rate() == doctest::Approx(o[0] + o[1] + o[2]).epsilon(1e-12));
            CHECK(r.stream_powers[0] == doctest::Approx(rho / 3 * 5 / 3));
        }
    }
    const ChannelSet ch = mimo_channels(4, 8);
    const ExtendedChannel e = mimo_extension(ch);
    const PrecoderScheme s = build_mimo(ch);
    const std::vector<double> o = oracle_rates(s, e, 1e5);
    const RateResult r = zf_rates(s, e, 1e5);
    for (int k = 0; k < 3; ++k)
        CHECK(r.rates[k] == doctest::Approx(o[k]).epsilon(1e-9));
}

TEST_CASE("rates grow with SNR")
{
    const ExtendedChannel e = siso(3, 3, 77);
    const ZeroForcingReceiver rx(build_precoders_k3(e, 1), e);
    double prev = -1.0;
    for (double db = -10.0; db <= 100.0; db += 5.0)
    {
        const RateResult r = rx.rates(std::pow(10.0, db / 10.0));
        CHECK(r.sum_rate() > prev);
        prev = r.sum_rate();
    }
}

TEST_CASE("unitary changes of basis leave rates unchanged")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const ChannelSet ch = mimo_channels(4, 40 + seed);
        const ExtendedChannel e = mimo_extension(ch);
        const PrecoderScheme s = build_mimo(ch);

        std::vector<arma::cx_mat> u, w;
        for (int k = 0; k < 3; ++k)
        {
            u.push_back(random_unitary(4, static_cast<int>(100 * seed + k)));
            w.push_back(random_unitary(4, static_cast<int>(100 * seed + 50 + k)));
        }
        std::vector<BlockDiagonal> links;
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
            {
                arma::cx_cube b(4, 4, 1);
                b.slice(0) = u[k] * e.link(k, j).block(0) * w[j];
                links.emplace_back(b);
            }
        const ExtendedChannel rotated(3, links);
        PrecoderScheme t = s;
        for (int j = 0; j < 3; ++j)
            t.precoders[j] = w[j].t() * s.precoders[j];

        const RateResult a = zf_rates(s, e, 1e6);
        const RateResult b = zf_rates(t, rotated, 1e6);
        for (int k = 0; k < 3; ++k)
            CHECK(b.rates[k] == doctest::Approx(a.rates[k]).epsilon(1e-8));
    }
}

TEST_CASE("relabeling users permutes rates")
{
    const int perm[3] = {2, 0, 1};
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const ExtendedChannel e = siso(3, 5, 500 + seed);
        const PrecoderScheme s = build_precoders_k3(e, 2);
        // user perm[i] of the relabeled system is user i of the original
        std::vector<BlockDiagonal> links(9);
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                links[perm[k] * 3 + perm[j]] = e.link(k, j);
        PrecoderScheme t = s;
        t.family = SchemeFamily::generic;
        for (int i = 0; i < 3; ++i)
            t.precoders[perm[i]] = s.precoders[i];
        const ExtendedChannel relabeled(3, links);
        CHECK(check_alignment(t, relabeled).pass());
        const RateResult a = zf_rates(s, e, 1e6);
        const RateResult b = zf_rates(t, relabeled, 1e6);
        for (int i = 0; i < 3; ++i)
            CHECK(b.rates[perm[i]] == doctest::Approx(a.rates[i]).epsilon(1e-10));
        CHECK(b.sum_rate() == doctest::Approx(a.sum_rate()).epsilon(1e-12));
    }
}

TEST_CASE("scheme export")
{
    const ExtendedChannel e = siso(3, 3, 1);
    const nlohmann::json j = scheme_to_json(build_precoders_k3(e, 1));
    CHECK(j["family"] == "siso-k3");
    CHECK(j["L"] == 3);
    CHECK(j["stream_counts"] == nlohmann::json::array({2, 1, 1}));
    CHECK(j["V"][0]["rows"] == 3);
    CHECK(j["V"][0]["data"].size() == 6);
}
