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

#include <doctest.h>
#include <json.hpp>

#include <complex>
#include <filesystem>
#include <set>
#include <sstream>

using namespace ialab;

namespace
{

ChannelParams params(int k, int m, int f, std::uint64_t seed)
{
    ChannelParams p;
    p.users = k;
    p.antennas = m;
    p.slots = f;
    p.seed = seed;
    return p;
}

arma::cx_cube random_blocks(int m, int l, int seed)
{
    arma::arma_rng::set_seed(seed);
    return arma::cx_cube(m, m, l, arma::fill::randn);
}

} // namespace

TEST_CASE("generation is reproducible from the seed")
{
    const ChannelSet a = generate_channels(params(3, 2, 4, 99));
    const ChannelSet b = generate_channels(params(3, 2, 4, 99));
    CHECK(a == b);
    CHECK_FALSE(a == generate_channels(params(3, 2, 4, 100)));
}

TEST_CASE("1000 seeds give 1000 distinct draws")
{
    std::set<std::pair<double, double>> first;
    for (std::uint64_t s = 0; s < 1000; ++s)
    {
        const auto h = generate_channels(params(3, 1, 1, s)).link(0, 0, 0)(0, 0);
        first.insert({h.real(), h.imag()});
    }
    CHECK(first.size() == 1000);
}

TEST_CASE("magnitudes stay in bounds and phases are spread")
{
    ChannelParams p = params(4, 3, 5, 7);
    p.a_min = 0.25;
    p.a_max = 3.0;
    const ChannelSet ch = generate_channels(p);
    std::complex<double> phasor = 0.0;
    std::size_t count = 0;
    for (const auto &m : ch.coefficients())
        for (const auto &h : m)
        {
            CHECK(std::abs(h) >= 0.25);
            CHECK(std::abs(h) <= 3.0);
            phasor += h / std::abs(h);
            ++count;
        }
    CHECK(count == 4u * 4 * 5 * 9);
    CHECK(std::abs(phasor) / count < 0.15);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(generate_channels(params(1, 1, 1, 0)), ParameterError);
    CHECK_THROWS_AS(generate_channels(params(3, 0, 1, 0)), ParameterError);
    CHECK_THROWS_AS(generate_channels(params(3, 1, 0, 0)), ParameterError);
    ChannelParams p = params(3, 1, 1, 0);
    p.a_min = 2.0;
    p.a_max = 1.0;
    CHECK_THROWS_AS(generate_channels(p), ParameterError);
    p.a_min = 0.0;
    CHECK_THROWS_AS(generate_channels(p), ParameterError);

    std::vector<arma::cx_mat> coeffs(4, arma::cx_mat(1, 1, arma::fill::ones));
    CHECK_NOTHROW(ChannelSet(2, 1, 1, 0.5, 2.0, 0, coeffs));
    coeffs[3](0, 0) = {3.0, 0.0};
    CHECK_THROWS_AS(ChannelSet(2, 1, 1, 0.5, 2.0, 0, coeffs), ParameterError);
    coeffs.pop_back();
    CHECK_THROWS_AS(ChannelSet(2, 1, 1, 0.5, 2.0, 0, coeffs), ShapeError);
}

TEST_CASE("block-diagonal algebra matches dense arithmetic")
{
    for (int m : {1, 2, 3})
    {
        const BlockDiagonal a(random_blocks(m, 4, 1 + m));
        const BlockDiagonal b(random_blocks(m, 4, 11 + m));
        const arma::cx_mat da = a.dense(), db = b.dense();
        CHECK(da.n_rows == static_cast<arma::uword>(4 * m));
        CHECK(arma::norm((a * b).dense() - da * db, "fro") <= 1e-12 * arma::norm(da * db, "fro"));
        CHECK(arma::norm(a.inverse().dense() - arma::inv(da), "fro") <= 1e-10 * arma::norm(arma::inv(da), "fro"));
        arma::cx_mat p = arma::eye<arma::cx_mat>(4 * m, 4 * m);
        for (int i = 0; i < 3; ++i)
            p = p * da;
        CHECK(arma::norm(a.power(3).dense() - p, "fro") <= 1e-11 * arma::norm(p, "fro"));
        CHECK(arma::norm(a.power(-2).dense() - arma::inv(da * da), "fro") <= 1e-9 * arma::norm(arma::inv(da * da), "fro"));
        const arma::cx_mat x(4 * m, 3, arma::fill::randn);
        CHECK(arma::norm(a * x - da * x, "fro") <= 1e-12 * arma::norm(da * x, "fro"));
        CHECK(arma::norm((a * arma::cx_double(0.0, 2.0)).dense() - arma::cx_double(0.0, 2.0) * da, "fro") == 0.0);
        CHECK(arma::norm(a.diagonal() - da.diag()) == 0.0);
    }
    CHECK(arma::norm(BlockDiagonal::identity(2, 3).dense() - arma::eye<arma::cx_mat>(6, 6), "fro") == 0.0);
}

TEST_CASE("singular blocks are rejected on inversion")
{
    arma::cx_vec d = {1.0, 0.0, 2.0};
    CHECK_THROWS_AS(BlockDiagonal::from_diagonal(d).inverse(), SingularityError);
    arma::cx_cube c(2, 2, 1, arma::fill::ones);
    CHECK_THROWS_AS(BlockDiagonal(c).inverse(), SingularityError);
}

TEST_CASE("frequency and constant-time extensions")
{
    const ChannelSet ch = generate_channels(params(3, 2, 3, 5));
    const ExtendedChannel f = extend_channel(ch, 3, ExtensionMode::frequency);
    const ExtendedChannel t = extend_channel(ch, 2, ExtensionMode::constant_time);
    CHECK(f.dim() == 6);
    CHECK(t.dim() == 4);
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
        {
            for (int s = 0; s < 3; ++s)
                CHECK(arma::approx_equal(f.link(k, j).block(s), ch.link(k, j, s), "absdiff", 0.0));
            for (int s = 0; s < 2; ++s)
                CHECK(arma::approx_equal(t.link(k, j).block(s), ch.link(k, j, 0), "absdiff", 0.0));
        }
    CHECK_THROWS_AS(extend_channel(ch, 4, ExtensionMode::frequency), InsufficientSlotsError);
}

TEST_CASE("channel files round-trip bit-exactly")
{
    const ChannelSet ch = generate_channels(params(4, 2, 3, 123456789));
    const auto path = std::filesystem::temp_directory_path() / "ialab_roundtrip.json";
    save_channels(ch, path);
    CHECK(load_channels(path) == ch);
    std::filesystem::remove(path);

    std::stringstream ss;
    write_channels(generate_channels(params(3, 1, 7, 42)), ss);
    CHECK(read_channels(ss) == generate_channels(params(3, 1, 7, 42)));
}

TEST_CASE("malformed channel files report where they fail")
{
    auto message = [](const std::string &text)
    {
        std::istringstream in(text);
        try
        {
            read_channels(in);
        }
        catch (const ParseError &e)
        {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("{\n  \"K\": 3,\n  oops\n}").find("line 3") != std::string::npos);

    std::stringstream good;
    write_channels(generate_channels(params(2, 1, 1, 3)), good);
    nlohmann::json doc = nlohmann::json::parse(good.str());

    nlohmann::json missing = doc;
    missing.erase("a_max");
    CHECK(message(missing.dump()).find("a_max") != std::string::npos);

    nlohmann::json zero = doc;
    zero["coeffs"][2] = {{"re", 0.0}, {"im", 0.0}};
    CHECK(message(zero.dump()).find("coeffs[2]") != std::string::npos);

    nlohmann::json small = doc;
    small["K"] = 1;
    CHECK(message(small.dump()).find("'K'") != std::string::npos);

    nlohmann::json big = doc;
    big["coeffs"][0] = {{"re", 5.0}, {"im", 0.0}};
    CHECK(message(big.dump()) != "no error");
}
