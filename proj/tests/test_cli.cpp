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


#include "ialab/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = ialab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string &line)
{
    std::istringstream in(line);
    std::vector<std::string> words;
    for (std::string w; in >> w;)
        words.push_back(w);
    return words;
}

std::filesystem::path temp(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("ialab_cli_" + name);
}

} // namespace

TEST_CASE("cognitive lookup prints the value")
{
    const Result r = run({"cognitive", "--case", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");
    CHECK(run({"cognitive", "--case", "1"}).out == "1.5\n");
    CHECK(run({"cognitive", "--case", "9"}).code == 2);
}

TEST_CASE("region membership")
{
    const Result bad = run({"region", "--point", "0.6,0.6,0.6"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("membership") != std::string::npos);

    const Result ok = run({"region", "--point", "0.5,0.5,0.4"});
    REQUIRE(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["alpha"][3].get<double>() == doctest::Approx(0.8));
    CHECK(run({"region", "--point", "0.5,0.5"}).code == 2);
}

TEST_CASE("usage errors exit 2 with help")
{
    const Result r = run({"sweep", "--bogus", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"launch"}).code == 2);
    CHECK(run({"dof", "--snr", "60,abc"}).code == 2);
    CHECK(run({"dof", "--scheme", "mimo"}).code == 2);
    CHECK(run({"dof", "--scheme", "delay"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("dof summary for the 3-user scheme")
{
    const Result r = run({"dof", "--scheme", "siso-k3", "--n", "1", "--snr", "60,80", "--trials", "20", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["slope"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(0.02));
    CHECK(j["trials"] == 20);
    CHECK(j["gap_oscillation"].is_null());
    CHECK(j.contains("half_width"));
}

TEST_CASE("the config echo reproduces the run")
{
    const Result first = run({"dof", "--scheme", "mimo", "--M", "2", "--snr", "40,60,80", "--trials", "4", "--seed", "3"});
    REQUIRE(first.code == 0);
    const std::string echo = first.err.substr(0, first.err.find('\n'));
    REQUIRE(echo.rfind("# ialab dof", 0) == 0);
    const std::vector<std::string> words = split(echo);
    const Result again = run(std::vector<std::string>(words.begin() + 2, words.end()));
    CHECK(again.code == 0);
    CHECK(again.out == first.out);
    CHECK(nlohmann::json::parse(first.out)["gap_oscillation"].get<double>() <= 1.0);
}

TEST_CASE("generated channel files feed precode and verify")
{
    const auto path = temp("channels.json");
    REQUIRE(run({"gen", "--K", "3", "--F", "5", "--seed", "12", "--out", path.string()}).code == 0);
    const Result from_file = run({"precode", "--scheme", "siso-k3", "--n", "2", "--channels", path.string()});
    const Result from_seed = run({"precode", "--scheme", "siso-k3", "--n", "2", "--seed", "12"});
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == from_seed.out);
    CHECK(nlohmann::json::parse(from_file.out)["L"] == 5);

    const Result v = run({"verify", "--scheme", "siso-k3", "--n", "2", "--channels", path.string()});
    CHECK(v.code == 0);
    CHECK(nlohmann::json::parse(v.out)["pass"] == true);

    // n = 3 needs 7 slots; the file has 5.
    CHECK(run({"verify", "--scheme", "siso-k3", "--n", "3", "--channels", path.string()}).code == 2);
    std::filesystem::remove(path);

    std::ofstream(path) << "{ \"K\": 3,\n  broken";
    const Result bad = run({"verify", "--channels", path.string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 2") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("sweep writes plot-ready CSV")
{
    const auto path = temp("sweep.csv");
    const Result r = run({"sweep", "--scheme", "designed", "--K", "3", "--snr", "40,60", "--trials", "2", "--out",
                          path.string()});
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "snr_db,seed,user,rate_bits,sum_rate_bits,status");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        ++rows;
    CHECK(rows == 2 * 2 * 3);
    std::filesystem::remove(path);

    CHECK(run({"sweep", "--scheme", "siso-k3", "--snr", "40", "--trials", "1"}).out.find("40,") != std::string::npos);
}

TEST_CASE("delay subcommand")
{
    const auto good = temp("good.csv"), bad = temp("bad.csv");
    std::ofstream(good) << "0,1,3\n1,2,5\n7,9,4\n";
    std::ofstream(bad) << "0,2\n1,2\n";
    const Result ok = run({"delay", "--delays", good.string()});
    REQUIRE(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["slots"] == 18);
    for (const auto &f : j["interference_free_fraction"])
        CHECK(f.get<double>() == 0.5);
    CHECK(run({"delay", "--delays", bad.string()}).code == 1);
    CHECK(run({"delay", "--delays", good.string(), "--slots", "7"}).code == 2);
    CHECK(run({"delay"}).code == 2);
    std::filesystem::remove(good);
    std::filesystem::remove(bad);
}

TEST_CASE("infeasibility demo")
{
    const Result r = run({"infeasible", "--M", "2", "--trials", "10"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["diagonal_rank_deficient"] == 10);
    CHECK(j["dense_full_rank"] == 10);
    CHECK(j["seeds"].size() == 10);
    CHECK(run({"infeasible", "--M", "3"}).code == 2);
    CHECK(run({"infeasible"}).err.find("--M 2 --seed 0 --trials 100") != std::string::npos);
}
