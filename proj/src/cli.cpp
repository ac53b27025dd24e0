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

#include "ialab/channel_model.hpp"
#include "ialab/designed_channels.hpp"
#include "ialab/errors.hpp"
#include "ialab/evaluation.hpp"
#include "ialab/precoder_mimo.hpp"
#include "ialab/precoder_siso.hpp"
#include "ialab/rng.hpp"
#include "ialab/verification.hpp"
#include "ialab/zf_receiver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ialab::cli
{

namespace
{

struct RunConfig
{
    std::string scheme = "siso-k3";
    int users = 3;
    int antennas = 1;
    int order = 1;
    int slots = 1;
    std::uint64_t seed = 0;
    std::string snr = "40,50,60,70,80";
    int trials = 20;
    std::string out;
    std::string channels;
    std::string delays;
    long delay_slots = 0;
    std::string point;
    int case_number = 0;
    double a_min = 0.5;
    double a_max = 2.0;
};

std::vector<double> parse_list(const std::string &text, const char *what)
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ','))
    {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(token, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used == 0 || token.find_first_not_of(" \t", used) != std::string::npos)
            throw ParameterError(std::string("bad ") + what + " value '" + token + "'");
        values.push_back(v);
    }
    if (values.empty())
        throw ParameterError(std::string(what) + " list is empty");
    return values;
}

SchemeConfig scheme_config(const RunConfig &c)
{
    SchemeConfig s;
    if (c.scheme == "siso-k3")
        s.kind = SchemeKind::siso_k3;
    else if (c.scheme == "siso-general")
        s.kind = SchemeKind::siso_general;
    else if (c.scheme == "mimo")
        s.kind = SchemeKind::mimo;
    else if (c.scheme == "designed")
        s.kind = SchemeKind::designed;
    else
        throw ParameterError("scheme '" + c.scheme + "' has no precoder; use siso-k3, siso-general, mimo or designed");
    s.users = c.users;
    s.antennas = c.antennas;
    s.order = c.order;
    s.a_min = c.a_min;
    s.a_max = c.a_max;
    return s;
}

// Scheme on a channel read from file; the file fixes K, M and the slot count.
TrialSystem system_from_channels(const SchemeConfig &s, const ChannelSet &ch)
{
    switch (s.kind)
    {
    case SchemeKind::siso_k3:
    {
        ExtendedChannel ext = extend_channel(ch, 2 * s.order + 1, ExtensionMode::frequency);
        PrecoderScheme scheme = build_precoders_k3(ext, s.order);
        return {std::move(scheme), std::move(ext)};
    }
    case SchemeKind::siso_general:
    {
        const int slots = static_cast<int>(general_extension_length(ch.users(), s.order, s.max_slots));
        ExtendedChannel ext = extend_channel(ch, slots, ExtensionMode::frequency);
        PrecoderScheme scheme = build_precoders_general(ext, s.order, s.max_slots);
        return {std::move(scheme), std::move(ext)};
    }
    case SchemeKind::mimo:
    {
        ExtendedChannel ext = mimo_extension(ch);
        PrecoderScheme scheme = build_mimo(ch);
        return {std::move(scheme), std::move(ext)};
    }
    case SchemeKind::designed:
        throw ParameterError("designed channels are fixed; --channels does not apply");
    }
    throw ParameterError("unknown scheme");
}

TrialSystem build_system(const RunConfig &c)
{
    const SchemeConfig s = scheme_config(c);
    if (c.channels.empty())
        return make_scheme_builder(s)(c.seed);
    const ChannelSet ch = load_channels(c.channels);
    SchemeConfig checked = s;
    checked.users = ch.users();
    checked.antennas = ch.antennas();
    make_scheme_builder(checked);
    return system_from_channels(checked, ch);
}

void emit(const nlohmann::json &j, const RunConfig &c, std::ostream &out)
{
    if (c.out.empty())
    {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(c.out);
    if (!f)
        throw ParameterError("cannot open '" + c.out + "' for writing");
    f << j.dump(2) << '\n';
}

// Equivalent command line with every effective option value.
std::string echo(const CLI::App &sub)
{
    std::string line = "ialab " + sub.get_name();
    for (const CLI::Option *opt : sub.get_options())
    {
        if (opt->get_lnames().empty() || opt->get_lnames().front() == "help")
            continue;
        std::string value;
        if (opt->count() > 0)
        {
            for (const auto &r : opt->results())
                value += (value.empty() ? "" : ",") + r;
        }
        else
            value = opt->get_default_str();
        if (!value.empty())
            line += " --" + opt->get_lnames().front() + " " + value;
    }
    return line;
}

int cmd_gen(const RunConfig &c, std::ostream &out)
{
    ChannelParams p;
    p.users = c.users;
    p.antennas = c.antennas;
    p.slots = c.slots;
    p.a_min = c.a_min;
    p.a_max = c.a_max;
    p.seed = c.seed;
    const ChannelSet ch = generate_channels(p);
    if (c.out.empty())
        write_channels(ch, out);
    else
    {
        save_channels(ch, c.out);
        out << "wrote " << c.users * c.users * c.antennas * c.antennas * c.slots << " coefficients to " << c.out
            << '\n';
    }
    return kExitOk;
}

int cmd_precode(const RunConfig &c, std::ostream &out)
{
    const TrialSystem sys = build_system(c);
    emit(scheme_to_json(sys.scheme), c, out);
    return kExitOk;
}

int cmd_verify(const RunConfig &c, std::ostream &out)
{
    const TrialSystem sys = build_system(c);
    const AlignmentReport report = check_alignment(sys.scheme, sys.channel);
    emit(to_json(report), c, out);
    return report.pass() ? kExitOk : kExitVerificationFailed;
}

RateTable sweep_table(const RunConfig &c)
{
    const SchemeConfig s = scheme_config(c);
    return snr_sweep(make_scheme_builder(s), parse_list(c.snr, "SNR"), c.trials, c.seed);
}

void write_csv(const RateTable &table, const std::string &path)
{
    std::ofstream f(path);
    if (!f)
        throw ParameterError("cannot open '" + path + "' for writing");
    write_rate_csv(table, f);
}

int cmd_sweep(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    const RateTable table = sweep_table(c);
    if (c.out.empty())
        write_rate_csv(table, out);
    else
    {
        write_csv(table, c.out);
        out << "wrote " << table.rows.size() << " sweep rows to " << c.out << '\n';
    }
    if (table.failures() > 0)
        err << table.failures() << " failure rows\n";
    return kExitOk;
}

int cmd_dof(const RunConfig &c, std::ostream &out)
{
    const SchemeConfig s = scheme_config(c);
    const RateTable table = sweep_table(c);
    if (!c.out.empty())
        write_csv(table, c.out);

    const DofEstimate est = estimate_dof(table);
    const double theory = theoretical_dof(s);
    nlohmann::json j = {{"scheme", c.scheme},
                        {"K", c.users},
                        {"M", c.antennas},
                        {"n", c.order},
                        {"seed", c.seed},
                        {"trials", c.trials},
                        {"snr_db", table.snr_db},
                        {"slope", est.slope},
                        {"half_width", est.half_width},
                        {"points", est.points},
                        {"usable_trials", est.trials},
                        {"failure_rows", table.failures()},
                        {"theoretical_dof", theory},
                        {"relative_error", std::abs(est.slope - theory) / theory}};
    if (table.snr_db.back() - table.snr_db.front() >= 40.0)
    {
        const GapProbe gap = estimate_o1_gap(table, theory);
        j["gap"] = gap.gap;
        j["gap_oscillation"] = gap.oscillation;
    }
    else
        j["gap_oscillation"] = nullptr;
    out << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_region(const RunConfig &c, std::ostream &out)
{
    const std::vector<double> v = parse_list(c.point, "point");
    if (v.size() != 3)
        throw ParameterError("--point needs exactly three values d1,d2,d3");
    const DofPoint p{{v[0], v[1], v[2]}};
    const DecompositionWeights w = decompose_dof_point(p);
    const DofPoint r = w.reconstruct();
    out << nlohmann::json{{"point", p.d},
                          {"corners", {"J", "L", "K", "N", "O"}},
                          {"alpha", w.alpha},
                          {"sum", w.total()},
                          {"reconstruction", r.d}}
               .dump(2)
        << '\n';
    return kExitOk;
}

int cmd_cognitive(const RunConfig &c, std::ostream &out)
{
    out << cognitive_dof(cognitive_scenario(c.case_number)) << '\n';
    return kExitOk;
}

int cmd_delay(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    const DelayMatrix d = DelayMatrix::load_csv(c.delays);
    if (!check_delay_parity(d))
    {
        err << "delay parity check failed: direct delays must be even and cross delays odd\n";
        out << nlohmann::json{{"parity_valid", false}}.dump(2) << '\n';
        return kExitVerificationFailed;
    }
    const long slots = c.delay_slots > 0 ? c.delay_slots : std::max(2L, 2 * d.max_delay());
    const DelaySchedule s = simulate_delay_schedule(d, slots);
    out << nlohmann::json{{"parity_valid", true},
                          {"slots", s.slots},
                          {"useful_slots", s.useful_slots},
                          {"interference_free_fraction", s.interference_free_fraction}}
               .dump(2)
        << '\n';
    return kExitOk;
}

int cmd_infeasible(const RunConfig &c, std::ostream &out)
{
    int deficient = 0, control_full = 0;
    nlohmann::json seeds = nlohmann::json::array();
    for (int t = 0; t < c.trials; ++t)
    {
        const std::uint64_t seed = derive_seed(c.seed, {static_cast<std::uint64_t>(t)});
        const ReceiverReport diag = demonstrate_diagonal_infeasibility(c.antennas, seed).receivers.at(0);
        const ReceiverReport dense = dense_channel_control(c.antennas, seed).receivers.at(0);
        deficient += !diag.pass;
        control_full += dense.pass;
        seeds.push_back({{"seed", seed},
                         {"diagonal_joint_rank", diag.joint_rank},
                         {"dense_joint_rank", dense.joint_rank},
                         {"required_rank", diag.interference_rank + diag.desired_streams}});
    }
    nlohmann::json j = {{"M", c.antennas},
                        {"trials", c.trials},
                        {"diagonal_rank_deficient", deficient},
                        {"dense_full_rank", control_full},
                        {"seeds", seeds}};
    emit(j, c, out);
    return deficient == c.trials && control_full == c.trials ? kExitOk : kExitVerificationFailed;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    RunConfig c;
    CLI::App app{"Interference alignment experiments", "ialab"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    auto add_network = [&c](CLI::App *s)
    {
        s->add_option("--K", c.users, "number of users");
        s->add_option("--M", c.antennas, "antennas per node");
    };
    auto add_magnitudes = [&c](CLI::App *s)
    {
        s->add_option("--a-min", c.a_min, "smallest channel magnitude");
        s->add_option("--a-max", c.a_max, "largest channel magnitude");
    };
    auto add_scheme = [&](CLI::App *s)
    {
        s->add_option("--scheme", c.scheme, "siso-k3 | siso-general | mimo | designed");
        add_network(s);
        s->add_option("--n", c.order, "alignment order n");
        s->add_option("--seed", c.seed, "root seed");
        add_magnitudes(s);
    };

    CLI::App *gen = app.add_subcommand("gen", "write a random channel file");
    add_network(gen);
    gen->add_option("--F", c.slots, "frequency slots");
    gen->add_option("--seed", c.seed, "root seed");
    add_magnitudes(gen);
    gen->add_option("--out", c.out, "output path (default stdout)");

    CLI::App *precode = app.add_subcommand("precode", "build and export precoders as JSON");
    add_scheme(precode);
    precode->add_option("--channels", c.channels, "channel file instead of a seeded draw");
    precode->add_option("--out", c.out, "output path (default stdout)");

    CLI::App *verify = app.add_subcommand("verify", "check alignment and rank conditions");
    add_scheme(verify);
    verify->add_option("--channels", c.channels, "channel file instead of a seeded draw");
    verify->add_option("--out", c.out, "output path (default stdout)");

    CLI::App *sweep = app.add_subcommand("sweep", "Monte-Carlo rate sweep as CSV");
    add_scheme(sweep);
    sweep->add_option("--snr", c.snr, "comma-separated SNR grid in dB");
    sweep->add_option("--trials", c.trials, "channel realizations");
    sweep->add_option("--out", c.out, "CSV path (default stdout)");

    CLI::App *dof = app.add_subcommand("dof", "DoF slope and gap summary");
    add_scheme(dof);
    dof->add_option("--snr", c.snr, "comma-separated SNR grid in dB");
    dof->add_option("--trials", c.trials, "channel realizations");
    dof->add_option("--out", c.out, "also write the sweep CSV here");

    CLI::App *region = app.add_subcommand("region", "decompose a 3-user DoF point");
    region->add_option("--point", c.point, "d1,d2,d3")->required();

    CLI::App *cognitive = app.add_subcommand("cognitive", "total DoF with message sharing");
    cognitive->add_option("--case", c.case_number, "scenario 1-4")->required();

    CLI::App *delay = app.add_subcommand("delay", "delay parity check and schedule");
    delay->add_option("--delays", c.delays, "CSV delay matrix, row i = transmitter i")->required();
    delay->add_option("--slots", c.delay_slots, "schedule length (default 2 * max delay)");

    CLI::App *infeasible = app.add_subcommand("infeasible", "alignment on diagonal vs dense M x M channels");
    c.antennas = 2;
    c.trials = 100;
    infeasible->add_option("--M", c.antennas, "even antenna count");
    infeasible->add_option("--seed", c.seed, "root seed");
    infeasible->add_option("--trials", c.trials, "seeds to test");
    infeasible->add_option("--out", c.out, "output path (default stdout)");
    c.antennas = 1;
    c.trials = 20;
    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &e)
    {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << e.what() << '\n';
        CLI::App *active = &app;
        for (CLI::App *s : app.get_subcommands())
            active = s;
        err << active->help();
        return kExitUsage;
    }

    CLI::App *active = app.get_subcommands().front();
    if (active == infeasible && infeasible->count("--M") == 0)
        c.antennas = 2;
    if (active == infeasible && infeasible->count("--trials") == 0)
        c.trials = 100;
    err << "# " << echo(*active) << '\n';

    try
    {
        if (active == gen)
            return cmd_gen(c, out);
        if (active == precode)
            return cmd_precode(c, out);
        if (active == verify)
            return cmd_verify(c, out);
        if (active == sweep)
            return cmd_sweep(c, out, err);
        if (active == dof)
            return cmd_dof(c, out);
        if (active == region)
            return cmd_region(c, out);
        if (active == cognitive)
            return cmd_cognitive(c, out);
        if (active == delay)
            return cmd_delay(c, out, err);
        if (active == infeasible)
            return cmd_infeasible(c, out);
    }
    catch (const MembershipError &e)
    {
        err << "membership error: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    catch (const AlignmentError &e)
    {
        err << "alignment error: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    catch (const SingularityError &e)
    {
        err << "singular channel: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    catch (const DegeneracyError &e)
    {
        err << "degenerate eigenbasis: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
    catch (const Error &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

int run(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace ialab::cli
