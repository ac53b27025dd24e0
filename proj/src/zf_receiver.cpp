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

#include "ialab/zf_receiver.hpp"

#include "ialab/errors.hpp"
#include "ialab/numerics.hpp"

#include <cmath>
#include <numbers>

namespace ialab
{

namespace
{

std::string tag(int rx, int tx)
{
    return "H" + std::to_string(rx) + std::to_string(tx) + " V" + std::to_string(tx);
}

class RelationBuilder
{
public:
    RelationBuilder(const PrecoderScheme &scheme, const ExtendedChannel &ext) : scheme_(scheme), ext_(ext) {}

    // Hbar^{[rx tx]} V^{[tx]}, 1-based.
    arma::cx_mat received(int rx, int tx) const { return ext_.link(rx - 1, tx - 1) * scheme_.precoders[tx - 1]; }

    void equality(int rx, int tx_a, int tx_b)
    {
        const double r = relative_difference(received(rx, tx_a), received(rx, tx_b));
        add("rx" + std::to_string(rx) + ": " + tag(rx, tx_a) + " = " + tag(rx, tx_b), RelationKind::equality, r,
            kAlignmentTolerance);
    }

    void containment(int rx, int tx_sub, int tx_super)
    {
        const double r = containment_residual(received(rx, tx_sub), received(rx, tx_super));
        add("rx" + std::to_string(rx) + ": " + tag(rx, tx_sub) + " < " + tag(rx, tx_super), RelationKind::containment,
            r, kAlignmentTolerance);
    }

    void span(int rx, int tx_a, int tx_b)
    {
        const double r = subspace_distance(received(rx, tx_a), received(rx, tx_b));
        add("rx" + std::to_string(rx) + ": span(" + tag(rx, tx_a) + ") = span(" + tag(rx, tx_b) + ")",
            RelationKind::span, r, kSpanTolerance);
    }

    void rank(int rx, int tx_a, int tx_b)
    {
        const int ra = probe_rank(received(rx, tx_a)).rank;
        const int rb = probe_rank(received(rx, tx_b)).rank;
        add("rx" + std::to_string(rx) + ": rank(" + tag(rx, tx_a) + ") = rank(" + tag(rx, tx_b) + ")",
            RelationKind::rank, std::abs(ra - rb), 0.0);
    }

    std::vector<RelationCheck> take() { return std::move(relations_); }

private:
    void add(std::string name, RelationKind kind, double residual, double tolerance)
    {
        relations_.push_back({std::move(name), kind, residual, tolerance, residual <= tolerance});
    }

    const PrecoderScheme &scheme_;
    const ExtendedChannel &ext_;
    std::vector<RelationCheck> relations_;
};

std::vector<RelationCheck> family_relations(const PrecoderScheme &scheme, const ExtendedChannel &ext)
{
    RelationBuilder b(scheme, ext);
    const int users = scheme.users;
    switch (scheme.family)
    {
    case SchemeFamily::siso_k3:
        b.equality(1, 2, 3);
        b.containment(2, 3, 1);
        b.containment(3, 2, 1);
        break;
    case SchemeFamily::siso_general:
        for (int j = 3; j <= users; ++j)
            b.equality(1, 2, j);
        for (int i = 2; i <= users; ++i)
            for (int j = 2; j <= users; ++j)
                if (j != i)
                    b.containment(i, j, 1);
        break;
    case SchemeFamily::mimo_odd:
        b.rank(1, 2, 3);
        [[fallthrough]];
    case SchemeFamily::mimo_even:
        b.span(1, 2, 3);
        b.equality(2, 1, 3);
        b.equality(3, 1, 2);
        break;
    case SchemeFamily::designed:
        for (int k = 1; k <= users; ++k)
        {
            const int first = k == 1 ? 2 : 1;
            for (int j = first + 1; j <= users; ++j)
                if (j != k)
                    b.equality(k, first, j);
        }
        break;
    case SchemeFamily::generic:
        break;
    }
    return b.take();
}

void require_consistent(const PrecoderScheme &scheme, const ExtendedChannel &ext)
{
    if (scheme.users != ext.users() || scheme.precoders.size() != static_cast<std::size_t>(ext.users()))
        throw ShapeError("scheme has " + std::to_string(scheme.precoders.size()) + " precoders for a " +
                         std::to_string(ext.users()) + "-user channel");
    for (std::size_t i = 0; i < scheme.precoders.size(); ++i)
    {
        const arma::cx_mat &v = scheme.precoders[i];
        if (v.n_rows != static_cast<arma::uword>(ext.dim()))
            throw ShapeError("precoder " + std::to_string(i + 1) + " has " + std::to_string(v.n_rows) +
                             " rows, extension dimension is " + std::to_string(ext.dim()));
        if (v.n_cols == 0)
            throw ShapeError("precoder " + std::to_string(i + 1) + " has no streams");
    }
}

arma::cx_mat interference_stack(const PrecoderScheme &scheme, const ExtendedChannel &ext, int rx)
{
    arma::cx_mat stack(ext.dim(), 0);
    for (int j = 0; j < ext.users(); ++j)
        if (j != rx)
            stack = arma::join_rows(stack, ext.link(rx, j) * scheme.precoders[j]);
    return stack;
}

} // namespace

bool AlignmentReport::pass() const
{
    for (const ReceiverReport &r : receivers)
        if (!r.pass)
            return false;
    for (const RelationCheck &c : relations)
        if (!c.pass)
            return false;
    return true;
}

AlignmentReport check_alignment(const PrecoderScheme &scheme, const ExtendedChannel &ext)
{
    require_consistent(scheme, ext);

    AlignmentReport report;
    report.family = scheme.family;
    for (int k = 0; k < ext.users(); ++k)
    {
        const arma::cx_mat desired = ext.link(k, k) * scheme.precoders[k];
        const arma::cx_mat interference = interference_stack(scheme, ext, k);

        ReceiverReport r;
        r.receiver = k + 1;
        r.dimension = ext.dim();
        r.desired_streams = static_cast<int>(scheme.precoders[k].n_cols);
        r.desired_rank = probe_rank(desired).rank;
        r.interference_rank = probe_rank(interference).rank;
        r.joint_rank = probe_rank(arma::join_rows(desired, interference)).rank;
        r.pass = r.desired_rank == r.desired_streams && r.joint_rank == r.interference_rank + r.desired_streams;
        report.receivers.push_back(r);
    }
    report.relations = family_relations(scheme, ext);
    return report;
}

nlohmann::json to_json(const AlignmentReport &report)
{
    nlohmann::json receivers = nlohmann::json::array();
    for (const ReceiverReport &r : report.receivers)
        receivers.push_back({{"receiver", r.receiver},
                             {"dimension", r.dimension},
                             {"desired_streams", r.desired_streams},
                             {"interference_rank", r.interference_rank},
                             {"desired_rank", r.desired_rank},
                             {"joint_rank", r.joint_rank},
                             {"pass", r.pass}});
    nlohmann::json relations = nlohmann::json::array();
    for (const RelationCheck &c : report.relations)
    {
        const char *kind = c.kind == RelationKind::equality      ? "equality"
                           : c.kind == RelationKind::containment ? "containment"
                           : c.kind == RelationKind::span        ? "span"
                                                                 : "rank";
        relations.push_back(
            {{"name", c.name}, {"kind", kind}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    return {{"family", std::string(to_string(report.family))},
            {"pass", report.pass()},
            {"receivers", std::move(receivers)},
            {"relations", std::move(relations)}};
}

double RateResult::sum_rate() const
{
    double s = 0.0;
    for (double r : rates)
        s += r;
    return s;
}

ZeroForcingReceiver::ZeroForcingReceiver(const PrecoderScheme &scheme, const ExtendedChannel &ext)
    : report_(check_alignment(scheme, ext)), users_(ext.users()), slots_(ext.slots())
{
    if (!report_.pass())
        throw AlignmentError("alignment checks failed; refusing to compute zero-forcing rates");

    for (int k = 0; k < users_; ++k)
    {
        const arma::cx_mat q = orthogonal_complement(interference_stack(scheme, ext, k));
        const arma::cx_mat v_hat = orthonormal_basis(scheme.precoders[k]);
        const arma::cx_mat g = q.t() * (ext.link(k, k) * v_hat);
        arma::vec s;
        if (!arma::svd(s, g))
            throw Error("SVD failed to converge");
        streams_.push_back(static_cast<int>(scheme.precoders[k].n_cols));
        projections_.push_back(q);
        gains_.push_back(arma::square(s));
    }
}

RateResult ZeroForcingReceiver::rates(double rho) const
{
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw ParameterError("SNR must be finite and non-negative");
    RateResult out;
    out.snr = rho;
    for (int k = 0; k < users_; ++k)
    {
        const double p = rho / users_ * slots_ / streams_[k];
        double bits = 0.0;
        for (double g : gains_[k])
            bits += std::log1p(p * g) / std::numbers::ln2;
        out.stream_powers.push_back(p);
        out.rates.push_back(bits / slots_);
    }
    return out;
}

RateResult zf_rates(const PrecoderScheme &scheme, const ExtendedChannel &ext, double rho)
{
    return ZeroForcingReceiver(scheme, ext).rates(rho);
}

} // namespace ialab
