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

#ifndef IALAB_ZF_RECEIVER_HPP
#define IALAB_ZF_RECEIVER_HPP

#include "ialab/channel_model.hpp"
#include "ialab/scheme.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ialab
{

enum class RelationKind
{
    equality,    // P = Q, relative Frobenius residual
    containment, // columns of P are columns of Q, worst per-column relative residual
    span,        // span(P) = span(Q), sine of largest principal angle
    rank         // rank(P) = rank(Q), absolute rank difference
};

struct RelationCheck
{
    std::string name;
    RelationKind kind = RelationKind::equality;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Ranks are decided at kRankTolerance on column-equilibrated matrices.
struct ReceiverReport
{
    int receiver = 0; // 1-based
    int dimension = 0;
    int desired_streams = 0;
    int interference_rank = 0;
    int desired_rank = 0;
    int joint_rank = 0;
    bool pass = false; // desired_rank = d_k and joint_rank = interference_rank + d_k
};

struct AlignmentReport
{
    SchemeFamily family = SchemeFamily::generic;
    std::vector<ReceiverReport> receivers;
    std::vector<RelationCheck> relations;

    bool pass() const;
};

// Interference at receiver k is the stack of Hbar^{[kj]} V^{[j]}, j != k.
// Also evaluates the family's alignment equalities/containments.
AlignmentReport check_alignment(const PrecoderScheme &scheme, const ExtendedChannel &ext);

nlohmann::json to_json(const AlignmentReport &report);

struct RateResult
{
    double snr = 0.0;                 // rho, linear
    std::vector<double> rates;        // bits per channel use, per user
    std::vector<double> stream_powers; // per-stream power p_k

    double sum_rate() const;
};

// Projection-then-joint-decoding receiver. Construction checks alignment and
// throws AlignmentError if the report fails; rate evaluation is then cheap.
//
// For receiver k: Q_k spans the orthogonal complement of the interference,
// Vhat_k is an orthonormal basis of span(V^{[k]}), G_k = Q_k^H Hbar^{[kk]} Vhat_k and
//   rate_k = log2 det(I + p_k G_k G_k^H) / L,   p_k = (rho / K) * L / d_k.
class ZeroForcingReceiver
{
public:
    ZeroForcingReceiver(const PrecoderScheme &scheme, const ExtendedChannel &ext);

    const AlignmentReport &report() const { return report_; }
    // Orthonormal complement of receiver k's interference (0-based k).
    const arma::cx_mat &projection(int receiver) const { return projections_.at(receiver); }
    // Squared singular values of G_k.
    const arma::vec &channel_gains(int receiver) const { return gains_.at(receiver); }

    RateResult rates(double rho) const;

private:
    AlignmentReport report_;
    int users_ = 0;
    int slots_ = 1;
    std::vector<int> streams_;
    std::vector<arma::cx_mat> projections_;
    std::vector<arma::vec> gains_;
};

RateResult zf_rates(const PrecoderScheme &scheme, const ExtendedChannel &ext, double rho);

} // namespace ialab

#endif
