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
#include "ialab/numerics.hpp"
#include "ialab/precoder_siso.hpp"
#include "ialab/verification.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace ialab;
using oracle::H;

namespace
{

ExtendedChannel siso3(int slots, std::uint64_t seed)
{
    ChannelParams p;
    p.slots = slots;
    p.seed = seed;
    return extend_channel(generate_channels(p), slots, ExtensionMode::frequency);
}

arma::cx_vec random_nodes(std::mt19937_64 &rng, int size)
{
    std::normal_distribution<double> g;
    arma::cx_vec x(size);
    for (auto &v : x)
        v = {g(rng), g(rng)};
    return x;
}

} // namespace

TEST_CASE("Vandermonde rows are powers of the nodes")
{
    const arma::cx_mat v = vandermonde_matrix(arma::cx_vec{2.0, {0.0, 1.0}, -1.0});
    CHECK(v(0, 2) == arma::cx_double(4.0, 0.0));
    CHECK(v(1, 2) == arma::cx_double(-1.0, 0.0));
    CHECK(v(1, 1) == arma::cx_double(0.0, 1.0));
    CHECK(v(2, 0) == arma::cx_double(1.0, 0.0));
}

TEST_CASE("Vandermonde determinant examples")
{
    const VandermondeCheck a = vandermonde_check(arma::cx_vec{1.0, 2.0, 3.0});
    CHECK(std::abs(a.product_formula - arma::cx_double(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(a.lu_determinant - arma::cx_double(2.0, 0.0)) < 1e-12);
    const VandermondeCheck b = vandermonde_check(arma::cx_vec{1.5, 2.0, 1.5});
    CHECK(b.product_formula == arma::cx_double(0.0, 0.0));
    CHECK(std::abs(b.lu_determinant) < 1e-12);
}

TEST_CASE("product formula agrees with an independent determinant")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial)
    {
        const int size = 1 + trial % 7;
        const arma::cx_vec x = random_nodes(rng, size);
        const VandermondeCheck c = vandermonde_check(x);
        arma::cx_double product = 1.0;
        for (int i = 0; i < size; ++i)
            for (int j = i + 1; j < size; ++j)
                product *= x(j) - x(i);
        const arma::cx_double det = arma::det(vandermonde_matrix(x));
        CHECK(std::abs(c.product_formula - product) <= 1e-12 * std::abs(product));
        CHECK(std::abs(c.lu_determinant - det) <= 1e-9 * std::abs(det));
        CHECK(c.relative_error <= 1e-9);
    }
}

TEST_CASE("LU determinant matches Armadillo on dense matrices")
{
    arma::arma_rng::set_seed(3);
    for (int n = 1; n <= 9; ++n)
    {
        const arma::cx_mat a(n, n, arma::fill::randn);
        const arma::cx_double d = arma::det(a);
        CHECK(std::abs(lu_determinant(a) - d) <= 1e-10 * std::abs(d));
    }
    CHECK(lu_determinant(arma::cx_mat(3, 3, arma::fill::ones)) == arma::cx_double(0.0, 0.0));
}

TEST_CASE("S matrix columns")
{
    const int n = 2;
    const ExtendedChannel e = siso3(2 * n + 1, 4);
    const arma::cx_mat s = build_S_matrix(e, n);
    const arma::cx_mat t = build_T_k3(e).dense();
    const arma::cx_mat d = arma::inv(H(e, 1, 1)) * H(e, 1, 2);
    const arma::cx_vec w(2 * n + 1, arma::fill::ones);
    arma::cx_mat expected = arma::join_rows(w, t * w, t * t * w);
    expected = arma::join_rows(expected, d * w, d * t * w);
    CHECK(oracle::rel_diff(s, expected) < 1e-13);
    CHECK_THROWS_AS(build_S_matrix(siso3(4, 1), n), ShapeError);
}

TEST_CASE("S is nonsingular on random channels")
{
    for (int n : {1, 2, 3})
        for (std::uint64_t seed = 0; seed < 200; ++seed)
        {
            const arma::cx_mat s = build_S_matrix(siso3(2 * n + 1, 7000 + seed), n);
            const arma::vec sv = arma::svd(s);
            CHECK(sv.min() > 1e-8 * sv.max());
            CHECK(std::abs(arma::det(s)) > 0.0);
        }
}

TEST_CASE("degenerate channels make S singular")
{
    const ExtendedChannel e = siso3(3, 12);

    // D = I: H12 = H11 duplicates w.
    std::vector<BlockDiagonal> links = e.links();
    links[1] = links[0];
    CHECK(probe_rank_raw(build_S_matrix(ExtendedChannel(3, links), 1)).rank < 3);

    // T with equal diagonal entries: every link constant across slots.
    std::vector<BlockDiagonal> flat;
    for (const BlockDiagonal &l : e.links())
        flat.push_back(BlockDiagonal::from_diagonal(arma::cx_vec(3, arma::fill::ones) * l.diagonal()(0)));
    CHECK(probe_rank_raw(build_S_matrix(ExtendedChannel(3, flat), 1)).rank < 3);
}

TEST_CASE("diagonal channels defeat the eigenvector scheme; dense ones do not")
{
    for (int m : {2, 4})
        for (std::uint64_t seed = 0; seed < 25; ++seed)
        {
            const AlignmentReport diag = demonstrate_diagonal_infeasibility(m, seed);
            REQUIRE(diag.receivers.size() == 3);
            CHECK(diag.receivers[0].joint_rank < m);
            CHECK_FALSE(diag.pass());
            if (m == 2)
                CHECK(diag.receivers[0].joint_rank == 1);
            const AlignmentReport dense = dense_channel_control(m, seed);
            CHECK(dense.receivers[0].joint_rank == m);
            CHECK(dense.pass());
        }
    CHECK_THROWS_AS(demonstrate_diagonal_infeasibility(3, 0), ParameterError);
}

TEST_CASE("rank probes")
{
    arma::cx_mat a(4, 3, arma::fill::zeros);
    a(0, 0) = 1e6;
    a(1, 1) = 1e-6;
    a(2, 2) = 1.0;
    // Column scaling does not change the decided rank.
    CHECK(probe_rank(a).rank == 3);
    CHECK(probe_rank_raw(a).rank == 2);
    a.col(2) = a.col(0) * 3.0;
    const RankProbe p = probe_rank(a);
    CHECK(p.rank == 2);
    CHECK(p.rows == 4);
    CHECK(p.cols == 3);
    const nlohmann::json j = probe_to_json(p, 9);
    CHECK(j["seed"] == 9);
    CHECK(j["rank"] == 2);
    CHECK(j["sigma_max"].get<double>() >= j["sigma_min"].get<double>());
}

TEST_CASE("complements, spans and containment")
{
    arma::arma_rng::set_seed(5);
    const arma::cx_mat a(6, 2, arma::fill::randn);
    const arma::cx_mat q = orthogonal_complement(a);
    CHECK(q.n_cols == 4);
    CHECK(arma::norm(q.t() * a, "fro") < 1e-12);
    CHECK(arma::norm(q.t() * q - arma::eye<arma::cx_mat>(4, 4), "fro") < 1e-12);
    const arma::cx_mat mix = a * arma::cx_mat(2, 2, arma::fill::randn);
    CHECK(subspace_distance(a, mix) < 1e-10);
    CHECK(subspace_distance(a, arma::cx_mat(6, 2, arma::fill::randn)) > 0.1);
    // Containment is column membership, not span membership.
    CHECK(containment_residual(a.col(1), a) == 0.0);
    CHECK(containment_residual(mix.col(0), a) > 0.1);
    CHECK(relative_difference(a, a) == 0.0);
    CHECK(orthonormal_basis(arma::join_rows(a, mix)).n_cols == 2);
}
