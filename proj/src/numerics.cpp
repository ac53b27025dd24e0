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

#include "ialab/numerics.hpp"

#include "ialab/errors.hpp"

#include <algorithm>
#include <limits>

namespace ialab
{

arma::cx_mat normalize_columns(const arma::cx_mat &a)
{
    arma::cx_mat out = a;
    for (arma::uword c = 0; c < out.n_cols; ++c)
    {
        const double n = arma::norm(out.col(c));
        if (n > 0.0)
            out.col(c) /= n;
    }
    return out;
}

RankProbe probe_rank_raw(const arma::cx_mat &a, double tolerance)
{
    RankProbe probe;
    probe.rows = a.n_rows;
    probe.cols = a.n_cols;
    probe.tolerance = tolerance;
    if (a.is_empty())
        return probe;
    if (!arma::svd(probe.singular_values, a))
        throw Error("SVD failed to converge");
    const double cutoff = tolerance * probe.sigma_max();
    probe.rank = 0;
    if (probe.sigma_max() > 0.0)
        for (double s : probe.singular_values)
            if (s >= cutoff)
                ++probe.rank;
    return probe;
}

RankProbe probe_rank(const arma::cx_mat &a, double tolerance)
{
    return probe_rank_raw(normalize_columns(a), tolerance);
}

namespace
{

struct FullSvd
{
    arma::cx_mat u;
    arma::vec s;
    int rank = 0;
};

FullSvd full_svd(const arma::cx_mat &a, double tolerance)
{
    FullSvd out;
    arma::cx_mat v;
    const arma::cx_mat scaled = normalize_columns(a);
    if (!arma::svd(out.u, out.s, v, scaled, "std"))
        throw Error("SVD failed to converge");
    if (!out.s.is_empty() && out.s.front() > 0.0)
        out.rank = static_cast<int>(arma::accu(out.s >= tolerance * out.s.front()));
    return out;
}

} // namespace

arma::cx_mat orthonormal_basis(const arma::cx_mat &a, double tolerance)
{
    if (a.n_cols == 0)
        return arma::cx_mat(a.n_rows, 0);
    const FullSvd f = full_svd(a, tolerance);
    if (f.rank == 0)
        return arma::cx_mat(a.n_rows, 0);
    return f.u.cols(0, f.rank - 1);
}

arma::cx_mat orthogonal_complement(const arma::cx_mat &a, double tolerance)
{
    if (a.n_cols == 0)
        return arma::eye<arma::cx_mat>(a.n_rows, a.n_rows);
    const FullSvd f = full_svd(a, tolerance);
    if (f.rank >= static_cast<int>(a.n_rows))
        return arma::cx_mat(a.n_rows, 0);
    return f.u.cols(f.rank, a.n_rows - 1);
}

double subspace_distance(const arma::cx_mat &a, const arma::cx_mat &b, double tolerance)
{
    if (a.n_rows != b.n_rows)
        throw ShapeError("subspace_distance: row mismatch");
    const arma::cx_mat qa = orthonormal_basis(a, tolerance);
    const arma::cx_mat qb = orthonormal_basis(b, tolerance);
    if (qa.n_cols != qb.n_cols)
        return 1.0;
    if (qa.n_cols == 0)
        return 0.0;
    const arma::cx_mat residual = qb - qa * (qa.t() * qb);
    return std::min(1.0, arma::norm(residual, 2));
}

double relative_difference(const arma::cx_mat &a, const arma::cx_mat &b)
{
    if (arma::size(a) != arma::size(b))
        throw ShapeError("relative_difference: shape mismatch");
    const double scale = std::max(arma::norm(a, "fro"), arma::norm(b, "fro"));
    if (scale == 0.0)
        return 0.0;
    return arma::norm(a - b, "fro") / scale;
}

double containment_residual(const arma::cx_mat &subset, const arma::cx_mat &superset)
{
    if (subset.n_rows != superset.n_rows)
        throw ShapeError("containment_residual: row mismatch");
    double worst = 0.0;
    for (arma::uword p = 0; p < subset.n_cols; ++p)
    {
        const double pn = arma::norm(subset.col(p));
        double best = std::numeric_limits<double>::infinity();
        for (arma::uword q = 0; q < superset.n_cols; ++q)
            best = std::min(best, arma::norm(subset.col(p) - superset.col(q)));
        worst = std::max(worst, pn > 0.0 ? best / pn : best);
    }
    return worst;
}

std::complex<double> lu_determinant(arma::cx_mat a)
{
    if (a.n_rows != a.n_cols)
        throw ShapeError("determinant of a non-square matrix");
    const arma::uword n = a.n_rows;
    std::complex<double> det(1.0, 0.0);
    for (arma::uword k = 0; k < n; ++k)
    {
        arma::uword pivot = k;
        for (arma::uword r = k + 1; r < n; ++r)
            if (std::abs(a(r, k)) > std::abs(a(pivot, k)))
                pivot = r;
        if (a(pivot, k) == std::complex<double>(0.0, 0.0))
            return {0.0, 0.0};
        if (pivot != k)
        {
            a.swap_rows(pivot, k);
            det = -det;
        }
        det *= a(k, k);
        for (arma::uword r = k + 1; r < n; ++r)
        {
            const std::complex<double> factor = a(r, k) / a(k, k);
            for (arma::uword c = k + 1; c < n; ++c)
                a(r, c) -= factor * a(k, c);
        }
    }
    return det;
}

} // namespace ialab
