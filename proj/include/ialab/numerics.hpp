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

#ifndef IALAB_NUMERICS_HPP
#define IALAB_NUMERICS_HPP

#include <armadillo>
#include <complex>

namespace ialab
{

// Singular values at or above kRankTolerance * sigma_max count toward rank.
inline constexpr double kRankTolerance = 1e-8;

// Relative residual allowed on alignment equalities and containments.
inline constexpr double kAlignmentTolerance = 1e-9;

// Largest principal-angle sine allowed between spans claimed equal.
inline constexpr double kSpanTolerance = 1e-8;

// Singular values and the rank decided from them.
struct RankProbe
{
    arma::uword rows = 0;
    arma::uword cols = 0;
    arma::vec singular_values; // descending
    double tolerance = kRankTolerance;
    int rank = 0;

    double sigma_max() const { return singular_values.is_empty() ? 0.0 : singular_values.front(); }
    double sigma_min() const { return singular_values.is_empty() ? 0.0 : singular_values.back(); }
};

// Scales every column to unit 2-norm. Zero columns are left as zero.
arma::cx_mat normalize_columns(const arma::cx_mat &a);

// Rank of `a` after column equilibration (rank-preserving; the alignment
// constructions use unnormalized power columns spanning many decades).
RankProbe probe_rank(const arma::cx_mat &a, double tolerance = kRankTolerance);

// Rank of `a` exactly as given, without equilibration.
RankProbe probe_rank_raw(const arma::cx_mat &a, double tolerance = kRankTolerance);

// Orthonormal basis of the column space of `a`.
arma::cx_mat orthonormal_basis(const arma::cx_mat &a, double tolerance = kRankTolerance);

// Orthonormal basis of the orthogonal complement of the column space of `a`.
arma::cx_mat orthogonal_complement(const arma::cx_mat &a, double tolerance = kRankTolerance);

// Sine of the largest principal angle between span(a) and span(b); 1 when ranks differ.
double subspace_distance(const arma::cx_mat &a, const arma::cx_mat &b, double tolerance = kRankTolerance);

// ||a - b||_F / max(||a||_F, ||b||_F).
double relative_difference(const arma::cx_mat &a, const arma::cx_mat &b);

// Largest over columns p of `subset` of min over columns q of `superset` of ||p - q|| / ||p||.
double containment_residual(const arma::cx_mat &subset, const arma::cx_mat &superset);

// Determinant by LU factorization with partial pivoting.
std::complex<double> lu_determinant(arma::cx_mat a);

} // namespace ialab

#endif
