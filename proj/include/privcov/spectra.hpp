//
// Copyright 2026 The privcov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRIVCOV_SPECTRA_HPP_
#define PRIVCOV_SPECTRA_HPP_

#include <Eigen/Dense>

namespace privcov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Full SVD M = left * diag(singular_values) * right^T with the singular
// values sorted nonincreasing and both factors orthogonal.
struct SvdTriple {
  Matrix left;
  Vector singular_values;
  Matrix right;

  Matrix reconstruct() const {
    return left * singular_values.asDiagonal() * right.transpose();
  }
};

// Throws InputError unless M is square with finite entries.
void require_square_finite(const Matrix& m, const char* who);

// Full SVD of a square matrix with finite entries.
SvdTriple svd(const Matrix& m);

// Schatten p-norm: the l_p norm of the singular value vector. p must be
// >= 1; p = infinity gives the spectral norm, p = 1 the nuclear norm,
// p = 2 the Frobenius norm.
double schatten_norm(const Matrix& m, double p);

// Same, evaluated on precomputed singular values.
double schatten_norm_from_singular_values(const Vector& sigma, double p);

double nuclear_norm(const Matrix& m);
double spectral_norm(const Matrix& m);

// Euclidean projection of an entrywise-nonnegative vector s onto
// {w >= 0, sum w <= r}. Returns s unchanged when it is already inside.
// Soft-thresholding with the threshold located by sorting.
Vector project_l1_ball(const Vector& s, double r);

// Frobenius projection of M onto the nuclear-norm ball of radius r:
// SVD, project the spectrum onto the l1 ball, reassemble.
Matrix project_nuclear_ball(const Matrix& m, double r);

}  // namespace privcov

#endif  // PRIVCOV_SPECTRA_HPP_
