// SPDX-License-Identifier: Apache-2.0
//
// pskcap - capacity of hard-decision detected PSK in the low-SNR regime
// Copyright (C) 2026 The pskcap Authors
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

#include "pskcap/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <numbers>
#include <stdexcept>

namespace pskcap
{

namespace
{

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
// orthogonal polynomial family, weights mu0 * (first eigenvector component)^2.
GaussRule golub_welsch(const Eigen::VectorXd &diag, const Eigen::VectorXd &offdiag, double mu0)
{
    const auto n = diag.size();
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        jacobi(i, i) = diag(i);
        if (i + 1 < n)
        {
            jacobi(i, i + 1) = offdiag(i);
            jacobi(i + 1, i) = offdiag(i);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Gauss rule: eigen decomposition failed");

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        rule.nodes[i] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

} // namespace

GaussRule gauss_laguerre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_laguerre: need at least one node");
    Eigen::VectorXd diag(n), off(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i)
        diag(i) = 2.0 * i + 1.0;
    for (int i = 1; i < n; ++i)
        off(i - 1) = i;
    return golub_welsch(diag, off, 1.0);
}

GaussRule gauss_hermite(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_hermite: need at least one node");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off(n > 1 ? n - 1 : 0);
    for (int i = 1; i < n; ++i)
        off(i - 1) = std::sqrt(0.5 * i);
    return golub_welsch(diag, off, std::sqrt(std::numbers::pi));
}

} // namespace pskcap
