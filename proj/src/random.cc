// Copyright 2026 The Epiphase Authors.
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

#include "epiphase/random.h"

#include <cmath>

namespace epiphase {

namespace {

CMatrix ginibre(int rows, int cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            double re = normal(rng);
            double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

CMatrix random_unitary(int d, Rng &rng) {
    CMatrix g = ginibre(d, d, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        Complex diag = r(j, j);
        double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(j) *= diag / mag;
        }
    }
    return q;
}

CMatrix random_density(int d, Rng &rng) {
    std::uniform_int_distribution<int> rank_dist(1, d);
    CMatrix g = ginibre(d, rank_dist(rng), rng);
    CMatrix w = g * g.adjoint();
    w /= w.trace();
    return 0.5 * (w + w.adjoint());
}

CMatrix random_povm_element(int d, Rng &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CMatrix u = random_unitary(d, rng);
    RVector lambda(d);
    for (int i = 0; i < d; ++i) {
        lambda(i) = unit(rng);
    }
    CMatrix e = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
    return 0.5 * (e + e.adjoint());
}

Channel random_unital_channel(int d, Rng &rng, int terms) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> weights;
    double total = 0.0;
    for (int i = 0; i < terms; ++i) {
        weights.push_back(unit(rng) + 1e-3);
        total += weights.back();
    }
    std::vector<CMatrix> kraus;
    for (int i = 0; i < terms; ++i) {
        kraus.push_back(std::sqrt(weights[static_cast<std::size_t>(i)] / total) * random_unitary(d, rng));
    }
    return Channel::from_kraus(std::move(kraus));
}

SymplecticMatrix random_symplectic(const PhaseSpace &space, Rng &rng) {
    const auto &group = space.symplectic_group();
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    return group[pick(rng)];
}

}  // namespace epiphase
