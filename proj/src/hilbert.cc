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

#include "epiphase/hilbert.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace epiphase {

namespace {

double hermiticity_error(const CMatrix &m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

std::string fmt_double(double x) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << x;
    return out.str();
}

}  // namespace

std::string role_name(OperatorRole role) {
    switch (role) {
        case OperatorRole::density:
            return "density";
        case OperatorRole::povm_element:
            return "povm-element";
        case OperatorRole::unitary:
            return "unitary";
        case OperatorRole::phase_point:
            return "phase-point";
        case OperatorRole::hermitian:
            return "generic-hermitian";
    }
    return "unknown";
}

std::optional<std::string> role_violation(const CMatrix &m, OperatorRole role, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        return "matrix is not square and non-empty";
    }
    const auto n = m.rows();
    if (role == OperatorRole::unitary) {
        double err = (m.adjoint() * m - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
        if (err > tol) {
            return "unitarity violated: max |U^dag U - I| = " + fmt_double(err);
        }
        return std::nullopt;
    }
    double herm = hermiticity_error(m);
    if (herm > tol) {
        return "hermiticity violated: max |M - M^dag| = " + fmt_double(herm);
    }
    if (role == OperatorRole::density || role == OperatorRole::phase_point) {
        double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
        if (tr_err > tol) {
            return "unit trace violated: |tr M - 1| = " + fmt_double(tr_err);
        }
    }
    if (role == OperatorRole::density || role == OperatorRole::povm_element) {
        CMatrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
        double lo = solver.eigenvalues().minCoeff();
        double hi = solver.eigenvalues().maxCoeff();
        if (lo < -tol) {
            return "positive semidefiniteness violated: smallest eigenvalue " + fmt_double(lo);
        }
        if (role == OperatorRole::povm_element && hi > 1.0 + tol) {
            return "POVM element eigenvalue exceeds 1: largest eigenvalue " + fmt_double(hi);
        }
    }
    return std::nullopt;
}

OperatorMatrix OperatorMatrix::make(CMatrix entries, OperatorRole role, double tol) {
    if (auto why = role_violation(entries, role, tol)) {
        throw InvalidOperator(role_name(role) + " operator: " + *why);
    }
    return OperatorMatrix{std::move(entries), role};
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Channel Channel::from_kraus(std::vector<CMatrix> kraus) {
    if (kraus.empty()) {
        throw InvalidOperator("channel needs at least one Kraus operator");
    }
    const auto d = kraus.front().rows();
    for (const auto &k : kraus) {
        if (k.rows() != d || k.cols() != d) {
            throw InvalidOperator("Kraus operators must all be square of the same dimension");
        }
    }
    Channel c;
    c.d_ = static_cast<int>(d);
    c.kraus_ = kraus;
    c.map_ = [ks = std::move(kraus)](const CMatrix &x) {
        CMatrix out = CMatrix::Zero(x.rows(), x.cols());
        for (const auto &k : ks) {
            out.noalias() += k * x * k.adjoint();
        }
        return out;
    };
    c.name_ = "kraus";
    return c;
}

Channel Channel::unitary(const CMatrix &u) {
    if (auto why = role_violation(u, OperatorRole::unitary)) {
        throw InvalidOperator("unitary channel: " + *why);
    }
    Channel c = from_kraus({u});
    c.name_ = "unitary";
    return c;
}

Channel Channel::identity(int d) {
    Channel c = from_kraus({CMatrix::Identity(d, d)});
    c.name_ = "identity";
    return c;
}

Channel Channel::depolarizing(int d, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
    }
    // Weyl operators X^a Z^b form a unitary error basis.
    const double two_pi = 2.0 * std::numbers::pi;
    CMatrix shift = CMatrix::Zero(d, d);
    CMatrix clock = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        shift((k + 1) % d, k) = 1.0;
        clock(k, k) = std::polar(1.0, two_pi * k / d);
    }
    std::vector<CMatrix> kraus;
    const double weight = p / (d * d);
    CMatrix xa = CMatrix::Identity(d, d);
    for (int a = 0; a < d; ++a) {
        CMatrix zb = CMatrix::Identity(d, d);
        for (int b = 0; b < d; ++b) {
            double w = (a == 0 && b == 0) ? 1.0 - p + weight : weight;
            if (w > 0.0) {
                kraus.push_back(std::sqrt(w) * xa * zb);
            }
            zb = clock * zb;
        }
        xa = shift * xa;
    }
    Channel c = from_kraus(std::move(kraus));
    c.name_ = "depolarizing";
    return c;
}

Channel Channel::inversion() {
    return linear_map(
        2, [](const CMatrix &x) -> CMatrix { return x.trace() * CMatrix::Identity(2, 2) - x; }, "inversion");
}

Channel Channel::linear_map(int d, Map map, std::string name) {
    Channel c;
    c.d_ = d;
    c.map_ = std::move(map);
    c.name_ = std::move(name);
    return c;
}

Channel Channel::compose(const Channel &after, const Channel &before) {
    if (after.d_ != before.d_) {
        throw InvalidOperator("cannot compose channels of different dimension");
    }
    if (after.kraus_ && before.kraus_) {
        std::vector<CMatrix> ks;
        for (const auto &a : *after.kraus_) {
            for (const auto &b : *before.kraus_) {
                ks.push_back(a * b);
            }
        }
        Channel c = from_kraus(std::move(ks));
        c.name_ = after.name_ + " o " + before.name_;
        return c;
    }
    return linear_map(
        after.d_, [a = after.map_, b = before.map_](const CMatrix &x) { return a(b(x)); },
        after.name_ + " o " + before.name_);
}

double Channel::trace_preservation_error() const {
    double err = 0.0;
    for (int k = 0; k < d_; ++k) {
        for (int l = 0; l < d_; ++l) {
            CMatrix e = CMatrix::Zero(d_, d_);
            e(k, l) = 1.0;
            Complex t = apply(e).trace();
            err = std::max(err, std::abs(t - Complex(k == l ? 1.0 : 0.0, 0.0)));
        }
    }
    return err;
}

double Channel::unitality_error() const {
    CMatrix id = CMatrix::Identity(d_, d_);
    return (apply(id) - id).cwiseAbs().maxCoeff();
}

CMatrix phase_point_operator(const PhaseSpace &space, PhasePoint alpha) {
    const int d = space.dimension();
    if (d == 2) {
        double sx = alpha.p % 2 ? -1.0 : 1.0;
        double sy = (alpha.q + alpha.p) % 2 ? -1.0 : 1.0;
        double sz = alpha.q % 2 ? -1.0 : 1.0;
        return 0.5 * (CMatrix::Identity(2, 2) + sx * pauli_x() + sy * pauli_y() + sz * pauli_z());
    }
    CMatrix a = CMatrix::Zero(d, d);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            if (space.reduce(2 * alpha.q - k - l) == 0) {
                a(k, l) = std::polar(1.0, two_pi * space.reduce(static_cast<long long>(alpha.p) * (k - l)) / d);
            }
        }
    }
    return a;
}

CMatrix line_projector(const PhaseSpace &space, const Line &line, double tol) {
    const int d = space.dimension();
    CMatrix sum = CMatrix::Zero(d, d);
    for (const PhasePoint &pt : line.points) {
        sum += phase_point_operator(space, pt);
    }
    CMatrix proj = sum / static_cast<double>(d);
    double idempotence = (proj * proj - proj).cwiseAbs().maxCoeff();
    double trace_err = std::abs(proj.trace() - Complex(1.0, 0.0));
    if (idempotence > tol || trace_err > tol || hermiticity_error(proj) > tol) {
        throw std::logic_error("line projector is not a rank-one projector for line (" + std::to_string(line.a) + "," +
                               std::to_string(line.b) + "," + std::to_string(line.c) + ")");
    }
    return proj;
}

CVector projector_state(const CMatrix &projector) {
    Eigen::Index j = 0;
    projector.diagonal().real().maxCoeff(&j);
    double norm = std::sqrt(projector(j, j).real());
    return projector.col(j) / norm;
}

PhasePointBasis::PhasePointBasis(const PhaseSpace &space) : d_(space.dimension()) {
    for (const PhasePoint &pt : space.points()) {
        ops_.push_back(phase_point_operator(space, pt));
    }
    for (const Striation &st : space.striations()) {
        std::vector<CMatrix> projs;
        std::vector<CVector> states;
        for (const Line &line : st.lines) {
            projs.push_back(line_projector(space, line));
            states.push_back(projector_state(projs.back()));
        }
        projectors_.push_back(std::move(projs));
        states_.push_back(std::move(states));
    }
}

RVector wigner(const PhasePointBasis &basis, const CMatrix &w) {
    const int d = basis.dimension();
    RVector q(d * d);
    for (int i = 0; i < d * d; ++i) {
        q(i) = (basis.op(i).transpose().cwiseProduct(w)).sum().real() / d;
    }
    return q;
}

CMatrix from_wigner(const PhasePointBasis &basis, const RVector &q) {
    const int d = basis.dimension();
    CMatrix w = CMatrix::Zero(d, d);
    for (int i = 0; i < d * d; ++i) {
        w += q(i) * basis.op(i);
    }
    return w;
}

TransQuasi transition_quasi(const PhasePointBasis &basis, const Channel &channel, double tol) {
    const int d = basis.dimension();
    if (channel.dimension() != d) {
        throw InvalidOperator("channel dimension " + std::to_string(channel.dimension()) +
                              " does not match phase space dimension " + std::to_string(d));
    }
    if (double e = channel.trace_preservation_error(); e > tol) {
        throw InvalidOperator("channel is not trace preserving: error " + fmt_double(e));
    }
    if (double e = channel.unitality_error(); e > tol) {
        throw InvalidOperator("channel is not unital: max |E(I) - I| = " + fmt_double(e));
    }
    const int n = d * d;
    TransQuasi out{RMatrix(n, n)};
    for (int a = 0; a < n; ++a) {
        CMatrix image = channel.apply(basis.op(a));
        for (int b = 0; b < n; ++b) {
            out.table(b, a) = (basis.op(b).transpose().cwiseProduct(image)).sum().real() / d;
        }
    }
    return out;
}

double quantum_probability(const CMatrix &e, std::span<const Channel> channels, const CMatrix &w) {
    if (e.rows() != w.rows() || e.cols() != w.cols() || e.rows() != e.cols()) {
        throw InvalidOperator("dimension mismatch between POVM element and state");
    }
    CMatrix state = w;
    for (const Channel &c : channels) {
        if (c.dimension() != w.rows()) {
            throw InvalidOperator("dimension mismatch between channel and state");
        }
        state = c.apply(state);
    }
    return (e * state).trace().real();
}

}  // namespace epiphase
