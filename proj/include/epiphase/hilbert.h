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

#ifndef EPIPHASE_HILBERT_H
#define EPIPHASE_HILBERT_H

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "epiphase/phase_space.h"

namespace epiphase {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultTolerance = 1e-9;

enum class OperatorRole { density, povm_element, unitary, phase_point, hermitian };

std::string role_name(OperatorRole role);

/// Thrown when an operator or channel breaks the invariant of its role. The
/// message names the violated invariant.
class InvalidOperator : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Description of the first invariant of `role` that `m` breaks, if any.
std::optional<std::string> role_violation(const CMatrix &m, OperatorRole role, double tol = kDefaultTolerance);

/// A square complex matrix tagged with what it represents.
struct OperatorMatrix {
    CMatrix entries;
    OperatorRole role = OperatorRole::hermitian;

    /// Validates `entries` against `role`; throws InvalidOperator on failure.
    static OperatorMatrix make(CMatrix entries, OperatorRole role, double tol = kDefaultTolerance);
    int dimension() const { return static_cast<int>(entries.rows()); }
};

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// Dimension-preserving linear map on operators.
///
/// Most channels carry Kraus operators. The qubit inversion has no Kraus form
/// and is instead defined directly by its action on the phase-point operators;
/// such maps report linear_on_wigner() == true.
class Channel {
   public:
    using Map = std::function<CMatrix(const CMatrix &)>;

    static Channel from_kraus(std::vector<CMatrix> kraus);
    static Channel unitary(const CMatrix &u);
    static Channel identity(int d);
    /// Depolarizing channel X -> (1 - p) X + p tr(X) I / d, in Kraus form.
    static Channel depolarizing(int d, double p);
    /// Antipodal map of the Bloch sphere, X -> tr(X) I - X (qubit only).
    static Channel inversion();
    static Channel linear_map(int d, Map map, std::string name);

    /// `after` applied to the output of `before`.
    static Channel compose(const Channel &after, const Channel &before);

    int dimension() const { return d_; }
    const std::string &name() const { return name_; }
    CMatrix apply(const CMatrix &x) const { return map_(x); }
    const std::optional<std::vector<CMatrix>> &kraus() const { return kraus_; }
    bool linear_on_wigner() const { return !kraus_.has_value(); }

    /// max |tr E(|k><l|) - delta_kl|.
    double trace_preservation_error() const;
    /// max |E(I) - I|.
    double unitality_error() const;

   private:
    int d_ = 0;
    Map map_;
    std::optional<std::vector<CMatrix>> kraus_;
    std::string name_;
};

/// Phase-point operator A_alpha. Hermitian, unit trace, tr(A_a A_b) = d delta_ab.
CMatrix phase_point_operator(const PhaseSpace &space, PhasePoint alpha);

/// (1/d) sum over the line of A_alpha: the rank-one projector |psi_l><psi_l|.
/// Throws std::logic_error if the average fails to be a rank-one projector.
CMatrix line_projector(const PhaseSpace &space, const Line &line, double tol = kDefaultTolerance);

/// Unit vector spanning a rank-one projector (global phase fixed by making the
/// largest component real and positive).
CVector projector_state(const CMatrix &projector);

/// Phase-point operators and the striation bases of one phase space, computed
/// once.
class PhasePointBasis {
   public:
    explicit PhasePointBasis(const PhaseSpace &space);

    int dimension() const { return d_; }
    const CMatrix &op(int point_index) const { return ops_[static_cast<std::size_t>(point_index)]; }
    const CMatrix &projector(int striation, int line) const {
        return projectors_[static_cast<std::size_t>(striation)][static_cast<std::size_t>(line)];
    }
    const CVector &state(int striation, int line) const {
        return states_[static_cast<std::size_t>(striation)][static_cast<std::size_t>(line)];
    }

   private:
    int d_ = 0;
    std::vector<CMatrix> ops_;
    std::vector<std::vector<CMatrix>> projectors_;
    std::vector<std::vector<CVector>> states_;
};

/// Discrete Wigner function Q(alpha|w) = (1/d) tr(A_alpha w), indexed by point.
RVector wigner(const PhasePointBasis &basis, const CMatrix &w);
/// Inverse of wigner(): sum_alpha Q(alpha) A_alpha.
CMatrix from_wigner(const PhasePointBasis &basis, const RVector &q);

/// Transition quasiprobabilities Q_E(beta|alpha) = (1/d) tr[A_beta E(A_alpha)].
/// table(beta, alpha); rows and columns sum to one for unital channels.
struct TransQuasi {
    RMatrix table;
};

/// Throws InvalidOperator if the channel is not trace preserving or not unital.
TransQuasi transition_quasi(const PhasePointBasis &basis, const Channel &channel, double tol = kDefaultTolerance);

/// tr[E (E_n o ... o E_1)(w)], channels listed in application order.
double quantum_probability(const CMatrix &e, std::span<const Channel> channels, const CMatrix &w);

}  // namespace epiphase

#endif
