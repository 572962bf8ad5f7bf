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

#ifndef EPIPHASE_RECONSTRUCT_H
#define EPIPHASE_RECONSTRUCT_H

#include <optional>
#include <string>
#include <vector>

#include "epiphase/epistemic.h"

namespace epiphase {

/// Deviation of a table from its random (minimal-knowledge) part.
struct NonrandomTable {
    RVector values;
};

/// R(alpha) - 1/d^2.
NonrandomTable nonrandom(const PrepRep &rep);
/// R(E|alpha) - (1/d^2) sum_gamma R(E|gamma).
NonrandomTable nonrandom(const MeasRep &rep);
/// R^S(beta|alpha) - 1/d^2, flattened column-major as table(beta, alpha).
NonrandomTable nonrandom(const TransRep &rep);
/// P - (1/d) tr E.
inline double nonrandom_p(double p, double tr_e_over_d) { return p - tr_e_over_d; }

/// (1/d) tr E recovered from a measurement's representations.
double random_part(const PhaseSpace &space, const MeasSet &meas);

/// Hilbert-space description the record was derived from.
struct Oracle {
    CMatrix w;
    std::vector<Channel> channels;
    CMatrix e;
};

/// Preparation, transformation chain and measurement outcome, each given in
/// every framework.
struct ExperimentRecord {
    PrepSet prep;
    /// One TransSet per step, in application order.
    std::vector<TransSet> chain;
    MeasSet meas;
    std::optional<Oracle> oracle;
};

/// Builds every table from the Hilbert-space objects and attaches them as the
/// oracle. Throws InvalidOperator if an input breaks its role.
ExperimentRecord make_record(const Context &ctx, const CMatrix &w, std::vector<Channel> channels, const CMatrix &e,
                             double tol = kDefaultTolerance);

/// tr[E E_n(...E_1(w))] from the attached oracle.
double oracle_probability(const ExperimentRecord &record);

/// Throws std::invalid_argument naming the first missing framework table.
void require_complete(const Context &ctx, const ExperimentRecord &record);

/// Quantum probability rebuilt by summing the nonrandom parts of every coherent
/// framework's classical prediction: P = (1/d) tr E + sum_F [P^F - (1/d) tr E].
///
/// Predictions are propagated in the d-dimensional space of functions that are
/// constant on the lines of the current striation, and frameworks sharing a
/// chain product are accumulated together.
double reconstruct_probability(const Context &ctx, const ExperimentRecord &record);

/// Same sum, evaluated framework by framework with framework_prediction().
double reconstruct_by_enumeration(const Context &ctx, const ExperimentRecord &record);

/// Q = 1/d^2 + sum_S [R^S - 1/d^2]. Throws unless every subgroup element has
/// exactly one table.
TransQuasi quasi_from_reps(const Context &ctx, const TransSet &reps);

/// Both sides of a composition rule, one entry per target framework, and the
/// largest absolute difference.
struct RuleCheck {
    std::vector<RVector> lhs;
    std::vector<RVector> rhs;
    double residual = 0.0;
};

struct ScalarCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// Preparation after a transformation, per target striation B':
/// 1/d^2 + sum_{(S,B): SB = B'} Delta[sum_alpha R^S(beta|alpha) R^B(alpha|w)].
std::vector<RVector> predict_prep_trans(const Context &ctx, const PrepSet &prep, const TransSet &trans);
RuleCheck compose_prep_trans(const Context &ctx, const PrepSet &prep, const TransSet &trans, const PrepSet &result);

/// E2 after E1, per target S, flattened table(gamma, alpha). Pairs are those
/// with S2 S1 = S, where S1 belongs to the transformation applied first.
std::vector<RMatrix> predict_trans_trans(const Context &ctx, const TransSet &first, const TransSet &second);
RuleCheck compose_trans_trans(const Context &ctx, const TransSet &first, const TransSet &second,
                              const TransSet &result);

/// Outcome E reached through a transformation, per target striation B':
/// (1/d) tr E + sum_{(B,S): S^-1 B = B'} Delta[sum_beta R^B(E|beta) R^S(beta|alpha)].
std::vector<RVector> predict_trans_meas(const Context &ctx, const TransSet &trans, const MeasSet &meas);
RuleCheck compose_trans_meas(const Context &ctx, const TransSet &trans, const MeasSet &meas, const MeasSet &result);

/// P(E|w) = (1/d) tr E + sum_B Delta[sum_alpha R^B(E|alpha) R^B(alpha|w)].
double predict_prep_meas(const Context &ctx, const PrepSet &prep, const MeasSet &meas);
ScalarCheck compose_prep_meas(const Context &ctx, const PrepSet &prep, const MeasSet &meas, double probability);

struct PurityVerdict {
    double purity_sum = 0.0;
    double bound = 0.0;
    bool pass = false;
    /// True only for d = 2, where the bound is also sufficient.
    bool complete = false;
    std::string label;
};

/// sum_{B,alpha} R^B(alpha|w)^2 <= 2/d (+ slack). Throws std::invalid_argument
/// if a striation is missing, a table is not line-constant, or a table is not
/// normalized within `norm_tol`.
PurityVerdict validate_preparation(const PhaseSpace &space, const PrepSet &prep, double slack = 1e-12,
                                   double norm_tol = kDefaultTolerance);

/// Measurement outcome partnered with a preparation: R^B(E|alpha) = d R^B(alpha|w).
MeasSet assumption_a_partner(const PhaseSpace &space, const PrepSet &prep);

/// Tables of the inverse transformation: R^S_inv(beta|alpha) = R^{S^-1}(alpha|beta).
/// Throws std::invalid_argument if the transformation is not invertible
/// (its quasiprobability matrix is not orthogonal within tol).
TransSet assumption_b_inverse(const Context &ctx, const TransSet &reps, double tol = kDefaultTolerance);

}  // namespace epiphase

#endif
