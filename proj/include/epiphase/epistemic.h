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

#ifndef EPIPHASE_EPISTEMIC_H
#define EPIPHASE_EPISTEMIC_H

#include <span>
#include <stdexcept>
#include <vector>

#include "epiphase/hilbert.h"
#include "epiphase/phase_space.h"

namespace epiphase {

/// Everything that depends only on the dimension: geometry, the chosen
/// transformation frameworks and the phase-point operators.
struct Context {
    PhaseSpace space;
    SpecialSubgroup subgroup;
    PhasePointBasis basis;

    static Context make(int d);
    int dimension() const { return space.dimension(); }
};

/// Classical distribution R^B(alpha|w) of a preparation in striation B.
/// Values are stored per point but always built per line, so they are exactly
/// equal along every line of B.
struct PrepRep {
    int striation = 0;
    RVector values;

    static PrepRep from_lines(const PhaseSpace &space, int striation, std::span<const double> line_values);
    double line_value(const PhaseSpace &space, int line) const;
};

/// Conditional outcome probability R^B(E|alpha). Same layout as PrepRep, but
/// sums to d tr(E) instead of one.
struct MeasRep {
    int striation = 0;
    RVector values;

    static MeasRep from_lines(const PhaseSpace &space, int striation, std::span<const double> line_values);
    double line_value(const PhaseSpace &space, int line) const;
};

/// Transition probabilities R^S(beta|alpha) in framework S, constant on each
/// displacement class delta = beta - S alpha.
struct TransRep {
    SymplecticMatrix symplectic;
    /// One value per displacement class, indexed by the point index of delta.
    RVector class_values;
    /// Expanded table(beta, alpha).
    RMatrix table;

    static TransRep from_classes(const PhaseSpace &space, const SymplecticMatrix &s, RVector class_values);
    double min_entry() const { return class_values.minCoeff(); }
    double max_entry() const { return class_values.maxCoeff(); }
};

/// One representation per striation, indexed by striation id.
using PrepSet = std::vector<PrepRep>;
using MeasSet = std::vector<MeasRep>;
/// One representation per subgroup element, in subgroup order.
using TransSet = std::vector<TransRep>;

/// Framework (B', S_n ... S_1, B) for a whole experiment.
struct Framework {
    int prep_striation = 0;
    std::vector<SymplecticMatrix> chain;
    int meas_striation = 0;

    /// B' == S_n ... S_1 B.
    bool coherent(const PhaseSpace &space) const;
};

/// Raised when a transition table has an entry below -tol.
class NegativeTransition : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class RepCheck { strict, raw };

PrepRep prep_rep(const Context &ctx, const CMatrix &w, int striation);
PrepSet prep_reps(const Context &ctx, const CMatrix &w);
MeasRep meas_rep(const Context &ctx, const CMatrix &e, int striation);
MeasSet meas_reps(const Context &ctx, const CMatrix &e);

/// Average of Q over each displacement class of S. With RepCheck::strict a
/// negative entry raises NegativeTransition: the channel was not unital or S is
/// outside the set for which non-negativity holds.
TransRep trans_rep(const PhaseSpace &space, const TransQuasi &quasi, const SymplecticMatrix &s,
                   RepCheck check = RepCheck::strict, double tol = kDefaultTolerance);
TransRep trans_rep(const Context &ctx, const Channel &channel, const SymplecticMatrix &s,
                   RepCheck check = RepCheck::strict, double tol = kDefaultTolerance);
TransSet trans_reps(const Context &ctx, const TransQuasi &quasi, RepCheck check = RepCheck::strict,
                    double tol = kDefaultTolerance);
TransSet trans_reps(const Context &ctx, const Channel &channel, RepCheck check = RepCheck::strict,
                    double tol = kDefaultTolerance);

/// All (d+1)(d^2-1)^n coherent frameworks with chains of length n drawn from
/// the subgroup, ordered by prep striation then chain lexicographically.
std::vector<Framework> coherent_frameworks(const PhaseSpace &space, const SpecialSubgroup &subgroup,
                                           int chain_length);
/// The remaining frameworks (B' != S_n ... S_1 B). Diagnostic use only.
std::vector<Framework> incoherent_frameworks(const PhaseSpace &space, const SpecialSubgroup &subgroup,
                                             int chain_length);

/// sum R^{B'}(E|beta) R^{S_n} ... R^{S_1} R^B(alpha|w) within one framework.
/// The chain is in application order. Incoherent combinations are rejected
/// unless `allow_incoherent` is set.
double framework_prediction(const PhaseSpace &space, const MeasRep &meas, std::span<const TransRep> chain,
                            const PrepRep &prep, bool allow_incoherent = false);

}  // namespace epiphase

#endif
