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

#include "epiphase/epistemic.h"

#include <functional>
#include <string>

namespace epiphase {

namespace {

RVector broadcast_lines(const PhaseSpace &space, int striation, std::span<const double> line_values) {
    const int d = space.dimension();
    if (striation < 0 || striation > d) {
        throw std::invalid_argument("striation id out of range: " + std::to_string(striation));
    }
    if (static_cast<int>(line_values.size()) != d) {
        throw std::invalid_argument("expected one value per line (" + std::to_string(d) + "), got " +
                                    std::to_string(line_values.size()));
    }
    RVector v(space.point_count());
    for (int i = 0; i < space.point_count(); ++i) {
        v(i) = line_values[static_cast<std::size_t>(space.line_index_through(striation, space.point(i)))];
    }
    return v;
}

double first_point_value(const PhaseSpace &space, const RVector &values, int striation, int line) {
    const Line &l = space.striation(striation).lines.at(static_cast<std::size_t>(line));
    return values(space.index(l.points.front()));
}

void require(const CMatrix &m, OperatorRole role, int d) {
    if (m.rows() != d) {
        throw InvalidOperator(role_name(role) + " operator has dimension " + std::to_string(m.rows()) +
                              ", expected " + std::to_string(d));
    }
    if (auto why = role_violation(m, role)) {
        throw InvalidOperator(role_name(role) + " operator: " + *why);
    }
}

std::vector<double> line_expectations(const Context &ctx, const CMatrix &m, int striation) {
    const int d = ctx.dimension();
    std::vector<double> out;
    for (int line = 0; line < d; ++line) {
        const CVector &psi = ctx.basis.state(striation, line);
        out.push_back((psi.adjoint() * m * psi)(0, 0).real());
    }
    return out;
}

}  // namespace

Context Context::make(int d) {
    PhaseSpace space = PhaseSpace::make(d);
    SpecialSubgroup subgroup = default_special_subgroup(space);
    PhasePointBasis basis(space);
    return Context{std::move(space), std::move(subgroup), std::move(basis)};
}

PrepRep PrepRep::from_lines(const PhaseSpace &space, int striation, std::span<const double> line_values) {
    return PrepRep{striation, broadcast_lines(space, striation, line_values)};
}

double PrepRep::line_value(const PhaseSpace &space, int line) const {
    return first_point_value(space, values, striation, line);
}

MeasRep MeasRep::from_lines(const PhaseSpace &space, int striation, std::span<const double> line_values) {
    return MeasRep{striation, broadcast_lines(space, striation, line_values)};
}

double MeasRep::line_value(const PhaseSpace &space, int line) const {
    return first_point_value(space, values, striation, line);
}

TransRep TransRep::from_classes(const PhaseSpace &space, const SymplecticMatrix &s, RVector class_values) {
    const int n = space.point_count();
    if (class_values.size() != n) {
        throw std::invalid_argument("expected one value per displacement class");
    }
    if (s.dimension() != space.dimension()) {
        throw std::invalid_argument("symplectic matrix over the wrong field");
    }
    RMatrix table(n, n);
    for (int a = 0; a < n; ++a) {
        PhasePoint alpha = space.point(a);
        for (int b = 0; b < n; ++b) {
            table(b, a) = class_values(space.index(displacement(s, alpha, space.point(b))));
        }
    }
    return TransRep{s, std::move(class_values), std::move(table)};
}

bool Framework::coherent(const PhaseSpace &space) const {
    int b = prep_striation;
    for (const auto &s : chain) {
        b = space.map_striation(s, b);
    }
    return b == meas_striation;
}

PrepRep prep_rep(const Context &ctx, const CMatrix &w, int striation) {
    require(w, OperatorRole::density, ctx.dimension());
    std::vector<double> lines = line_expectations(ctx, w, striation);
    for (double &x : lines) {
        x /= ctx.dimension();
    }
    return PrepRep::from_lines(ctx.space, striation, lines);
}

PrepSet prep_reps(const Context &ctx, const CMatrix &w) {
    PrepSet out;
    for (int b = 0; b < ctx.space.striation_count(); ++b) {
        out.push_back(prep_rep(ctx, w, b));
    }
    return out;
}

MeasRep meas_rep(const Context &ctx, const CMatrix &e, int striation) {
    require(e, OperatorRole::povm_element, ctx.dimension());
    return MeasRep::from_lines(ctx.space, striation, line_expectations(ctx, e, striation));
}

MeasSet meas_reps(const Context &ctx, const CMatrix &e) {
    MeasSet out;
    for (int b = 0; b < ctx.space.striation_count(); ++b) {
        out.push_back(meas_rep(ctx, e, b));
    }
    return out;
}

TransRep trans_rep(const PhaseSpace &space, const TransQuasi &quasi, const SymplecticMatrix &s, RepCheck check,
                   double tol) {
    const int n = space.point_count();
    if (quasi.table.rows() != n || quasi.table.cols() != n) {
        throw std::invalid_argument("transition quasiprobability table has the wrong shape");
    }
    RVector classes = RVector::Zero(n);
    for (int m = 0; m < n; ++m) {
        PhasePoint image = s.apply(space.point(m));
        for (int delta = 0; delta < n; ++delta) {
            classes(delta) += quasi.table(space.index(space.add(image, space.point(delta))), m);
        }
    }
    classes /= static_cast<double>(n);
    TransRep rep = TransRep::from_classes(space, s, std::move(classes));
    if (check == RepCheck::strict && rep.min_entry() < -tol) {
        throw NegativeTransition("transition table for S = " + s.to_string() + " has a negative entry " +
                                 std::to_string(rep.min_entry()) +
                                 "; the channel is not unital or S is outside the allowed frameworks");
    }
    return rep;
}

TransRep trans_rep(const Context &ctx, const Channel &channel, const SymplecticMatrix &s, RepCheck check,
                   double tol) {
    return trans_rep(ctx.space, transition_quasi(ctx.basis, channel, tol), s, check, tol);
}

TransSet trans_reps(const Context &ctx, const TransQuasi &quasi, RepCheck check, double tol) {
    TransSet out;
    for (const auto &s : ctx.subgroup.elements()) {
        out.push_back(trans_rep(ctx.space, quasi, s, check, tol));
    }
    return out;
}

TransSet trans_reps(const Context &ctx, const Channel &channel, RepCheck check, double tol) {
    return trans_reps(ctx, transition_quasi(ctx.basis, channel, tol), check, tol);
}

namespace {

std::vector<Framework> frameworks(const PhaseSpace &space, const SpecialSubgroup &subgroup, int chain_length,
                                  bool want_coherent) {
    if (chain_length < 0) {
        throw std::invalid_argument("chain length must be non-negative");
    }
    std::vector<Framework> out;
    std::vector<SymplecticMatrix> chain;
    std::function<void(int)> walk = [&](int prep) {
        if (static_cast<int>(chain.size()) == chain_length) {
            int target = prep;
            for (const auto &s : chain) {
                target = space.map_striation(s, target);
            }
            for (int meas = 0; meas < space.striation_count(); ++meas) {
                if ((meas == target) == want_coherent) {
                    out.push_back(Framework{prep, chain, meas});
                }
            }
            return;
        }
        for (const auto &s : subgroup.elements()) {
            chain.push_back(s);
            walk(prep);
            chain.pop_back();
        }
    };
    for (int prep = 0; prep < space.striation_count(); ++prep) {
        walk(prep);
    }
    return out;
}

}  // namespace

std::vector<Framework> coherent_frameworks(const PhaseSpace &space, const SpecialSubgroup &subgroup,
                                           int chain_length) {
    return frameworks(space, subgroup, chain_length, true);
}

std::vector<Framework> incoherent_frameworks(const PhaseSpace &space, const SpecialSubgroup &subgroup,
                                             int chain_length) {
    return frameworks(space, subgroup, chain_length, false);
}

double framework_prediction(const PhaseSpace &space, const MeasRep &meas, std::span<const TransRep> chain,
                            const PrepRep &prep, bool allow_incoherent) {
    const int n = space.point_count();
    if (meas.values.size() != n || prep.values.size() != n) {
        throw std::invalid_argument("representation size does not match the phase space");
    }
    Framework f{prep.striation, {}, meas.striation};
    RVector v = prep.values;
    for (const TransRep &t : chain) {
        if (t.table.rows() != n) {
            throw std::invalid_argument("transition table size does not match the phase space");
        }
        f.chain.push_back(t.symplectic);
        v = t.table * v;
    }
    if (!allow_incoherent && !f.coherent(space)) {
        throw std::invalid_argument("framework is not coherent: measurement striation " +
                                    std::to_string(meas.striation) + " is not the image of preparation striation " +
                                    std::to_string(prep.striation));
    }
    return meas.values.dot(v);
}

}  // namespace epiphase
