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

#include "epiphase/reconstruct.h"

#include <cmath>
#include <stdexcept>

namespace epiphase {

namespace {

double uniform(const PhaseSpace &space) { return 1.0 / static_cast<double>(space.point_count()); }

/// Tables reordered to match subgroup order.
std::vector<const TransRep *> align(const Context &ctx, const TransSet &reps) {
    const auto &sub = ctx.subgroup;
    std::vector<const TransRep *> out(sub.size(), nullptr);
    for (const TransRep &r : reps) {
        int i = sub.index_of(r.symplectic);
        if (i < 0) {
            throw std::invalid_argument("transition table for S = " + r.symplectic.to_string() +
                                        " is not a framework of the special subgroup");
        }
        if (out[static_cast<std::size_t>(i)] != nullptr) {
            throw std::invalid_argument("duplicate transition table for S = " + r.symplectic.to_string());
        }
        if (r.table.rows() != ctx.space.point_count()) {
            throw std::invalid_argument("transition table has the wrong size");
        }
        out[static_cast<std::size_t>(i)] = &r;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == nullptr) {
            throw std::invalid_argument("missing transition table for framework S = " + sub[i].to_string());
        }
    }
    return out;
}

template <typename Rep>
std::vector<const Rep *> align_striations(const PhaseSpace &space, const std::vector<Rep> &reps, const char *what) {
    std::vector<const Rep *> out(static_cast<std::size_t>(space.striation_count()), nullptr);
    for (const Rep &r : reps) {
        if (r.striation < 0 || r.striation >= space.striation_count()) {
            throw std::invalid_argument(std::string(what) + " table has an invalid striation id");
        }
        if (r.values.size() != space.point_count()) {
            throw std::invalid_argument(std::string(what) + " table has the wrong size");
        }
        if (out[static_cast<std::size_t>(r.striation)] != nullptr) {
            throw std::invalid_argument(std::string(what) + " table duplicated for striation " +
                                        std::to_string(r.striation));
        }
        out[static_cast<std::size_t>(r.striation)] = &r;
    }
    for (std::size_t b = 0; b < out.size(); ++b) {
        if (out[b] == nullptr) {
            throw std::invalid_argument(std::string("missing ") + what + " table for striation " + std::to_string(b));
        }
    }
    return out;
}

double max_abs_diff(const std::vector<RVector> &a, const std::vector<RVector> &b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        r = std::max(r, (a[i] - b[i]).cwiseAbs().maxCoeff());
    }
    return r;
}

RVector flatten(const RMatrix &m) { return Eigen::Map<const RVector>(m.data(), m.size()); }

}  // namespace

NonrandomTable nonrandom(const PrepRep &rep) {
    const double n = static_cast<double>(rep.values.size());
    return {rep.values.array() - 1.0 / n};
}

NonrandomTable nonrandom(const MeasRep &rep) {
    const double n = static_cast<double>(rep.values.size());
    return {rep.values.array() - rep.values.sum() / n};
}

NonrandomTable nonrandom(const TransRep &rep) {
    const double n = static_cast<double>(rep.table.rows());
    return {flatten(rep.table).array() - 1.0 / n};
}

double random_part(const PhaseSpace &space, const MeasSet &meas) {
    if (meas.empty()) {
        throw std::invalid_argument("no measurement tables");
    }
    double total = 0.0;
    for (const MeasRep &m : meas) {
        total += m.values.sum();
    }
    return total / (static_cast<double>(meas.size()) * space.point_count());
}

ExperimentRecord make_record(const Context &ctx, const CMatrix &w, std::vector<Channel> channels, const CMatrix &e,
                             double tol) {
    ExperimentRecord rec;
    rec.prep = prep_reps(ctx, w);
    rec.meas = meas_reps(ctx, e);
    for (const Channel &c : channels) {
        rec.chain.push_back(trans_reps(ctx, c, RepCheck::strict, tol));
    }
    rec.oracle = Oracle{w, std::move(channels), e};
    return rec;
}

double oracle_probability(const ExperimentRecord &record) {
    if (!record.oracle) {
        throw std::invalid_argument("record has no oracle attached");
    }
    return quantum_probability(record.oracle->e, record.oracle->channels, record.oracle->w);
}

void require_complete(const Context &ctx, const ExperimentRecord &record) {
    align_striations(ctx.space, record.prep, "preparation");
    align_striations(ctx.space, record.meas, "measurement");
    for (const TransSet &step : record.chain) {
        align(ctx, step);
    }
}

double reconstruct_probability(const Context &ctx, const ExperimentRecord &record) {
    const PhaseSpace &space = ctx.space;
    const SpecialSubgroup &sub = ctx.subgroup;
    const int d = space.dimension();
    const int nb = space.striation_count();
    const std::size_t ng = sub.size();

    auto prep = align_striations(space, record.prep, "preparation");
    auto meas = align_striations(space, record.meas, "measurement");

    // state[b][g]: summed predictions over all chains from striation b whose
    // product is subgroup element g, as values on the lines of g(b).
    std::vector<std::vector<RVector>> state(static_cast<std::size_t>(nb), std::vector<RVector>(ng));
    for (int b = 0; b < nb; ++b) {
        RVector v(d);
        for (int l = 0; l < d; ++l) {
            v(l) = prep[static_cast<std::size_t>(b)]->line_value(space, l);
        }
        state[static_cast<std::size_t>(b)][0] = v;
    }

    for (const TransSet &step : record.chain) {
        auto reps = align(ctx, step);
        // transfer[s][c](m, l): weight carried from line l of striation c onto
        // line m of S_s c.
        std::vector<std::vector<RMatrix>> transfer(ng, std::vector<RMatrix>(static_cast<std::size_t>(nb)));
        for (std::size_t s = 0; s < ng; ++s) {
            for (int c = 0; c < nb; ++c) {
                int target = space.map_striation(sub[s], c);
                RMatrix k(d, d);
                for (int m = 0; m < d; ++m) {
                    int beta = space.index(space.striation(target).lines[static_cast<std::size_t>(m)].points.front());
                    for (int l = 0; l < d; ++l) {
                        double acc = 0.0;
                        for (const PhasePoint &pt : space.striation(c).lines[static_cast<std::size_t>(l)].points) {
                            acc += reps[s]->table(beta, space.index(pt));
                        }
                        k(m, l) = acc;
                    }
                }
                transfer[s][static_cast<std::size_t>(c)] = std::move(k);
            }
        }
        std::vector<std::vector<RVector>> next(static_cast<std::size_t>(nb), std::vector<RVector>(ng));
        for (int b = 0; b < nb; ++b) {
            for (std::size_t g = 0; g < ng; ++g) {
                const RVector &v = state[static_cast<std::size_t>(b)][g];
                if (v.size() == 0) {
                    continue;
                }
                int c = space.map_striation(sub[g], b);
                for (std::size_t s = 0; s < ng; ++s) {
                    auto h = static_cast<std::size_t>(sub.product_index(s, g));
                    RVector moved = transfer[s][static_cast<std::size_t>(c)] * v;
                    RVector &slot = next[static_cast<std::size_t>(b)][h];
                    if (slot.size() == 0) {
                        slot = std::move(moved);
                    } else {
                        slot += moved;
                    }
                }
            }
        }
        state = std::move(next);
    }

    const double rand = random_part(space, record.meas);
    double frameworks = nb;
    for (std::size_t k = 0; k < record.chain.size(); ++k) {
        frameworks *= static_cast<double>(ng);
    }
    double total = 0.0;
    for (int b = 0; b < nb; ++b) {
        for (std::size_t g = 0; g < ng; ++g) {
            const RVector &v = state[static_cast<std::size_t>(b)][g];
            if (v.size() == 0) {
                continue;
            }
            int target = space.map_striation(sub[g], b);
            double acc = 0.0;
            for (int m = 0; m < d; ++m) {
                acc += meas[static_cast<std::size_t>(target)]->line_value(space, m) * v(m);
            }
            total += d * acc;
        }
    }
    return rand + (total - frameworks * rand);
}

double reconstruct_by_enumeration(const Context &ctx, const ExperimentRecord &record) {
    auto prep = align_striations(ctx.space, record.prep, "preparation");
    auto meas = align_striations(ctx.space, record.meas, "measurement");
    std::vector<std::vector<const TransRep *>> steps;
    for (const TransSet &step : record.chain) {
        steps.push_back(align(ctx, step));
    }
    const double rand = random_part(ctx.space, record.meas);
    double delta = 0.0;
    for (const Framework &f : coherent_frameworks(ctx.space, ctx.subgroup, static_cast<int>(record.chain.size()))) {
        std::vector<TransRep> chain;
        for (std::size_t k = 0; k < f.chain.size(); ++k) {
            chain.push_back(*steps[k][static_cast<std::size_t>(ctx.subgroup.index_of(f.chain[k]))]);
        }
        double p = framework_prediction(ctx.space, *meas[static_cast<std::size_t>(f.meas_striation)], chain,
                                        *prep[static_cast<std::size_t>(f.prep_striation)]);
        delta += nonrandom_p(p, rand);
    }
    return rand + delta;
}

TransQuasi quasi_from_reps(const Context &ctx, const TransSet &reps) {
    auto aligned = align(ctx, reps);
    const int n = ctx.space.point_count();
    const double u = uniform(ctx.space);
    RMatrix q = RMatrix::Constant(n, n, u);
    for (const TransRep *r : aligned) {
        q.array() += r->table.array() - u;
    }
    return TransQuasi{std::move(q)};
}

std::vector<RVector> predict_prep_trans(const Context &ctx, const PrepSet &prep, const TransSet &trans) {
    const PhaseSpace &space = ctx.space;
    auto p = align_striations(space, prep, "preparation");
    auto t = align(ctx, trans);
    const double u = uniform(space);
    std::vector<RVector> out(static_cast<std::size_t>(space.striation_count()),
                             RVector::Constant(space.point_count(), u));
    for (int b = 0; b < space.striation_count(); ++b) {
        for (std::size_t s = 0; s < t.size(); ++s) {
            int target = space.map_striation(ctx.subgroup[s], b);
            out[static_cast<std::size_t>(target)].array() +=
                (t[s]->table * p[static_cast<std::size_t>(b)]->values).array() - u;
        }
    }
    return out;
}

RuleCheck compose_prep_trans(const Context &ctx, const PrepSet &prep, const TransSet &trans, const PrepSet &result) {
    RuleCheck check;
    check.rhs = predict_prep_trans(ctx, prep, trans);
    for (const PrepRep *r : align_striations(ctx.space, result, "resulting preparation")) {
        check.lhs.push_back(r->values);
    }
    check.residual = max_abs_diff(check.lhs, check.rhs);
    return check;
}

std::vector<RMatrix> predict_trans_trans(const Context &ctx, const TransSet &first, const TransSet &second) {
    const PhaseSpace &space = ctx.space;
    auto t1 = align(ctx, first);
    auto t2 = align(ctx, second);
    const int n = space.point_count();
    const double u = uniform(space);
    // R2 R1 depends only on gamma - S2 S1 alpha, with class values
    // c(delta) = sum_delta1 r1(delta1) r2(delta - S2 delta1).
    std::vector<RVector> classes(ctx.subgroup.size(), RVector::Constant(n, u));
    std::vector<int> minus(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            minus[static_cast<std::size_t>(a * n + b)] = space.index(space.subtract(space.point(a), space.point(b)));
        }
    }
    for (std::size_t s2 = 0; s2 < t2.size(); ++s2) {
        std::vector<int> image(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            image[static_cast<std::size_t>(k)] = space.index(ctx.subgroup[s2].apply(space.point(k)));
        }
        for (std::size_t s1 = 0; s1 < t1.size(); ++s1) {
            RVector &c = classes[static_cast<std::size_t>(ctx.subgroup.product_index(s2, s1))];
            const RVector &r1 = t1[s1]->class_values;
            const RVector &r2 = t2[s2]->class_values;
            for (int delta = 0; delta < n; ++delta) {
                const int *row = &minus[static_cast<std::size_t>(delta * n)];
                double acc = 0.0;
                for (int k = 0; k < n; ++k) {
                    acc += r1(k) * r2(row[image[static_cast<std::size_t>(k)]]);
                }
                c(delta) += acc - u;
            }
        }
    }
    std::vector<RMatrix> out;
    for (std::size_t s = 0; s < classes.size(); ++s) {
        out.push_back(TransRep::from_classes(space, ctx.subgroup[s], std::move(classes[s])).table);
    }
    return out;
}

RuleCheck compose_trans_trans(const Context &ctx, const TransSet &first, const TransSet &second,
                              const TransSet &result) {
    RuleCheck check;
    for (const RMatrix &m : predict_trans_trans(ctx, first, second)) {
        check.rhs.push_back(flatten(m));
    }
    for (const TransRep *r : align(ctx, result)) {
        check.lhs.push_back(flatten(r->table));
    }
    check.residual = max_abs_diff(check.lhs, check.rhs);
    return check;
}

std::vector<RVector> predict_trans_meas(const Context &ctx, const TransSet &trans, const MeasSet &meas) {
    const PhaseSpace &space = ctx.space;
    auto t = align(ctx, trans);
    auto m = align_striations(space, meas, "measurement");
    const double rand = random_part(space, meas);
    const double n = space.point_count();
    std::vector<RVector> out(static_cast<std::size_t>(space.striation_count()),
                             RVector::Constant(space.point_count(), rand));
    for (int b = 0; b < space.striation_count(); ++b) {
        for (std::size_t s = 0; s < t.size(); ++s) {
            int target = space.map_striation(ctx.subgroup[s].inverse(), b);
            RVector pulled = t[s]->table.transpose() * m[static_cast<std::size_t>(b)]->values;
            out[static_cast<std::size_t>(target)].array() += pulled.array() - pulled.sum() / n;
        }
    }
    return out;
}

RuleCheck compose_trans_meas(const Context &ctx, const TransSet &trans, const MeasSet &meas, const MeasSet &result) {
    RuleCheck check;
    check.rhs = predict_trans_meas(ctx, trans, meas);
    for (const MeasRep *r : align_striations(ctx.space, result, "resulting measurement")) {
        check.lhs.push_back(r->values);
    }
    check.residual = max_abs_diff(check.lhs, check.rhs);
    return check;
}

double predict_prep_meas(const Context &ctx, const PrepSet &prep, const MeasSet &meas) {
    const PhaseSpace &space = ctx.space;
    auto p = align_striations(space, prep, "preparation");
    auto m = align_striations(space, meas, "measurement");
    const double n = space.point_count();
    double total = random_part(space, meas);
    for (int b = 0; b < space.striation_count(); ++b) {
        const MeasRep &mb = *m[static_cast<std::size_t>(b)];
        total += nonrandom_p(mb.values.dot(p[static_cast<std::size_t>(b)]->values), mb.values.sum() / n);
    }
    return total;
}

ScalarCheck compose_prep_meas(const Context &ctx, const PrepSet &prep, const MeasSet &meas, double probability) {
    ScalarCheck check;
    check.lhs = probability;
    check.rhs = predict_prep_meas(ctx, prep, meas);
    check.residual = std::abs(check.lhs - check.rhs);
    return check;
}

PurityVerdict validate_preparation(const PhaseSpace &space, const PrepSet &prep, double slack, double norm_tol) {
    auto p = align_striations(space, prep, "preparation");
    const int d = space.dimension();
    PurityVerdict v;
    for (int b = 0; b < space.striation_count(); ++b) {
        const RVector &values = p[static_cast<std::size_t>(b)]->values;
        for (const Line &line : space.striation(b).lines) {
            double first = values(space.index(line.points.front()));
            for (const PhasePoint &pt : line.points) {
                if (values(space.index(pt)) != first) {
                    throw std::invalid_argument("preparation table for striation " + std::to_string(b) +
                                                " is not constant along its lines");
                }
            }
        }
        if (std::abs(values.sum() - 1.0) > norm_tol) {
            throw std::invalid_argument("preparation table for striation " + std::to_string(b) +
                                        " is not normalized");
        }
        v.purity_sum += values.squaredNorm();
    }
    v.bound = 2.0 / d;
    v.pass = v.purity_sum <= v.bound + slack;
    v.complete = d == 2;
    v.label = v.complete ? "necessary and sufficient" : "necessary only";
    return v;
}

MeasSet assumption_a_partner(const PhaseSpace &space, const PrepSet &prep) {
    MeasSet out;
    for (const PrepRep *r : align_striations(space, prep, "preparation")) {
        out.push_back(MeasRep{r->striation, r->values * static_cast<double>(space.dimension())});
    }
    return out;
}

TransSet assumption_b_inverse(const Context &ctx, const TransSet &reps, double tol) {
    auto t = align(ctx, reps);
    TransQuasi q = quasi_from_reps(ctx, reps);
    const int n = ctx.space.point_count();
    double err = (q.table.transpose() * q.table - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (err > tol) {
        throw std::invalid_argument("transformation is not invertible: its quasiprobability matrix deviates from "
                                    "orthogonality by " +
                                    std::to_string(err));
    }
    const PhaseSpace &space = ctx.space;
    TransSet out;
    for (std::size_t s = 0; s < t.size(); ++s) {
        auto j = static_cast<std::size_t>(ctx.subgroup.inverse_index(s));
        const SymplecticMatrix &inv = ctx.subgroup[j];
        RVector classes(n);
        for (int delta = 0; delta < n; ++delta) {
            PhasePoint image = inv.apply(space.point(delta));
            classes(delta) = t[j]->class_values(space.index(space.subtract({0, 0}, image)));
        }
        out.push_back(TransRep::from_classes(space, ctx.subgroup[s], std::move(classes)));
    }
    return out;
}

}  // namespace epiphase
