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

#include <cmath>

#include "epiphase/random.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace epiphase {
namespace {

CMatrix spin_up() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1;
    return m;
}

const Context &qubit() {
    static const Context ctx = Context::make(2);
    return ctx;
}

oracle::Sym as_oracle(const SymplecticMatrix &s) { return {s(0, 0), s(0, 1), s(1, 0), s(1, 1)}; }

TEST(PrepRepTest, MixedStateIsUniform) {
    for (const PrepRep &r : prep_reps(qubit(), CMatrix::Identity(2, 2) / 2.0)) {
        EXPECT_LT((r.values.array() - 0.25).abs().maxCoeff(), 1e-15);
    }
}

TEST(PrepRepTest, QubitSpinUpTables) {
    const Context &ctx = qubit();
    PrepSet reps = prep_reps(ctx, spin_up());
    ASSERT_EQ(reps.size(), 3u);
    for (int b : {0, 1}) {
        EXPECT_LT((reps[static_cast<std::size_t>(b)].values.array() - 0.25).abs().maxCoeff(), 1e-15);
    }
    for (const PhasePoint &pt : ctx.space.points()) {
        EXPECT_NEAR(reps[2].values(ctx.space.index(pt)), pt.q == 0 ? 0.5 : 0.0, 1e-15);
    }
}

TEST(PrepRepTest, BlochFormula) {
    const Context &ctx = qubit();
    Rng rng = make_rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix w = random_density(2, rng);
        const double rx = (w * pauli_x()).trace().real();
        const double ry = (w * pauli_y()).trace().real();
        const double rz = (w * pauli_z()).trace().real();
        PrepSet reps = prep_reps(ctx, w);
        for (const PhasePoint &pt : ctx.space.points()) {
            auto s = [](int k) { return k % 2 == 0 ? 1.0 : -1.0; };
            const int i = ctx.space.index(pt);
            EXPECT_NEAR(reps[0].values(i), 0.25 * (1 + s(pt.p) * rx), 1e-14);
            EXPECT_NEAR(reps[1].values(i), 0.25 * (1 + s(pt.q + pt.p) * ry), 1e-14);
            EXPECT_NEAR(reps[2].values(i), 0.25 * (1 + s(pt.q) * rz), 1e-14);
        }
    }
}

TEST(PrepRepTest, InvariantsAndOracle) {
    for (int d : {3, 5, 7}) {
        const Context ctx = Context::make(d);
        Rng rng = make_rng(9, static_cast<std::uint64_t>(d));
        for (int trial = 0; trial < 5; ++trial) {
            CMatrix w = random_density(d, rng);
            for (const PrepRep &r : prep_reps(ctx, w)) {
                EXPECT_NEAR(r.values.sum(), 1.0, 1e-12);
                EXPECT_GE(r.values.minCoeff(), 0.0);
                EXPECT_LT((r.values - oracle::prep_table(d, r.striation, w)).cwiseAbs().maxCoeff(), 1e-12);
                for (const Line &l : ctx.space.striation(r.striation).lines) {
                    const double first = r.values(ctx.space.index(l.points.front()));
                    for (const PhasePoint &pt : l.points) {
                        EXPECT_EQ(r.values(ctx.space.index(pt)), first);
                    }
                }
            }
        }
    }
}

TEST(PrepRepTest, RejectsNonDensity) {
    CMatrix bad = CMatrix::Identity(2, 2);
    EXPECT_THROW(prep_reps(qubit(), bad), InvalidOperator);
    EXPECT_THROW(prep_reps(qubit(), CMatrix::Identity(3, 3) / 3.0), InvalidOperator);
}

TEST(PrepRepTest, FromLinesValidates) {
    const PhaseSpace &s = qubit().space;
    std::vector<double> two{0.5, 0.0};
    std::vector<double> three{0.5, 0.0, 0.0};
    EXPECT_THROW(PrepRep::from_lines(s, 3, two), std::invalid_argument);
    EXPECT_THROW(PrepRep::from_lines(s, 0, three), std::invalid_argument);
    PrepRep r = PrepRep::from_lines(s, 1, two);
    EXPECT_EQ(r.line_value(s, 0), 0.5);
    EXPECT_EQ(r.line_value(s, 1), 0.0);
}

TEST(MeasRepTest, IdentityIsOne) {
    for (int d : {2, 3}) {
        const Context ctx = Context::make(d);
        for (const MeasRep &r : meas_reps(ctx, CMatrix::Identity(d, d))) {
            EXPECT_LT((r.values.array() - 1.0).abs().maxCoeff(), 1e-14);
        }
    }
}

TEST(MeasRepTest, QubitSpinUpInZ) {
    const Context &ctx = qubit();
    MeasRep r = meas_rep(ctx, spin_up(), 2);
    for (const PhasePoint &pt : ctx.space.points()) {
        EXPECT_NEAR(r.values(ctx.space.index(pt)), pt.q == 0 ? 1.0 : 0.0, 1e-15);
    }
}

TEST(MeasRepTest, NormalizationAndOracle) {
    const Context ctx = Context::make(3);
    Rng rng = make_rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix e = random_povm_element(3, rng);
        for (const MeasRep &r : meas_reps(ctx, e)) {
            EXPECT_NEAR(r.values.sum(), 3.0 * e.trace().real(), 1e-12);
            EXPECT_GE(r.values.minCoeff(), -1e-12);
            EXPECT_LE(r.values.maxCoeff(), 1.0 + 1e-12);
            EXPECT_LT((r.values - oracle::meas_table(3, r.striation, e)).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(MeasRepTest, RejectsOversizedEffect) {
    EXPECT_THROW(meas_reps(qubit(), 2.0 * CMatrix::Identity(2, 2)), InvalidOperator);
}

TEST(TransRepTest, QubitIdentity) {
    const Context &ctx = qubit();
    TransSet reps = trans_reps(ctx, Channel::identity(2));
    ASSERT_EQ(reps.size(), 3u);
    EXPECT_LT((reps[0].table - RMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((reps[1].table.array() - 0.25).abs().maxCoeff(), 1e-15);
    EXPECT_LT((reps[2].table.array() - 0.25).abs().maxCoeff(), 1e-15);
}

TEST(TransRepTest, QubitInversionIsNegative) {
    const Context &ctx = qubit();
    EXPECT_THROW(trans_reps(ctx, Channel::inversion()), NegativeTransition);
    TransSet reps = trans_reps(ctx, Channel::inversion(), RepCheck::raw);
    RMatrix expected = RMatrix::Constant(4, 4, 0.5) - RMatrix::Identity(4, 4);
    EXPECT_LT((reps[0].table - expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((reps[1].table.array() - 0.25).abs().maxCoeff(), 1e-15);
    EXPECT_LT((reps[2].table.array() - 0.25).abs().maxCoeff(), 1e-15);
}

TEST(TransRepTest, MatchesOracleAndIsClassConstant) {
    for (int d : {2, 3, 5}) {
        const Context ctx = Context::make(d);
        Rng rng = make_rng(12, static_cast<std::uint64_t>(d));
        Channel c = random_unital_channel(d, rng);
        RMatrix q = oracle::quasi(d, *c.kraus());
        for (const TransRep &r : trans_reps(ctx, c)) {
            EXPECT_LT((r.table - oracle::trans_table(d, q, as_oracle(r.symplectic))).cwiseAbs().maxCoeff(), 1e-12);
            for (const PhasePoint &a : ctx.space.points()) {
                for (const PhasePoint &b : ctx.space.points()) {
                    ASSERT_EQ(r.table(ctx.space.index(b), ctx.space.index(a)),
                              r.class_values(ctx.space.index(displacement(r.symplectic, a, b))));
                }
            }
            EXPECT_LT((r.table.colwise().sum().array() - 1).abs().maxCoeff(), 1e-12);
            EXPECT_LT((r.table.rowwise().sum().array() - 1).abs().maxCoeff(), 1e-12);
        }
    }
}

TEST(TransRepTest, OddPrimesNonNegativeForEverySymplectic) {
    for (int d : {3, 5}) {
        const Context ctx = Context::make(d);
        double worst = 0.0;
        for (int seed = 0; seed < 100; ++seed) {
            Rng rng = make_rng(13, static_cast<std::uint64_t>(seed));
            TransQuasi q = transition_quasi(ctx.basis, Channel::unitary(random_unitary(d, rng)));
            const SymplecticMatrix s = random_symplectic(ctx.space, rng);
            worst = std::min(worst, trans_rep(ctx.space, q, s, RepCheck::raw).min_entry());
        }
        EXPECT_GE(worst, -1e-9) << "d=" << d;
    }
}

TEST(TransRepTest, QubitSpecialSubgroupNonNegative) {
    const Context &ctx = qubit();
    for (int seed = 0; seed < 100; ++seed) {
        Rng rng = make_rng(14, static_cast<std::uint64_t>(seed));
        for (const TransRep &r : trans_reps(ctx, Channel::unitary(random_unitary(2, rng)), RepCheck::raw)) {
            EXPECT_GE(r.min_entry(), -1e-9);
        }
    }
}

TEST(TransRepTest, QubitOutsideSubgroupGoesNegative) {
    const Context &ctx = qubit();
    for (const SymplecticMatrix &s : ctx.space.symplectic_group()) {
        if (ctx.subgroup.contains(s)) {
            continue;
        }
        double worst = 0.0;
        for (int seed = 0; seed < 50; ++seed) {
            Rng rng = make_rng(15, static_cast<std::uint64_t>(seed));
            TransQuasi q = transition_quasi(ctx.basis, Channel::unitary(random_unitary(2, rng)));
            worst = std::min(worst, trans_rep(ctx.space, q, s, RepCheck::raw).min_entry());
        }
        EXPECT_LT(worst, -0.01) << s.to_string();
    }
}

TEST(TransRepTest, ShapeErrors) {
    const Context &ctx = qubit();
    EXPECT_THROW(trans_rep(ctx.space, TransQuasi{RMatrix::Identity(9, 9)}, ctx.subgroup[0]), std::invalid_argument);
    EXPECT_THROW(TransRep::from_classes(ctx.space, ctx.subgroup[0], RVector::Zero(3)), std::invalid_argument);
    EXPECT_THROW(TransRep::from_classes(ctx.space, SymplecticMatrix::identity(3), RVector::Zero(4)),
                 std::invalid_argument);
}

TEST(FrameworkTest, Counts) {
    const Context q = Context::make(2);
    EXPECT_EQ(coherent_frameworks(q.space, q.subgroup, 1).size(), 9u);
    EXPECT_EQ(coherent_frameworks(q.space, q.subgroup, 0).size(), 3u);
    EXPECT_EQ(coherent_frameworks(q.space, q.subgroup, 2).size(), 27u);
    EXPECT_EQ(incoherent_frameworks(q.space, q.subgroup, 1).size(), 18u);
    const Context t = Context::make(3);
    EXPECT_EQ(coherent_frameworks(t.space, t.subgroup, 1).size(), 32u);
    EXPECT_EQ(coherent_frameworks(t.space, t.subgroup, 0).size(), 4u);
    EXPECT_THROW(coherent_frameworks(t.space, t.subgroup, -1), std::invalid_argument);
    for (const Framework &f : coherent_frameworks(t.space, t.subgroup, 2)) {
        EXPECT_TRUE(f.coherent(t.space));
    }
    for (const Framework &f : incoherent_frameworks(t.space, t.subgroup, 1)) {
        EXPECT_FALSE(f.coherent(t.space));
    }
}

TEST(FrameworkTest, MixedStatePredictsOneOverD) {
    for (int d : {2, 3}) {
        const Context ctx = Context::make(d);
        Rng rng = make_rng(16, static_cast<std::uint64_t>(d));
        CMatrix v = random_unitary(d, rng);
        CMatrix e = v.col(0) * v.col(0).adjoint();
        TransSet t = trans_reps(ctx, Channel::unitary(random_unitary(d, rng)));
        PrepSet prep = prep_reps(ctx, CMatrix::Identity(d, d) / static_cast<double>(d));
        MeasSet meas = meas_reps(ctx, e);
        for (const Framework &f : coherent_frameworks(ctx.space, ctx.subgroup, 1)) {
            std::vector<TransRep> chain{t[static_cast<std::size_t>(ctx.subgroup.index_of(f.chain[0]))]};
            double p = framework_prediction(ctx.space, meas[static_cast<std::size_t>(f.meas_striation)], chain,
                                            prep[static_cast<std::size_t>(f.prep_striation)]);
            EXPECT_NEAR(p, 1.0 / d, 1e-12);
        }
    }
}

TEST(FrameworkTest, QubitSpinUpExamples) {
    const Context &ctx = qubit();
    PrepSet prep = prep_reps(ctx, spin_up());
    MeasSet meas = meas_reps(ctx, spin_up());
    TransSet id = trans_reps(ctx, Channel::identity(2));
    std::vector<TransRep> chain{id[0]};
    EXPECT_NEAR(framework_prediction(ctx.space, meas[2], chain, prep[2]), 1.0, 1e-15);
    EXPECT_NEAR(framework_prediction(ctx.space, meas[0], chain, prep[0]), 0.5, 1e-15);
    EXPECT_THROW(framework_prediction(ctx.space, meas[0], chain, prep[2]), std::invalid_argument);
    EXPECT_NO_THROW(framework_prediction(ctx.space, meas[0], chain, prep[2], true));
}

TEST(FrameworkTest, PredictionsAreProbabilities) {
    const Context ctx = Context::make(3);
    Rng rng = make_rng(17);
    CMatrix w = random_density(3, rng);
    CMatrix e = random_povm_element(3, rng);
    TransSet t = trans_reps(ctx, Channel::unitary(random_unitary(3, rng)));
    PrepSet prep = prep_reps(ctx, w);
    MeasSet meas = meas_reps(ctx, e);
    for (const Framework &f : coherent_frameworks(ctx.space, ctx.subgroup, 1)) {
        std::vector<TransRep> chain{t[static_cast<std::size_t>(ctx.subgroup.index_of(f.chain[0]))]};
        double p = framework_prediction(ctx.space, meas[static_cast<std::size_t>(f.meas_striation)], chain,
                                        prep[static_cast<std::size_t>(f.prep_striation)]);
        EXPECT_GE(p, -1e-12);
        EXPECT_LE(p, 1.0 + 1e-12);
    }
}

}  // namespace
}  // namespace epiphase
