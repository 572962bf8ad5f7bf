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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "epiphase/qubit.h"
#include "epiphase/random.h"
#include "epiphase/reconstruct.h"
#include "oracles.h"

namespace {

using namespace epiphase;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char *f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

oracle::Sym to_sym(const SymplecticMatrix &s) { return {s(0, 0), s(0, 1), s(1, 0), s(1, 1)}; }

// Direct trace of E applied to the evolved state.
double born(const CMatrix &w, const std::vector<CMatrix> &unitaries, const CMatrix &e) {
    CMatrix x = w;
    for (const CMatrix &u : unitaries) {
        x = u * x * u.adjoint();
    }
    return (e * x).trace().real();
}

Outcome reconstruction_equivalence() {
    std::vector<int> dims{2, 3, 5};
#ifdef EPIPHASE_LARGE_DIMENSIONS
    dims.push_back(7);
    dims.push_back(11);
#endif
    Outcome out;
    for (int d : dims) {
        const auto t0 = Clock::now();
        const Context ctx = Context::make(d);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(1000 * d + trial));
            const CMatrix w = oracle::random_density(d, rng);
            std::vector<CMatrix> us;
            std::vector<Channel> channels;
            for (int k = 0; k < trial % 3; ++k) {
                us.push_back(oracle::random_unitary(d, rng));
                channels.push_back(Channel::unitary(us.back()));
            }
            const CMatrix e = oracle::random_effect(d, rng);
            const double p = reconstruct_probability(ctx, make_record(ctx, w, channels, e));
            worst = std::max(worst, std::abs(p - born(w, us, e)));
        }
        const double secs = seconds_since(t0);
        const bool ok = worst < 1e-9 && secs < 60.0;
        out.pass = out.pass && ok;
        out.detail += "d=" + std::to_string(d) + fmt(" max|err|=%.2e", worst) + fmt(" %.2fs; ", secs);
    }
    return out;
}

Outcome nonnegativity() {
    Outcome out;
    double worst = 1.0;
    {
        const Context ctx = Context::make(2);
        for (int i = 0; i < 200; ++i) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(2000 + i));
            const CMatrix u = oracle::random_unitary(2, rng);
            const oracle::RMat q = oracle::quasi(2, {u});
            for (const SymplecticMatrix &s : ctx.subgroup.elements()) {
                const TransRep r = trans_rep(ctx, Channel::unitary(u), s, RepCheck::raw);
                const double dev = (r.table - oracle::trans_table(2, q, to_sym(s))).cwiseAbs().maxCoeff();
                out.pass = out.pass && dev < 1e-12;
                worst = std::min(worst, r.min_entry());
            }
        }
    }
    out.detail = fmt("d=2 min=%.3e; ", worst);
    for (int d : {3, 5}) {
        const PhaseSpace space = PhaseSpace::make(d);
        const PhasePointBasis basis(space);
        double dmin = 1.0;
        for (int i = 0; i < 200; ++i) {
            Rng rng = make_rng(static_cast<std::uint64_t>(3000 + d), static_cast<std::uint64_t>(i));
            const SymplecticMatrix s = random_symplectic(space, rng);
            const CMatrix u = random_unitary(d, rng);
            const TransQuasi quasi = transition_quasi(basis, Channel::unitary(u));
            const TransRep r = trans_rep(space, quasi, s, RepCheck::raw);
            const double dev = (r.table - oracle::trans_table(d, quasi.table, to_sym(s))).cwiseAbs().maxCoeff();
            out.pass = out.pass && dev < 1e-12;
            dmin = std::min(dmin, r.min_entry());
        }
        worst = std::min(worst, dmin);
        out.detail += "d=" + std::to_string(d) + fmt(" min=%.3e; ", dmin);
    }
    out.pass = out.pass && worst >= -1e-9;
    return out;
}

Outcome composition_rules() {
    Outcome out;
    double worst[4] = {0, 0, 0, 0};
    double table_dev = 0.0;
    for (int d : {2, 3}) {
        const Context ctx = Context::make(d);
        for (int i = 0; i < 100; ++i) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(4000 + 100 * d + i));
            const CMatrix w = oracle::random_density(d, rng);
            const CMatrix e = oracle::random_effect(d, rng);
            const CMatrix u1 = oracle::random_unitary(d, rng);
            const CMatrix u2 = oracle::random_unitary(d, rng);
            const PrepSet prep = prep_reps(ctx, w);
            const MeasSet meas = meas_reps(ctx, e);
            const TransSet t1 = trans_reps(ctx, Channel::unitary(u1));
            const TransSet t2 = trans_reps(ctx, Channel::unitary(u2));
            const CMatrix w1 = u1 * w * u1.adjoint();
            const CMatrix e1 = u1.adjoint() * e * u1;
            const PrepSet prep_after = prep_reps(ctx, w1);
            const MeasSet meas_before = meas_reps(ctx, e1);
            const TransSet t21 = trans_reps(ctx, Channel::unitary(u2 * u1));
            // Result tables agree with the test-side construction.
            const oracle::RMat q21 = oracle::quasi(d, {u2 * u1});
            for (int b = 0; b <= d; ++b) {
                const auto bi = static_cast<std::size_t>(b);
                table_dev = std::max(table_dev, (prep_after[bi].values - oracle::prep_table(d, b, w1)).cwiseAbs().maxCoeff());
                table_dev = std::max(table_dev, (meas_before[bi].values - oracle::meas_table(d, b, e1)).cwiseAbs().maxCoeff());
            }
            for (const TransRep &r : t21) {
                table_dev = std::max(table_dev,
                                     (r.table - oracle::trans_table(d, q21, to_sym(r.symplectic))).cwiseAbs().maxCoeff());
            }
            worst[0] = std::max(worst[0], compose_prep_trans(ctx, prep, t1, prep_after).residual);
            worst[1] = std::max(worst[1], compose_trans_trans(ctx, t1, t2, t21).residual);
            worst[2] = std::max(worst[2], compose_trans_meas(ctx, t1, meas, meas_before).residual);
            worst[3] = std::max(worst[3], compose_prep_meas(ctx, prep, meas, born(w, {}, e)).residual);
        }
    }
    for (int k = 0; k < 4; ++k) {
        out.pass = out.pass && worst[k] < 1e-9;
        out.detail += "rule " + std::to_string(k + 1) + fmt(" %.2e; ", worst[k]);
    }
    out.pass = out.pass && table_dev < 1e-9;
    out.detail += fmt("result tables vs oracle %.2e", table_dev);
    return out;
}

Outcome violation_example() {
    const Context ctx = Context::make(2);
    PrepSet prep;
    // Half of the weight on each of the two points of every ray.
    for (int b = 0; b < 3; ++b) {
        std::vector<double> lines(2, 0.0);
        lines[static_cast<std::size_t>(ctx.space.line_index_through(b, {0, 0}))] = 0.5;
        prep.push_back(PrepRep::from_lines(ctx.space, b, lines));
    }
    const double p = predict_prep_meas(ctx, prep, assumption_a_partner(ctx.space, prep));
    const PurityVerdict v = validate_preparation(ctx.space, prep);
    Outcome out;
    out.pass = std::abs(p - 2.0) <= 1e-9 && !v.pass && std::abs(v.purity_sum - 1.5) <= 1e-12;
    out.detail = fmt("P=%.12f", p) + fmt(" purity sum=%.12f", v.purity_sum) + (v.pass ? " verdict PASS" : " verdict FAIL");
    return out;
}

Outcome qubit_state_space() {
    const PhaseSpace &space = qubit_context().space;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> radius(0.0, 2.0);
    std::size_t agree = 0;
    std::size_t inside = 0;
    const std::size_t n = 10000;
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::Vector3d dir(normal(rng), normal(rng), normal(rng));
        const double len = radius(rng);
        const Eigen::Vector3d r = dir.normalized() * len;
        const bool expected = len <= 1.0;
        const bool got = validate_preparation(space, reps_from_bloch(space, {r(0), r(1), r(2)})).pass;
        agree += expected == got;
        inside += expected;
    }
    const bool on_sphere = validate_preparation(space, reps_from_bloch(space, {0.6, 0.0, 0.8})).pass;
    const bool beyond = validate_preparation(space, reps_from_bloch(space, {0.0, 0.0, 1.0 + 1e-6})).pass;
    Outcome out;
    out.pass = agree == n && on_sphere && !beyond;
    out.detail = std::to_string(agree) + "/" + std::to_string(n) + " agree (" + std::to_string(inside) +
                 " inside); |r|=1 " + (on_sphere ? "PASS" : "FAIL") + ", |r|=1+1e-6 " + (beyond ? "PASS" : "FAIL");
    return out;
}

Outcome identity_and_inversion() {
    const Context &ctx = qubit_context();
    const TransSet id = trans_reps(ctx, Channel::identity(2));
    const TransSet inv = trans_reps(ctx, Channel::inversion(), RepCheck::raw);
    double dev = 0.0;
    for (std::size_t s = 0; s < 3; ++s) {
        oracle::RMat want_id = s == 0 ? oracle::RMat(oracle::RMat::Identity(4, 4)) : oracle::RMat(oracle::RMat::Constant(4, 4, 0.25));
        oracle::RMat want_inv = s == 0 ? oracle::RMat(oracle::RMat::Constant(4, 4, 0.5) - oracle::RMat::Identity(4, 4))
                                       : oracle::RMat(oracle::RMat::Constant(4, 4, 0.25));
        dev = std::max(dev, (id[s].table - want_id).cwiseAbs().maxCoeff());
        dev = std::max(dev, (inv[s].table - want_inv).cwiseAbs().maxCoeff());
    }
    return {dev < 1e-12, fmt("max deviation %.2e", dev)};
}

Outcome orthogonality() {
    const Context &ctx = qubit_context();
    double q_res = 0.0;
    double block_res = 0.0;
    std::size_t rejected = 0;
    for (int i = 0; i < 100; ++i) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(7000 + i));
        const TransQuasi quasi = transition_quasi(ctx.basis, Channel::unitary(oracle::random_unitary(2, rng)));
        q_res = std::max(q_res, q_orthogonality_residual(quasi));
        const oracle::RMat direct = quasi.table.transpose() * quasi.table - oracle::RMat::Identity(4, 4);
        q_res = std::max(q_res, direct.cwiseAbs().maxCoeff());
        try {
            const OrthogonalAction act = m_conjugate(quasi, 1e-9);
            block_res = std::max(block_res, (act.matrix.transpose() * act.matrix - Eigen::Matrix3d::Identity())
                                                .cwiseAbs()
                                                .maxCoeff());
        } catch (const std::invalid_argument &) {
            ++rejected;
        }
    }
    Outcome out;
    out.pass = q_res <= 1e-9 && block_res <= 1e-9 && rejected == 0;
    out.detail = fmt("max|Q^T Q - I|=%.2e", q_res) + fmt(" max|O^T O - I|=%.2e", block_res) +
                 " non-block-diagonal " + std::to_string(rejected);
    return out;
}

Outcome qubit_enumeration() {
    const auto twelve = enumerate_inversion_compatible();
    bool shape = twelve.size() == 12;
    const double h = 1.0 / std::sqrt(2.0);
    for (const UnitQuaternion &q : twelve) {
        int nonzero = 0;
        for (double x : q.u) {
            if (std::abs(x) > 1e-12) {
                ++nonzero;
                shape = shape && std::abs(std::abs(x) - h) < 1e-12;
            }
        }
        shape = shape && nonzero == 2;
    }
    const PermutationTheory theory = enumerate_permutation_theory();
    const bool s4 = theory.elements.size() == 24 && theory.closed && theory.inverses && theory.all_valid &&
                    theory.permutes_points && theory.distinct_permutations == 24;
    const SweepResult sweep = sweep_su2(SweepConfig{});
    Outcome out;
    out.pass = shape && s4 && sweep.outside_radius == 0;
    out.detail = std::to_string(twelve.size()) + " rotations" + (shape ? "" : " (wrong form)") + ", " +
                 std::to_string(theory.elements.size()) + " transformations, " +
                 std::to_string(theory.distinct_permutations) + " distinct permutations" +
                 (s4 ? "" : " (not a group)") + "; sweep " + std::to_string(sweep.config.samples) + " samples, " +
                 std::to_string(sweep.survivors) + " survivors, " + std::to_string(sweep.outside_radius) +
                 " outside" + fmt(" (max distance %.4f)", sweep.max_distance);
    return out;
}

Outcome subgroup_search() {
    Outcome out;
    const auto t0 = Clock::now();
    for (int d : {2, 3, 5, 7}) {
        const PhaseSpace space = PhaseSpace::make(d);
        const SubgroupSearchResult r = find_special_subgroups(space);
        bool verified = !r.subgroups.empty();
        for (const SpecialSubgroup &g : r.subgroups) {
            verified = verified && g.size() == static_cast<std::size_t>(d * d - 1) &&
                       special_subgroup_violation(d, g.elements()).empty();
        }
        const bool count_ok = d == 2 ? r.subgroups.size() == 1 : !r.subgroups.empty();
        out.pass = out.pass && verified && count_ok;
        out.detail += "d=" + std::to_string(d) + ": " + std::to_string(r.subgroups.size()) + "; ";
    }
    const double secs = seconds_since(t0);
    out.pass = out.pass && secs < 300.0;
    out.detail += fmt("%.2fs", secs);
    return out;
}

Outcome mutually_unbiased() {
    Outcome out;
    for (int d : {2, 3, 5, 7, 11}) {
        const PhaseSpace space = PhaseSpace::make(d);
        const PhasePointBasis basis(space);
        double worst = 0.0;
        for (int b1 = 0; b1 <= d; ++b1) {
            for (int b2 = 0; b2 <= d; ++b2) {
                for (int c1 = 0; c1 < d; ++c1) {
                    for (int c2 = 0; c2 < d; ++c2) {
                        const double overlap = std::norm(basis.state(b1, c1).dot(basis.state(b2, c2)));
                        const double want = b1 == b2 ? (c1 == c2 ? 1.0 : 0.0) : 1.0 / d;
                        worst = std::max(worst, std::abs(overlap - want));
                    }
                }
            }
        }
        out.pass = out.pass && worst < 1e-9;
        out.detail += "d=" + std::to_string(d) + fmt(" %.1e; ", worst);
    }
    return out;
}

Outcome incoherent_nullity() {
    const Context &ctx = qubit_context();
    const auto elements = ctx.subgroup.elements();
    double worst = 0.0;
    std::size_t frameworks = 0;
    for (int i = 0; i < 50; ++i) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(11000 + i));
        const CMatrix w = oracle::random_density(2, rng);
        const int length = 1 + i % 2;
        std::vector<Channel> channels;
        for (int k = 0; k < length; ++k) {
            const CMatrix u = oracle::random_unitary(2, rng);
            channels.push_back(Channel::unitary(u));
        }
        const CMatrix e = oracle::random_effect(2, rng);
        const ExperimentRecord rec = make_record(ctx, w, channels, e);
        const double rand = e.trace().real() / 2;
        // Walk every (B, S_1..S_n, B') with B' off the coherent image.
        std::size_t combos = 1;
        for (int k = 0; k < length; ++k) {
            combos *= elements.size();
        }
        for (int b = 0; b < 3; ++b) {
            for (std::size_t code = 0; code < combos; ++code) {
                oracle::RVec v = rec.prep[static_cast<std::size_t>(b)].values;
                int striation = b;
                std::size_t rest = code;
                for (int k = 0; k < length; ++k) {
                    const SymplecticMatrix &s = elements[rest % elements.size()];
                    rest /= elements.size();
                    const TransSet &step = rec.chain[static_cast<std::size_t>(k)];
                    for (const TransRep &r : step) {
                        if (r.symplectic == s) {
                            v = r.table * v;
                        }
                    }
                    striation = oracle::map_striation(2, to_sym(s), striation);
                }
                for (int bp = 0; bp < 3; ++bp) {
                    if (bp == striation) {
                        continue;
                    }
                    ++frameworks;
                    const double p = rec.meas[static_cast<std::size_t>(bp)].values.dot(v);
                    worst = std::max(worst, std::abs(p - rand));
                }
            }
        }
    }
    return {worst < 1e-9, std::to_string(frameworks) + " incoherent frameworks" + fmt(", max|nonrandom|=%.2e", worst)};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"reconstruction equivalence", reconstruction_equivalence},
        {"transition non-negativity", nonnegativity},
        {"composition rules", composition_rules},
        {"illegal preparation", violation_example},
        {"qubit state space", qubit_state_space},
        {"identity and inversion tables", identity_and_inversion},
        {"orthogonality", orthogonality},
        {"qubit transformation enumeration", qubit_enumeration},
        {"special subgroup search", subgroup_search},
        {"mutually unbiased striations", mutually_unbiased},
        {"incoherent framework nullity", incoherent_nullity},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
