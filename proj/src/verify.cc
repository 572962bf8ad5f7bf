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

#include "epiphase/verify.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "epiphase/parallel.h"
#include "epiphase/random.h"

namespace epiphase {

namespace {

// Check names in report order.
const std::vector<std::string> &check_names() {
    static const std::vector<std::string> names = {
        "reconstruction",      "reconstruction-enumeration", "quasi-inversion",  "nonnegativity",
        "double-stochasticity", "rule-prep-trans",            "rule-trans-trans", "rule-trans-meas",
        "rule-prep-meas",      "incoherent-nullity",         "purity-bound",
    };
    return names;
}

struct TrialResult {
    std::map<std::string, double> residual;
    double purity_sum = 0.0;
};

double stochasticity_error(const TransSet &reps) {
    double err = 0.0;
    for (const TransRep &r : reps) {
        err = std::max(err, (r.table.colwise().sum().array() - 1.0).abs().maxCoeff());
        err = std::max(err, (r.table.rowwise().sum().array() - 1.0).abs().maxCoeff());
    }
    return err;
}

double negativity(const TransSet &reps) {
    double worst = 0.0;
    for (const TransRep &r : reps) {
        worst = std::max(worst, -r.min_entry());
    }
    return worst;
}

double incoherent_nullity(const Context &ctx, const ExperimentRecord &rec) {
    const int n = static_cast<int>(rec.chain.size());
    const double rand = random_part(ctx.space, rec.meas);
    double worst = 0.0;
    for (const Framework &f : incoherent_frameworks(ctx.space, ctx.subgroup, n)) {
        std::vector<TransRep> chain;
        for (int k = 0; k < n; ++k) {
            const TransSet &step = rec.chain[static_cast<std::size_t>(k)];
            auto it = std::find_if(step.begin(), step.end(), [&](const TransRep &r) {
                return r.symplectic == f.chain[static_cast<std::size_t>(k)];
            });
            chain.push_back(*it);
        }
        double p = framework_prediction(ctx.space, rec.meas[static_cast<std::size_t>(f.meas_striation)], chain,
                                        rec.prep[static_cast<std::size_t>(f.prep_striation)], true);
        worst = std::max(worst, std::abs(nonrandom_p(p, rand)));
    }
    return worst;
}

TrialResult run_trial(const Context &ctx, const VerifyConfig &cfg, int trial) {
    const int d = ctx.dimension();
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(trial));
    TrialResult out;
    auto &res = out.residual;

    const CMatrix w = random_density(d, rng);
    const CMatrix e = random_povm_element(d, rng);
    const int length = trial % (cfg.max_chain + 1);
    std::vector<Channel> channels;
    for (int k = 0; k < length; ++k) {
        channels.push_back((trial + k) % 2 == 0 ? Channel::unitary(random_unitary(d, rng))
                                                : random_unital_channel(d, rng));
    }

    const ExperimentRecord rec = make_record(ctx, w, channels, e, kDefaultTolerance);
    const double oracle = oracle_probability(rec);
    res["reconstruction"] = std::abs(reconstruct_probability(ctx, rec) - oracle);
    if (d <= 3) {
        res["reconstruction-enumeration"] = std::abs(reconstruct_by_enumeration(ctx, rec) - oracle);
        res["incoherent-nullity"] = incoherent_nullity(ctx, rec);
    }

    double quasi = 0.0;
    double neg = 0.0;
    double stoch = 0.0;
    for (std::size_t k = 0; k < channels.size(); ++k) {
        const TransQuasi direct = transition_quasi(ctx.basis, channels[k], kDefaultTolerance);
        quasi = std::max(quasi, (quasi_from_reps(ctx, rec.chain[k]).table - direct.table).cwiseAbs().maxCoeff());
        neg = std::max(neg, negativity(rec.chain[k]));
        stoch = std::max(stoch, stochasticity_error(rec.chain[k]));
    }

    // Fresh unitaries for the composition rules.
    const CMatrix u1 = random_unitary(d, rng);
    const CMatrix u2 = random_unitary(d, rng);
    const Channel c1 = Channel::unitary(u1);
    const Channel c2 = Channel::unitary(u2);
    const TransSet t1 = trans_reps(ctx, c1, RepCheck::raw);
    const TransSet t2 = trans_reps(ctx, c2, RepCheck::raw);
    const TransSet t21 = trans_reps(ctx, Channel::unitary(u2 * u1), RepCheck::raw);
    neg = std::max({neg, negativity(t1), negativity(t2)});
    stoch = std::max({stoch, stochasticity_error(t1), stochasticity_error(t2)});
    res["quasi-inversion"] = quasi;
    res["nonnegativity"] = neg;
    res["double-stochasticity"] = stoch;

    res["rule-prep-trans"] = compose_prep_trans(ctx, rec.prep, t1, prep_reps(ctx, c1.apply(w))).residual;
    res["rule-trans-trans"] = compose_trans_trans(ctx, t1, t2, t21).residual;
    res["rule-trans-meas"] = compose_trans_meas(ctx, t1, rec.meas, meas_reps(ctx, u1.adjoint() * e * u1)).residual;
    res["rule-prep-meas"] = compose_prep_meas(ctx, rec.prep, rec.meas, (e * w).trace().real()).residual;

    const PurityVerdict purity = validate_preparation(ctx.space, rec.prep);
    out.purity_sum = purity.purity_sum;
    res["purity-bound"] = std::max(0.0, purity.purity_sum - purity.bound);
    return out;
}

}  // namespace

VerifyReport run_verify(const VerifyConfig &config) {
    if (!(config.tol > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    if (config.trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (config.max_chain < 0) {
        throw std::invalid_argument("max chain length must be non-negative");
    }
    const Context ctx = Context::make(config.d);

    std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
    parallel_for(
        results.size(), [&](std::size_t t) { results[t] = run_trial(ctx, config, static_cast<int>(t)); },
        config.workers);

    VerifyReport report;
    report.config = config;
    report.subgroup_order = ctx.subgroup.size();
    report.purity_bound = 2.0 / config.d;
    for (const std::string &name : check_names()) {
        CheckSummary s;
        s.name = name;
        for (const TrialResult &r : results) {
            auto it = r.residual.find(name);
            if (it == r.residual.end()) {
                continue;
            }
            ++s.instances;
            s.max_residual = std::max(s.max_residual, it->second);
        }
        if (s.instances == 0) {
            continue;
        }
        s.pass = s.max_residual < config.tol;
        report.pass = report.pass && s.pass;
        report.checks.push_back(std::move(s));
    }
    for (const TrialResult &r : results) {
        report.max_purity_sum = std::max(report.max_purity_sum, r.purity_sum);
    }
    return report;
}

}  // namespace epiphase
