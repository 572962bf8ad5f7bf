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

#ifndef EPIPHASE_VERIFY_H
#define EPIPHASE_VERIFY_H

#include <cstdint>
#include <string>
#include <vector>

#include "epiphase/reconstruct.h"

namespace epiphase {

struct VerifyConfig {
    int d = 2;
    double tol = kDefaultTolerance;
    std::uint64_t seed = 1;
    int trials = 100;
    /// Chains of length 0 .. max_chain are cycled through trial by trial.
    int max_chain = 2;
    /// 0 picks the hardware concurrency.
    unsigned workers = 0;
};

struct CheckSummary {
    std::string name;
    /// Largest residual over all trials; compared against the tolerance.
    double max_residual = 0.0;
    int instances = 0;
    bool pass = true;
};

struct VerifyReport {
    VerifyConfig config;
    std::size_t subgroup_order = 0;
    std::vector<CheckSummary> checks;
    double max_purity_sum = 0.0;
    double purity_bound = 0.0;
    bool pass = true;
};

/// Seeded random experiments (trial t draws from make_rng(seed, t)):
/// reconstruction against the oracle, quasiprobability inversion,
/// non-negativity, double stochasticity, the four composition rules, the
/// purity bound and, for d <= 3, enumeration cross-checks and incoherent
/// framework nullity. Throws std::invalid_argument for a bad configuration.
VerifyReport run_verify(const VerifyConfig &config);

}  // namespace epiphase

#endif
