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

#ifndef EPIPHASE_RANDOM_H
#define EPIPHASE_RANDOM_H

#include <cstdint>
#include <random>

#include "epiphase/hilbert.h"
#include "epiphase/phase_space.h"

namespace epiphase {

using Rng = std::mt19937_64;

/// Independent generator for trial `stream` of a run seeded with `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Haar-random unitary (QR of a Ginibre matrix with phases fixed).
CMatrix random_unitary(int d, Rng &rng);
/// Random density matrix of random rank in [1, d].
CMatrix random_density(int d, Rng &rng);
/// U diag(lambda) U^dag with lambda uniform in [0, 1].
CMatrix random_povm_element(int d, Rng &rng);
/// Convex mixture of `terms` Haar unitaries: unital and trace preserving.
Channel random_unital_channel(int d, Rng &rng, int terms = 3);
SymplecticMatrix random_symplectic(const PhaseSpace &space, Rng &rng);

}  // namespace epiphase

#endif
