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

#ifndef EPIPHASE_QUBIT_H
#define EPIPHASE_QUBIT_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "epiphase/reconstruct.h"

namespace epiphase {

/// Shared d = 2 context (subgroup {I, R, L}).
const Context &qubit_context();

struct BlochVector {
    double r_x = 0.0;
    double r_y = 0.0;
    double r_z = 0.0;

    Eigen::Vector3d vec() const { return {r_x, r_y, r_z}; }
    double norm() const { return vec().norm(); }
};

/// Bloch vector of the phase-point operator at alpha:
/// ((-1)^p, (-1)^(q+p), (-1)^q).
Eigen::Vector3d phase_point_bloch(PhasePoint alpha);

/// r_x = sum_alpha (-1)^p R^X(alpha), and likewise for Y and Z.
BlochVector bloch_from_reps(const PhaseSpace &space, const PrepSet &prep);
/// R^B(alpha) = (1 + (-1)^c r_B) / 4 on line c of striation B.
PrepSet reps_from_bloch(const PhaseSpace &space, const BlochVector &r);

/// u0 I + i (u1 X + u2 Y + u3 Z).
struct UnitQuaternion {
    std::array<double, 4> u{1.0, 0.0, 0.0, 0.0};

    /// Rescales to unit length; throws std::invalid_argument for the zero vector.
    static UnitQuaternion normalized(std::array<double, 4> v);

    /// Sign chosen so the first nonzero component is positive.
    UnitQuaternion canonical() const;
    CMatrix to_unitary() const;
    /// Bloch rotation of to_unitary().
    Eigen::Matrix3d rotation() const;
    /// Quaternion of U_this U_other (other acts first).
    UnitQuaternion operator*(const UnitQuaternion &other) const;
    /// Distance up to the global sign.
    double distance(const UnitQuaternion &other) const;
};

/// O_ij = tr(sigma_i U sigma_j U^dagger) / 2.
Eigen::Matrix3d bloch_rotation(const CMatrix &u);

/// Rotation (det +1) or rotation combined with inversion (det -1).
struct OrthogonalAction {
    Eigen::Matrix3d matrix = Eigen::Matrix3d::Identity();
    int det = 1;

    static OrthogonalAction from_matrix(const Eigen::Matrix3d &m, double tol = kDefaultTolerance);
    /// Rotation angle in degrees and unit axis of the proper part.
    double angle_degrees() const;
    Eigen::Vector3d axis() const;
    /// Human-readable, e.g. "rotation 90 deg about (0, 0, 1)".
    std::string label() const;
};

/// max |Q^T Q - I|.
double q_orthogonality_residual(const TransQuasi &quasi);

/// 3x3 block of M Q M^T, where row i of M holds the i-th Bloch components of
/// the phase-point operators (halved) and the last row is constant 1/2.
/// Throws std::invalid_argument if the matrix is not block diagonal with a
/// unit lower-right entry.
OrthogonalAction m_conjugate(const TransQuasi &quasi, double tol = kDefaultTolerance);

/// Exact tables of the Bloch inversion: R^I = 1/2 - delta, R^R = R^L = 1/4.
TransSet inversion_reps();

struct InversionComposite {
    TransSet reps;
    /// Largest entry of the input tables.
    double max_input = 0.0;
    bool valid = false;
};

/// R^S_{E o Omega} = 1/2 - R^S_E. Valid iff no input entry exceeds 1/2 + tol.
InversionComposite compose_with_inversion(const TransSet &rotation, double tol = kDefaultTolerance);

/// Closed-form tables of the unitary with quaternion u, one per element of
/// {I, R, L}.
TransSet r_tables_from_quaternion(const UnitQuaternion &u);

/// Largest table entry of u, the quantity bounded by 1/2 for compatibility
/// with the inversion.
double max_table_entry(const UnitQuaternion &u);
bool inversion_compatible(const UnitQuaternion &u, double tol = kDefaultTolerance);

/// Candidates v/|v| for nonzero v in {-1, 0, 1}^4 that pass the table test,
/// canonicalized and deduplicated.
std::vector<UnitQuaternion> enumerate_inversion_compatible(double tol = kDefaultTolerance);

struct SweepConfig {
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    /// Survivors satisfy max_table_entry <= 1/2 + epsilon.
    double epsilon = 0.01;
    /// Survivors farther than this from every one of the twelve are reported.
    double radius = 0.15;
};

struct SweepResult {
    SweepConfig config;
    std::size_t survivors = 0;
    std::size_t outside_radius = 0;
    double max_distance = 0.0;
};

/// Uniform random sample of SU(2).
SweepResult sweep_su2(const SweepConfig &config);

struct QubitTransformation {
    /// Proper rotation part.
    UnitQuaternion rotation;
    bool with_inversion = false;
    OrthogonalAction action;
    /// Image index of each phase point under the action (alpha -> perm[alpha]).
    std::array<int, 4> permutation{};
    TransSet reps;
};

struct PermutationTheory {
    std::vector<QubitTransformation> elements;
    bool closed = false;
    bool inverses = false;
    bool all_valid = false;
    /// Every element permutes the four phase-point Bloch vectors.
    bool permutes_points = false;
    /// Number of distinct permutations induced.
    std::size_t distinct_permutations = 0;
};

/// {E_j o Omega} (det -1) together with {E_j o E_k} (det +1) for the twelve
/// inversion-compatible rotations E_j.
PermutationTheory enumerate_permutation_theory(double tol = kDefaultTolerance);

/// Index of the element whose matrix matches m, or -1.
int find_element(const PermutationTheory &theory, const Eigen::Matrix3d &m, double tol = 1e-9);

struct MaximalityCheck {
    std::size_t samples = 0;
    /// Samples already inside the set.
    std::size_t inside = 0;
    /// Samples whose adjoining produced an element with a table entry > 1/2 + tol
    /// once composed with one of the det -1 elements.
    std::size_t rejected = 0;
};

/// Adjoins random outside rotations R to the 24-element set and checks that
/// R composed with some E_j o Omega is invalid.
MaximalityCheck maximality_spot_check(const PermutationTheory &theory, std::size_t samples, std::uint64_t seed,
                                      double tol = kDefaultTolerance);

}  // namespace epiphase

#endif
