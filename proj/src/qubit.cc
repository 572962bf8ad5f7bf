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

#include "epiphase/qubit.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "epiphase/parallel.h"
#include "epiphase/random.h"

namespace epiphase {

namespace {

const SymplecticMatrix &qubit_element(int which) {
    static const SymplecticMatrix kI = SymplecticMatrix::identity(2);
    static const SymplecticMatrix kR(2, {0, 1, 1, 1});
    static const SymplecticMatrix kL(2, {1, 1, 1, 0});
    return which == 0 ? kI : (which == 1 ? kR : kL);
}

void require_qubit(const PhaseSpace &space) {
    if (space.dimension() != 2) {
        throw std::invalid_argument("qubit routines need d = 2, got d = " + std::to_string(space.dimension()));
    }
}

// Class values for I, R, L indexed by the point index of delta.
std::array<RVector, 3> formula_classes(const UnitQuaternion &q) {
    const auto [u0, u1, u2, u3] = q.u;
    auto sq = [](double x) { return x * x / 4.0; };
    RVector i(4), r(4), l(4);
    i << u0 * u0, u3 * u3, u1 * u1, u2 * u2;
    r << sq(u0 + u1 + u2 + u3), sq(u0 - u1 + u2 - u3), sq(u0 - u1 - u2 + u3), sq(u0 + u1 - u2 - u3);
    l << sq(u0 - u1 - u2 - u3), sq(u0 - u1 + u2 + u3), sq(u0 + u1 - u2 + u3), sq(u0 + u1 + u2 - u3);
    return {i, r, l};
}

UnitQuaternion random_quaternion(Rng &rng) {
    std::normal_distribution<double> normal;
    for (;;) {
        std::array<double, 4> v{normal(rng), normal(rng), normal(rng), normal(rng)};
        double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
        if (n > 1e-6) {
            return UnitQuaternion::normalized(v);
        }
    }
}

std::string format_number(double x) {
    if (std::abs(x) < 5e-5) {
        x = 0.0;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

}  // namespace

const Context &qubit_context() {
    static const Context ctx = Context::make(2);
    return ctx;
}

Eigen::Vector3d phase_point_bloch(PhasePoint alpha) {
    auto sign = [](int k) { return k % 2 == 0 ? 1.0 : -1.0; };
    return {sign(alpha.p), sign(alpha.q + alpha.p), sign(alpha.q)};
}

BlochVector bloch_from_reps(const PhaseSpace &space, const PrepSet &prep) {
    require_qubit(space);
    std::array<double, 3> r{};
    for (const PrepRep &rep : prep) {
        if (rep.striation < 0 || rep.striation > 2) {
            throw std::invalid_argument("qubit preparation table has an invalid striation id");
        }
        double acc = 0.0;
        for (int a = 0; a < 4; ++a) {
            int c = space.line_index_through(rep.striation, space.point(a));
            acc += (c == 0 ? 1.0 : -1.0) * rep.values(a);
        }
        r[static_cast<std::size_t>(rep.striation)] = acc;
    }
    return {r[0], r[1], r[2]};
}

PrepSet reps_from_bloch(const PhaseSpace &space, const BlochVector &r) {
    require_qubit(space);
    const std::array<double, 3> comps{r.r_x, r.r_y, r.r_z};
    PrepSet out;
    for (int b = 0; b < 3; ++b) {
        const double v = comps[static_cast<std::size_t>(b)];
        const std::array<double, 2> lines{(1.0 + v) / 4.0, (1.0 - v) / 4.0};
        out.push_back(PrepRep::from_lines(space, b, lines));
    }
    return out;
}

UnitQuaternion UnitQuaternion::normalized(std::array<double, 4> v) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    if (n == 0.0) {
        throw std::invalid_argument("cannot normalize the zero quaternion");
    }
    for (double &x : v) {
        x /= n;
    }
    return UnitQuaternion{v};
}

UnitQuaternion UnitQuaternion::canonical() const {
    UnitQuaternion out = *this;
    for (double x : u) {
        if (std::abs(x) > 1e-12) {
            if (x < 0) {
                for (double &y : out.u) {
                    y = -y;
                }
            }
            break;
        }
    }
    for (double &y : out.u) {
        if (y == 0.0) {
            y = 0.0;  // drops -0
        }
    }
    return out;
}

CMatrix UnitQuaternion::to_unitary() const {
    const Complex i(0.0, 1.0);
    return u[0] * CMatrix::Identity(2, 2) + i * (u[1] * pauli_x() + u[2] * pauli_y() + u[3] * pauli_z());
}

Eigen::Matrix3d UnitQuaternion::rotation() const { return bloch_rotation(to_unitary()); }

UnitQuaternion UnitQuaternion::operator*(const UnitQuaternion &other) const {
    const Eigen::Vector3d a(u[1], u[2], u[3]);
    const Eigen::Vector3d b(other.u[1], other.u[2], other.u[3]);
    const double a0 = u[0];
    const double b0 = other.u[0];
    const Eigen::Vector3d c = a0 * b + b0 * a - a.cross(b);
    return UnitQuaternion{{a0 * b0 - a.dot(b), c(0), c(1), c(2)}};
}

double UnitQuaternion::distance(const UnitQuaternion &other) const {
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        plus += (u[k] - other.u[k]) * (u[k] - other.u[k]);
        minus += (u[k] + other.u[k]) * (u[k] + other.u[k]);
    }
    return std::sqrt(std::min(plus, minus));
}

Eigen::Matrix3d bloch_rotation(const CMatrix &u) {
    const std::array<CMatrix, 3> sigma{pauli_x(), pauli_y(), pauli_z()};
    Eigen::Matrix3d o;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            o(i, j) = 0.5 * (sigma[static_cast<std::size_t>(i)] * u * sigma[static_cast<std::size_t>(j)] *
                             u.adjoint())
                                .trace()
                                .real();
        }
    }
    return o;
}

OrthogonalAction OrthogonalAction::from_matrix(const Eigen::Matrix3d &m, double tol) {
    double err = (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (err > tol) {
        throw std::invalid_argument("matrix is not orthogonal (deviation " + format_number(err) + ")");
    }
    return OrthogonalAction{m, m.determinant() > 0 ? 1 : -1};
}

double OrthogonalAction::angle_degrees() const {
    const Eigen::Matrix3d proper = det * matrix;
    const Eigen::Vector3d skew(proper(2, 1) - proper(1, 2), proper(0, 2) - proper(2, 0), proper(1, 0) - proper(0, 1));
    return std::atan2(skew.norm() / 2.0, (proper.trace() - 1.0) / 2.0) * 180.0 / M_PI;
}

Eigen::Vector3d OrthogonalAction::axis() const {
    const Eigen::Matrix3d proper = det * matrix;
    const double theta = angle_degrees() * M_PI / 180.0;
    if (theta < 1e-9) {
        return Eigen::Vector3d::UnitZ();
    }
    if (std::sin(theta) > 1e-6) {
        Eigen::Vector3d a(proper(2, 1) - proper(1, 2), proper(0, 2) - proper(2, 0), proper(1, 0) - proper(0, 1));
        return a.normalized();
    }
    const Eigen::Matrix3d outer = (proper + Eigen::Matrix3d::Identity()) / 2.0;
    Eigen::Index k = 0;
    outer.diagonal().maxCoeff(&k);
    Eigen::Vector3d a = outer.col(k).normalized();
    for (int i = 0; i < 3; ++i) {
        if (std::abs(a(i)) > 1e-9) {
            if (a(i) < 0) {
                a = -a;
            }
            break;
        }
    }
    return a;
}

std::string OrthogonalAction::label() const {
    const double angle = angle_degrees();
    std::string rot;
    if (angle < 1e-6) {
        rot = "identity";
    } else {
        const Eigen::Vector3d a = axis();
        rot = "rotation " + format_number(angle) + " deg about (" + format_number(a(0)) + ", " +
              format_number(a(1)) + ", " + format_number(a(2)) + ")";
    }
    if (det > 0) {
        return rot;
    }
    return angle < 1e-6 ? "inversion" : "inversion then " + rot;
}

double q_orthogonality_residual(const TransQuasi &quasi) {
    const RMatrix &q = quasi.table;
    return (q.transpose() * q - RMatrix::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
}

OrthogonalAction m_conjugate(const TransQuasi &quasi, double tol) {
    if (quasi.table.rows() != 4 || quasi.table.cols() != 4) {
        throw std::invalid_argument("m_conjugate needs a 4x4 qubit quasiprobability matrix");
    }
    const PhaseSpace &space = qubit_context().space;
    RMatrix m(4, 4);
    for (int a = 0; a < 4; ++a) {
        const Eigen::Vector3d r = phase_point_bloch(space.point(a));
        m(0, a) = r(0) / 2.0;
        m(1, a) = r(1) / 2.0;
        m(2, a) = r(2) / 2.0;
        m(3, a) = 0.5;
    }
    const RMatrix b = m * quasi.table * m.transpose();
    double off = 0.0;
    for (int k = 0; k < 3; ++k) {
        off = std::max({off, std::abs(b(3, k)), std::abs(b(k, 3))});
    }
    if (off > tol || std::abs(b(3, 3) - 1.0) > tol) {
        throw std::invalid_argument("M Q M^T is not block diagonal with unit corner (off-block " +
                                    format_number(off) + ", corner " + format_number(b(3, 3)) +
                                    "): not a reversible qubit transformation");
    }
    return OrthogonalAction::from_matrix(b.topLeftCorner(3, 3), tol);
}

TransSet inversion_reps() {
    const PhaseSpace &space = qubit_context().space;
    RVector identity_classes = RVector::Constant(4, 0.5);
    identity_classes(0) = -0.5;
    TransSet out;
    out.push_back(TransRep::from_classes(space, qubit_element(0), identity_classes));
    out.push_back(TransRep::from_classes(space, qubit_element(1), RVector::Constant(4, 0.25)));
    out.push_back(TransRep::from_classes(space, qubit_element(2), RVector::Constant(4, 0.25)));
    return out;
}

InversionComposite compose_with_inversion(const TransSet &rotation, double tol) {
    const PhaseSpace &space = qubit_context().space;
    InversionComposite out;
    out.max_input = -1.0;
    for (const TransRep &r : rotation) {
        if (r.symplectic.dimension() != 2) {
            throw std::invalid_argument("compose_with_inversion needs qubit tables");
        }
        out.max_input = std::max(out.max_input, r.max_entry());
        RVector classes = (0.5 - r.class_values.array()).matrix();
        out.reps.push_back(TransRep::from_classes(space, r.symplectic, std::move(classes)));
    }
    out.valid = !rotation.empty() && out.max_input <= 0.5 + tol;
    return out;
}

TransSet r_tables_from_quaternion(const UnitQuaternion &u) {
    const PhaseSpace &space = qubit_context().space;
    auto classes = formula_classes(u);
    TransSet out;
    for (int k = 0; k < 3; ++k) {
        out.push_back(TransRep::from_classes(space, qubit_element(k), classes[static_cast<std::size_t>(k)]));
    }
    return out;
}

double max_table_entry(const UnitQuaternion &u) {
    double m = 0.0;
    for (const RVector &c : formula_classes(u)) {
        m = std::max(m, c.maxCoeff());
    }
    return m;
}

bool inversion_compatible(const UnitQuaternion &u, double tol) { return max_table_entry(u) <= 0.5 + tol; }

std::vector<UnitQuaternion> enumerate_inversion_compatible(double tol) {
    std::vector<UnitQuaternion> out;
    for (int code = 0; code < 81; ++code) {
        std::array<double, 4> v{};
        int rest = code;
        bool any = false;
        for (std::size_t k = 0; k < 4; ++k) {
            v[k] = static_cast<double>(rest % 3 - 1);
            any = any || v[k] != 0.0;
            rest /= 3;
        }
        if (!any) {
            continue;
        }
        UnitQuaternion q = UnitQuaternion::normalized(v).canonical();
        if (!inversion_compatible(q, tol)) {
            continue;
        }
        bool seen = std::any_of(out.begin(), out.end(), [&](const UnitQuaternion &o) { return o.distance(q) < 1e-12; });
        if (!seen) {
            out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end(), [](const UnitQuaternion &a, const UnitQuaternion &b) { return a.u > b.u; });
    return out;
}

SweepResult sweep_su2(const SweepConfig &config) {
    constexpr std::size_t kBlock = 4096;
    const auto twelve = enumerate_inversion_compatible();
    const std::size_t blocks = (config.samples + kBlock - 1) / kBlock;
    std::vector<SweepResult> partial(blocks);
    parallel_for(blocks, [&](std::size_t blk) {
        Rng rng = make_rng(config.seed, blk);
        SweepResult &res = partial[blk];
        const std::size_t end = std::min(config.samples, (blk + 1) * kBlock);
        for (std::size_t i = blk * kBlock; i < end; ++i) {
            UnitQuaternion q = random_quaternion(rng);
            if (max_table_entry(q) > 0.5 + config.epsilon) {
                continue;
            }
            ++res.survivors;
            double nearest = 4.0;
            for (const UnitQuaternion &t : twelve) {
                nearest = std::min(nearest, q.distance(t));
            }
            res.max_distance = std::max(res.max_distance, nearest);
            if (nearest > config.radius) {
                ++res.outside_radius;
            }
        }
    });
    SweepResult total;
    total.config = config;
    for (const SweepResult &p : partial) {
        total.survivors += p.survivors;
        total.outside_radius += p.outside_radius;
        total.max_distance = std::max(total.max_distance, p.max_distance);
    }
    return total;
}

int find_element(const PermutationTheory &theory, const Eigen::Matrix3d &m, double tol) {
    for (std::size_t i = 0; i < theory.elements.size(); ++i) {
        if ((theory.elements[i].action.matrix - m).cwiseAbs().maxCoeff() <= tol) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

PermutationTheory enumerate_permutation_theory(double tol) {
    const PhaseSpace &space = qubit_context().space;
    const auto twelve = enumerate_inversion_compatible(tol);
    PermutationTheory theory;

    auto add = [&](const UnitQuaternion &q, bool inversion) {
        const Eigen::Matrix3d rot = q.rotation();
        const Eigen::Matrix3d m = inversion ? Eigen::Matrix3d(-rot) : rot;
        if (find_element(theory, m) >= 0) {
            return;
        }
        QubitTransformation t;
        t.rotation = q.canonical();
        t.with_inversion = inversion;
        t.action = OrthogonalAction::from_matrix(m, tol);
        t.reps = r_tables_from_quaternion(t.rotation);
        if (inversion) {
            t.reps = compose_with_inversion(t.reps, tol).reps;
        }
        theory.elements.push_back(std::move(t));
    };
    for (const UnitQuaternion &a : twelve) {
        for (const UnitQuaternion &b : twelve) {
            add(a * b, false);
        }
    }
    for (const UnitQuaternion &a : twelve) {
        add(a, true);
    }

    theory.permutes_points = true;
    theory.all_valid = true;
    std::vector<std::array<int, 4>> perms;
    for (QubitTransformation &t : theory.elements) {
        for (int a = 0; a < 4; ++a) {
            const Eigen::Vector3d image = t.action.matrix * phase_point_bloch(space.point(a));
            int hit = -1;
            for (int b = 0; b < 4; ++b) {
                if ((image - phase_point_bloch(space.point(b))).cwiseAbs().maxCoeff() <= 1e-9) {
                    hit = b;
                }
            }
            t.permutation[static_cast<std::size_t>(a)] = hit;
            theory.permutes_points = theory.permutes_points && hit >= 0;
        }
        for (const TransRep &r : t.reps) {
            theory.all_valid = theory.all_valid && r.min_entry() >= -tol;
        }
        if (std::find(perms.begin(), perms.end(), t.permutation) == perms.end()) {
            perms.push_back(t.permutation);
        }
    }
    theory.distinct_permutations = perms.size();

    theory.closed = true;
    theory.inverses = true;
    for (const QubitTransformation &a : theory.elements) {
        theory.inverses = theory.inverses && find_element(theory, a.action.matrix.transpose()) >= 0;
        for (const QubitTransformation &b : theory.elements) {
            theory.closed = theory.closed && find_element(theory, a.action.matrix * b.action.matrix) >= 0;
        }
    }
    return theory;
}

MaximalityCheck maximality_spot_check(const PermutationTheory &theory, std::size_t samples, std::uint64_t seed,
                                      double tol) {
    MaximalityCheck out;
    out.samples = samples;
    Rng rng = make_rng(seed, 0);
    for (std::size_t i = 0; i < samples; ++i) {
        const UnitQuaternion r = random_quaternion(rng);
        if (find_element(theory, r.rotation(), 1e-9) >= 0) {
            ++out.inside;
            continue;
        }
        for (const QubitTransformation &t : theory.elements) {
            if (t.with_inversion && !inversion_compatible(r * t.rotation, tol)) {
                ++out.rejected;
                break;
            }
        }
    }
    return out;
}

}  // namespace epiphase
