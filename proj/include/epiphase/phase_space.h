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

#ifndef EPIPHASE_PHASE_SPACE_H
#define EPIPHASE_PHASE_SPACE_H

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace epiphase {

/// Largest prime dimension accepted by default. Every table in the project is
/// O(d^4) so this keeps exhaustive checks cheap.
inline constexpr int kMaxDimension = 11;

bool is_prime(int n);

/// A point of the d x d phase space. Coordinates are residues mod d.
struct PhasePoint {
    int q = 0;
    int p = 0;

    auto operator<=>(const PhasePoint &) const = default;
};

/// Solution set of a*q + b*p = c (mod d). Rays are lines with c = 0.
struct Line {
    int a = 0;
    int b = 0;
    int c = 0;
    std::vector<PhasePoint> points;
};

/// A complete set of d parallel lines.
///
/// Striation k < d holds the lines p = k*q + c (slope k); striation d holds the
/// vertical lines q = c. Line c of a striation is the one with intercept c.
/// For d = 2 this gives X (horizontal) = 0, Y (diagonal) = 1, Z (vertical) = 2.
struct Striation {
    int id = 0;
    std::vector<Line> lines;
};

/// 2x2 matrix over Z_d with unit determinant, acting on column vectors (q, p).
class SymplecticMatrix {
   public:
    SymplecticMatrix() = default;
    /// Entries are row-major {a, b, c, e}; throws if det != 1 (mod d).
    SymplecticMatrix(int d, std::array<int, 4> entries);

    static SymplecticMatrix identity(int d);

    int dimension() const { return d_; }
    const std::array<int, 4> &entries() const { return m_; }
    int operator()(int row, int col) const { return m_[2 * row + col]; }

    int trace() const;
    PhasePoint apply(PhasePoint point) const;
    SymplecticMatrix inverse() const;
    /// Unique integer in [0, d^4) identifying the matrix.
    int code() const;

    /// this * other, i.e. `other` is applied first.
    SymplecticMatrix operator*(const SymplecticMatrix &other) const;
    bool operator==(const SymplecticMatrix &other) const = default;

    std::string to_string() const;

   private:
    int d_ = 0;
    std::array<int, 4> m_{};
};

/// det(a - b) mod d for two matrices over the same field.
int difference_determinant(const SymplecticMatrix &a, const SymplecticMatrix &b);

/// <alpha, beta> = alpha_p * beta_q - alpha_q * beta_p (mod d).
int symplectic_product(int d, PhasePoint alpha, PhasePoint beta);

/// delta = beta - S alpha.
PhasePoint displacement(const SymplecticMatrix &s, PhasePoint alpha, PhasePoint beta);

/// Discrete phase space for a prime dimension. Immutable after construction.
///
/// Points are indexed row-major: index = q*d + p.
class PhaseSpace {
   public:
    /// Throws std::invalid_argument unless d is prime and 2 <= d <= max_dimension.
    static PhaseSpace make(int d, int max_dimension = kMaxDimension);

    int dimension() const { return d_; }
    int point_count() const { return d_ * d_; }
    int striation_count() const { return d_ + 1; }

    int index(PhasePoint point) const { return point.q * d_ + point.p; }
    PhasePoint point(int index) const { return {index / d_, index % d_}; }
    const std::vector<PhasePoint> &points() const { return points_; }

    const std::vector<Striation> &striations() const { return striations_; }
    const Striation &striation(int id) const { return striations_.at(static_cast<std::size_t>(id)); }

    /// Striation containing the given line. Throws if the line is malformed.
    int striation_of_line(const Line &line) const;
    /// Index within its striation of the line through `point`.
    int line_index_through(int striation, PhasePoint point) const {
        return line_of_[static_cast<std::size_t>(striation)][static_cast<std::size_t>(index(point))];
    }
    const Line &line_through(int striation, PhasePoint point) const;

    /// Striation with slope direction (dq, dp) != 0.
    int striation_of_direction(int dq, int dp) const;
    /// Image of striation `striation` under S.
    int map_striation(const SymplecticMatrix &s, int striation) const;

    /// The full symplectic group, ordered by code().
    const std::vector<SymplecticMatrix> &symplectic_group() const { return group_; }

    int reduce(long long x) const {
        long long r = x % d_;
        return static_cast<int>(r < 0 ? r + d_ : r);
    }
    int inverse_mod(int x) const;
    PhasePoint add(PhasePoint a, PhasePoint b) const { return {reduce(a.q + b.q), reduce(a.p + b.p)}; }
    PhasePoint subtract(PhasePoint a, PhasePoint b) const { return {reduce(a.q - b.q), reduce(a.p - b.p)}; }

   private:
    int d_ = 0;
    std::vector<PhasePoint> points_;
    std::vector<Striation> striations_;
    std::vector<std::vector<int>> line_of_;
    std::vector<SymplecticMatrix> group_;
    std::vector<int> inverse_;
};

/// Order-(d^2 - 1) subgroup of the symplectic group in which every pairwise
/// difference is nonsingular. The identity is element 0; the rest follow in
/// code() order.
class SpecialSubgroup {
   public:
    SpecialSubgroup() = default;
    /// Throws std::invalid_argument if the elements do not satisfy the
    /// subgroup axioms or the nonsingular-difference property.
    SpecialSubgroup(int d, std::vector<SymplecticMatrix> elements);

    int dimension() const { return d_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<SymplecticMatrix> &elements() const { return elements_; }
    const SymplecticMatrix &operator[](std::size_t i) const { return elements_[i]; }

    /// Position of `s`, or -1.
    int index_of(const SymplecticMatrix &s) const;
    bool contains(const SymplecticMatrix &s) const { return index_of(s) >= 0; }
    /// Index of elements[left] * elements[right].
    int product_index(std::size_t left, std::size_t right) const {
        return product_[left * elements_.size() + right];
    }
    int inverse_index(std::size_t i) const { return inverse_[i]; }

    /// Conventional name: I, R, L for d = 2, otherwise T<i>.
    std::string label(std::size_t i) const;

   private:
    int d_ = 0;
    std::vector<SymplecticMatrix> elements_;
    std::vector<int> position_;
    std::vector<int> product_;
    std::vector<int> inverse_;
};

/// Structural check of the nonsingular-difference subgroup properties. Returns
/// an empty string when everything holds, otherwise a description of the first
/// violation.
std::string special_subgroup_violation(int d, const std::vector<SymplecticMatrix> &elements);

struct SubgroupSearchResult {
    std::vector<SpecialSubgroup> subgroups;
    int max_generators = 0;
    /// Always "within generator bound": subgroups needing more generators than
    /// the bound are not visited.
    std::string coverage = "within generator bound";
};

/// Every special subgroup generated by at most `max_generators` elements,
/// deduplicated as sets. `limit` > 0 stops after that many distinct hits.
SubgroupSearchResult find_special_subgroups(const PhaseSpace &space, int max_generators = 2, int limit = 0);

/// First subgroup returned by the search; throws std::runtime_error if none exists.
SpecialSubgroup default_special_subgroup(const PhaseSpace &space);

}  // namespace epiphase

#endif
