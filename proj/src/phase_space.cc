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

#include "epiphase/phase_space.h"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace epiphase {

namespace {

int mod(long long x, int d) {
    long long r = x % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) {
        return false;
    }
    for (int k = 2; k * k <= n; ++k) {
        if (n % k == 0) {
            return false;
        }
    }
    return true;
}

SymplecticMatrix::SymplecticMatrix(int d, std::array<int, 4> entries) : d_(d) {
    if (d < 2) {
        throw std::invalid_argument("SymplecticMatrix: modulus must be at least 2");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        m_[i] = mod(entries[i], d);
    }
    if (mod(static_cast<long long>(m_[0]) * m_[3] - static_cast<long long>(m_[1]) * m_[2], d) != 1) {
        throw std::invalid_argument("SymplecticMatrix: determinant is not 1 mod " + std::to_string(d) + ": " +
                                    to_string());
    }
}

SymplecticMatrix SymplecticMatrix::identity(int d) { return SymplecticMatrix(d, {1, 0, 0, 1}); }

int SymplecticMatrix::trace() const { return mod(m_[0] + m_[3], d_); }

PhasePoint SymplecticMatrix::apply(PhasePoint point) const {
    return {mod(m_[0] * point.q + m_[1] * point.p, d_), mod(m_[2] * point.q + m_[3] * point.p, d_)};
}

SymplecticMatrix SymplecticMatrix::inverse() const { return SymplecticMatrix(d_, {m_[3], -m_[1], -m_[2], m_[0]}); }

int SymplecticMatrix::code() const { return ((m_[0] * d_ + m_[1]) * d_ + m_[2]) * d_ + m_[3]; }

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix &o) const {
    if (o.d_ != d_) {
        throw std::invalid_argument("SymplecticMatrix: product of matrices over different fields");
    }
    return SymplecticMatrix(d_, {m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
                                 m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]});
}

std::string SymplecticMatrix::to_string() const {
    std::ostringstream out;
    out << "[[" << m_[0] << "," << m_[1] << "],[" << m_[2] << "," << m_[3] << "]]";
    return out.str();
}

int difference_determinant(const SymplecticMatrix &a, const SymplecticMatrix &b) {
    int d = a.dimension();
    int p = a(0, 0) - b(0, 0), q = a(0, 1) - b(0, 1), r = a(1, 0) - b(1, 0), s = a(1, 1) - b(1, 1);
    return mod(static_cast<long long>(p) * s - static_cast<long long>(q) * r, d);
}

int symplectic_product(int d, PhasePoint alpha, PhasePoint beta) {
    return mod(static_cast<long long>(alpha.p) * beta.q - static_cast<long long>(alpha.q) * beta.p, d);
}

PhasePoint displacement(const SymplecticMatrix &s, PhasePoint alpha, PhasePoint beta) {
    int d = s.dimension();
    PhasePoint image = s.apply(alpha);
    return {mod(beta.q - image.q, d), mod(beta.p - image.p, d)};
}

PhaseSpace PhaseSpace::make(int d, int max_dimension) {
    if (!is_prime(d)) {
        throw std::invalid_argument("phase space dimension must be prime, got " + std::to_string(d));
    }
    if (d > max_dimension) {
        throw std::invalid_argument("phase space dimension " + std::to_string(d) + " exceeds the supported maximum " +
                                    std::to_string(max_dimension));
    }
    PhaseSpace s;
    s.d_ = d;
    for (int q = 0; q < d; ++q) {
        for (int p = 0; p < d; ++p) {
            s.points_.push_back({q, p});
        }
    }
    s.inverse_.assign(static_cast<std::size_t>(d), 0);
    for (int x = 1; x < d; ++x) {
        for (int y = 1; y < d; ++y) {
            if ((x * y) % d == 1) {
                s.inverse_[static_cast<std::size_t>(x)] = y;
            }
        }
    }

    s.line_of_.assign(static_cast<std::size_t>(d + 1), std::vector<int>(static_cast<std::size_t>(d * d), -1));
    for (int k = 0; k <= d; ++k) {
        Striation st;
        st.id = k;
        for (int c = 0; c < d; ++c) {
            Line line;
            if (k < d) {
                line.a = mod(-k, d);
                line.b = 1;
            } else {
                line.a = 1;
                line.b = 0;
            }
            line.c = c;
            for (const PhasePoint &pt : s.points_) {
                if (mod(line.a * pt.q + line.b * pt.p, d) == c) {
                    line.points.push_back(pt);
                    s.line_of_[static_cast<std::size_t>(k)][static_cast<std::size_t>(s.index(pt))] = c;
                }
            }
            st.lines.push_back(std::move(line));
        }
        s.striations_.push_back(std::move(st));
    }

    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                for (int e = 0; e < d; ++e) {
                    if (mod(a * e - b * c, d) == 1) {
                        s.group_.emplace_back(d, std::array<int, 4>{a, b, c, e});
                    }
                }
            }
        }
    }
    return s;
}

int PhaseSpace::inverse_mod(int x) const {
    int r = reduce(x);
    if (r == 0) {
        throw std::domain_error("zero has no inverse mod " + std::to_string(d_));
    }
    return inverse_[static_cast<std::size_t>(r)];
}

int PhaseSpace::striation_of_line(const Line &line) const {
    int a = reduce(line.a), b = reduce(line.b);
    if (a == 0 && b == 0) {
        throw std::invalid_argument("line coefficients a and b are both zero");
    }
    // Direction vector of a*q + b*p = c is (b, -a).
    return striation_of_direction(b, -a);
}

const Line &PhaseSpace::line_through(int striation, PhasePoint point) const {
    return striations_.at(static_cast<std::size_t>(striation))
        .lines[static_cast<std::size_t>(line_index_through(striation, point))];
}

int PhaseSpace::striation_of_direction(int dq, int dp) const {
    int x = reduce(dq), y = reduce(dp);
    if (x == 0 && y == 0) {
        throw std::invalid_argument("zero vector has no direction");
    }
    if (x == 0) {
        return d_;
    }
    return reduce(static_cast<long long>(y) * inverse_mod(x));
}

int PhaseSpace::map_striation(const SymplecticMatrix &s, int striation) const {
    PhasePoint dir = striation < d_ ? PhasePoint{1, striation} : PhasePoint{0, 1};
    PhasePoint image = s.apply(dir);
    return striation_of_direction(image.q, image.p);
}

std::string special_subgroup_violation(int d, const std::vector<SymplecticMatrix> &elements) {
    std::size_t expected = static_cast<std::size_t>(d * d - 1);
    if (elements.size() != expected) {
        return "expected " + std::to_string(expected) + " elements, got " + std::to_string(elements.size());
    }
    std::set<int> codes;
    for (const auto &s : elements) {
        if (s.dimension() != d) {
            return "element " + s.to_string() + " is over the wrong field";
        }
        codes.insert(s.code());
    }
    if (codes.size() != elements.size()) {
        return "duplicate elements";
    }
    if (!codes.count(SymplecticMatrix::identity(d).code())) {
        return "identity missing";
    }
    for (const auto &a : elements) {
        if (!codes.count(a.inverse().code())) {
            return "inverse of " + a.to_string() + " missing";
        }
        for (const auto &b : elements) {
            if (!codes.count((a * b).code())) {
                return "product " + a.to_string() + "*" + b.to_string() + " missing";
            }
        }
    }
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            if (difference_determinant(elements[i], elements[j]) == 0) {
                return "singular difference between " + elements[i].to_string() + " and " + elements[j].to_string();
            }
        }
    }
    return {};
}

SpecialSubgroup::SpecialSubgroup(int d, std::vector<SymplecticMatrix> elements) : d_(d) {
    std::string why = special_subgroup_violation(d, elements);
    if (!why.empty()) {
        throw std::invalid_argument("not a special subgroup: " + why);
    }
    int id = SymplecticMatrix::identity(d).code();
    std::sort(elements.begin(), elements.end(), [id](const SymplecticMatrix &a, const SymplecticMatrix &b) {
        if ((a.code() == id) != (b.code() == id)) {
            return a.code() == id;
        }
        return a.code() < b.code();
    });
    elements_ = std::move(elements);
    position_.assign(static_cast<std::size_t>(d * d * d * d), -1);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        position_[static_cast<std::size_t>(elements_[i].code())] = static_cast<int>(i);
    }
    std::size_t n = elements_.size();
    product_.resize(n * n);
    inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        inverse_[i] = index_of(elements_[i].inverse());
        for (std::size_t j = 0; j < n; ++j) {
            product_[i * n + j] = index_of(elements_[i] * elements_[j]);
        }
    }
}

int SpecialSubgroup::index_of(const SymplecticMatrix &s) const {
    if (s.dimension() != d_) {
        return -1;
    }
    return position_[static_cast<std::size_t>(s.code())];
}

std::string SpecialSubgroup::label(std::size_t i) const {
    const SymplecticMatrix &s = elements_.at(i);
    if (d_ == 2) {
        if (s == SymplecticMatrix(2, {1, 0, 0, 1})) return "I";
        if (s == SymplecticMatrix(2, {0, 1, 1, 1})) return "R";
        if (s == SymplecticMatrix(2, {1, 1, 1, 0})) return "L";
    }
    return "T" + std::to_string(i);
}

SubgroupSearchResult find_special_subgroups(const PhaseSpace &space, int max_generators, int limit) {
    if (max_generators < 1) {
        throw std::invalid_argument("max_generators must be at least 1");
    }
    const int d = space.dimension();
    const auto &group = space.symplectic_group();
    const std::size_t order = group.size();
    const std::size_t target = static_cast<std::size_t>(d * d - 1);

    std::vector<int> slot(static_cast<std::size_t>(d * d * d * d), -1);
    for (std::size_t i = 0; i < order; ++i) {
        slot[static_cast<std::size_t>(group[i].code())] = static_cast<int>(i);
    }
    std::vector<int> mul(order * order);
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = 0; j < order; ++j) {
            mul[i * order + j] = slot[static_cast<std::size_t>((group[i] * group[j]).code())];
        }
    }
    const int id = slot[static_cast<std::size_t>(SymplecticMatrix::identity(d).code())];

    // det(S - I) = 2 - tr(S) for det(S) = 1, so a trace-2 element other than
    // the identity can never sit in a nonsingular-difference subgroup.
    std::vector<char> excluded(order, 0);
    std::vector<int> candidates;
    for (std::size_t i = 0; i < order; ++i) {
        if (static_cast<int>(i) == id) {
            continue;
        }
        if (group[i].trace() == space.reduce(2)) {
            excluded[i] = 1;
        } else {
            candidates.push_back(static_cast<int>(i));
        }
    }

    SubgroupSearchResult result;
    result.max_generators = max_generators;
    std::set<std::vector<int>> seen;
    std::vector<int> stamp(order, 0);
    int epoch = 0;
    std::vector<int> members;
    std::vector<int> generators;

    auto closure = [&]() -> bool {
        ++epoch;
        members.assign(1, id);
        stamp[static_cast<std::size_t>(id)] = epoch;
        for (std::size_t k = 0; k < members.size(); ++k) {
            for (int g : generators) {
                int y = mul[static_cast<std::size_t>(g) * order + static_cast<std::size_t>(members[k])];
                if (stamp[static_cast<std::size_t>(y)] == epoch) {
                    continue;
                }
                if (excluded[static_cast<std::size_t>(y)] || members.size() == target) {
                    return false;
                }
                stamp[static_cast<std::size_t>(y)] = epoch;
                members.push_back(y);
            }
        }
        return members.size() == target;
    };

    bool done = false;
    std::function<void(std::size_t)> extend = [&](std::size_t start) {
        if (done) {
            return;
        }
        if (!generators.empty() && closure()) {
            std::vector<int> key = members;
            std::sort(key.begin(), key.end());
            if (seen.insert(key).second) {
                std::vector<SymplecticMatrix> elems;
                for (int k : key) {
                    elems.push_back(group[static_cast<std::size_t>(k)]);
                }
                result.subgroups.emplace_back(d, std::move(elems));
                if (limit > 0 && static_cast<int>(result.subgroups.size()) >= limit) {
                    done = true;
                    return;
                }
            }
        }
        if (static_cast<int>(generators.size()) == max_generators) {
            return;
        }
        for (std::size_t i = start; i < candidates.size() && !done; ++i) {
            generators.push_back(candidates[i]);
            extend(i + 1);
            generators.pop_back();
        }
    };
    extend(0);
    return result;
}

SpecialSubgroup default_special_subgroup(const PhaseSpace &space) {
    auto found = find_special_subgroups(space, 2, 1);
    if (found.subgroups.empty()) {
        throw std::runtime_error("no special subgroup within the generator bound for d = " +
                                 std::to_string(space.dimension()));
    }
    return found.subgroups.front();
}

}  // namespace epiphase
