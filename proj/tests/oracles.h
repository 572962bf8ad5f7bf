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

// Independent reference computations used by the tests. Nothing here calls
// into the library except for plain data types.

#ifndef EPIPHASE_TESTS_ORACLES_H
#define EPIPHASE_TESTS_ORACLES_H

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline int mod(int x, int d) { return ((x % d) + d) % d; }

// Point index q*d + p.
inline int idx(int d, int q, int p) { return mod(q, d) * d + mod(p, d); }

inline CMat pauli(int which) {
    CMat m = CMat::Zero(2, 2);
    const Complex i(0, 1);
    if (which == 0) {
        m << 0, 1, 1, 0;
    } else if (which == 1) {
        m << 0, -i, i, 0;
    } else {
        m << 1, 0, 0, -1;
    }
    return m;
}

inline CMat phase_point(int d, int q, int p) {
    if (d == 2) {
        auto s = [](int k) { return k % 2 == 0 ? 1.0 : -1.0; };
        return 0.5 * (CMat::Identity(2, 2) + s(p) * pauli(0) + s(q + p) * pauli(1) + s(q) * pauli(2));
    }
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
    CMat a = CMat::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            if (mod(2 * q - k - l, d) == 0) {
                a(k, l) = std::pow(omega, mod(p * (k - l), d));
            }
        }
    }
    return a;
}

inline std::vector<CMat> phase_points(int d) {
    std::vector<CMat> out;
    for (int q = 0; q < d; ++q) {
        for (int p = 0; p < d; ++p) {
            out.push_back(phase_point(d, q, p));
        }
    }
    return out;
}

inline RVec wigner(int d, const CMat &w) {
    auto ops = phase_points(d);
    RVec out(d * d);
    for (int a = 0; a < d * d; ++a) {
        out(a) = (ops[a] * w).trace().real() / d;
    }
    return out;
}

// Line indicator: lines are p = k q + c (k < d) or q = c (k = d).
inline bool on_line(int d, int k, int c, int q, int p) {
    return k == d ? mod(q - c, d) == 0 : mod(p - k * q - c, d) == 0;
}

inline CMat line_projector(int d, int k, int c) {
    auto ops = phase_points(d);
    CMat out = CMat::Zero(d, d);
    for (int q = 0; q < d; ++q) {
        for (int p = 0; p < d; ++p) {
            if (on_line(d, k, c, q, p)) {
                out += ops[idx(d, q, p)];
            }
        }
    }
    return out / static_cast<double>(d);
}

// R^B(alpha|w) by explicit projector expectation.
inline RVec prep_table(int d, int k, const CMat &w) {
    RVec out(d * d);
    for (int c = 0; c < d; ++c) {
        double v = (line_projector(d, k, c) * w).trace().real() / d;
        for (int q = 0; q < d; ++q) {
            for (int p = 0; p < d; ++p) {
                if (on_line(d, k, c, q, p)) {
                    out(idx(d, q, p)) = v;
                }
            }
        }
    }
    return out;
}

inline RVec meas_table(int d, int k, const CMat &e) { return prep_table(d, k, e) * d; }

// Q(beta|alpha) for the channel x -> sum_k K x K^dagger.
inline RMat quasi(int d, const std::vector<CMat> &kraus) {
    auto ops = phase_points(d);
    RMat q(d * d, d * d);
    for (int a = 0; a < d * d; ++a) {
        CMat image = CMat::Zero(d, d);
        for (const CMat &k : kraus) {
            image += k * ops[a] * k.adjoint();
        }
        for (int b = 0; b < d * d; ++b) {
            q(b, a) = (ops[b] * image).trace().real() / d;
        }
    }
    return q;
}

struct Sym {
    int a, b, c, e;
};

inline std::pair<int, int> apply(int d, Sym s, int q, int p) {
    return {mod(s.a * q + s.b * p, d), mod(s.c * q + s.e * p, d)};
}

// R^S(beta|alpha) = (1/d^2) sum_mu Q(S mu + delta | mu), delta = beta - S alpha.
inline RMat trans_table(int d, const RMat &q, Sym s) {
    const int n = d * d;
    RVec classes = RVec::Zero(n);
    for (int dq = 0; dq < d; ++dq) {
        for (int dp = 0; dp < d; ++dp) {
            double acc = 0;
            for (int mq = 0; mq < d; ++mq) {
                for (int mp = 0; mp < d; ++mp) {
                    auto [sq, sp] = apply(d, s, mq, mp);
                    acc += q(idx(d, sq + dq, sp + dp), idx(d, mq, mp));
                }
            }
            classes(idx(d, dq, dp)) = acc / n;
        }
    }
    RMat out(n, n);
    for (int aq = 0; aq < d; ++aq) {
        for (int ap = 0; ap < d; ++ap) {
            auto [sq, sp] = apply(d, s, aq, ap);
            for (int bq = 0; bq < d; ++bq) {
                for (int bp = 0; bp < d; ++bp) {
                    out(idx(d, bq, bp), idx(d, aq, ap)) = classes(idx(d, bq - sq, bp - sp));
                }
            }
        }
    }
    return out;
}

// Striation reached from k by S, via the line direction.
inline int map_striation(int d, Sym s, int k) {
    int dq = k == d ? 0 : 1;
    int dp = k == d ? 1 : k;
    auto [x, y] = apply(d, s, dq, dp);
    if (x == 0) {
        return d;
    }
    for (int inv = 1; inv < d; ++inv) {
        if (mod(x * inv, d) == 1) {
            return mod(y * inv, d);
        }
    }
    return -1;
}

inline Sym multiply(int d, Sym l, Sym r) {
    return {mod(l.a * r.a + l.b * r.c, d), mod(l.a * r.b + l.b * r.e, d), mod(l.c * r.a + l.e * r.c, d),
            mod(l.c * r.b + l.e * r.e, d)};
}

inline bool same(Sym x, Sym y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.e == y.e; }

// Naive sum over coherent frameworks of full-table products. `chain` holds one
// channel (Kraus list) per step; `subgroup` the frameworks.
inline double reconstruct(int d, const std::vector<Sym> &subgroup, const CMat &w,
                          const std::vector<std::vector<CMat>> &chain, const CMat &e) {
    const double rand = e.trace().real() / d;
    std::vector<RMat> qs;
    for (const auto &k : chain) {
        qs.push_back(quasi(d, k));
    }
    const std::size_t g = subgroup.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        combos *= g;
    }
    double total = rand;
    for (int b = 0; b <= d; ++b) {
        const RVec prep = prep_table(d, b, w);
        for (std::size_t code = 0; code < combos; ++code) {
            RVec v = prep;
            int striation = b;
            std::size_t rest = code;
            for (std::size_t step = 0; step < chain.size(); ++step) {
                Sym s = subgroup[rest % g];
                rest /= g;
                v = trans_table(d, qs[step], s) * v;
                striation = map_striation(d, s, striation);
            }
            total += meas_table(d, striation, e).dot(v) - rand;
        }
    }
    return total;
}

inline CMat random_unitary(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    CMat z(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            z(i, j) = Complex(n(rng), n(rng));
        }
    }
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        Complex ph = r(j, j) / std::abs(r(j, j));
        q.col(j) *= ph;
    }
    return q;
}

inline CMat random_density(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    CMat g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = Complex(n(rng), n(rng));
        }
    }
    CMat w = g * g.adjoint();
    return w / w.trace().real();
}

inline CMat random_effect(int d, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    CMat v = random_unitary(d, rng);
    Eigen::VectorXcd diag(d);
    for (int i = 0; i < d; ++i) {
        diag(i) = u(rng);
    }
    return v * diag.asDiagonal() * v.adjoint();
}

}  // namespace oracle

#endif
