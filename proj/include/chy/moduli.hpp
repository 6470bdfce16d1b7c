#pragma once

// Points of M_{0,n} in the gauge (sigma_1, sigma_2, sigma_n) = (0, 1, inf),
// the positive y-parametrization, cross-ratios and dihedral coordinates,
// u-equation residuals, the Koba-Nielsen potential with its gradient, the
// canonical form coefficient, and the y-chart monomial data shared by the
// tropical and string modules.
//
// Minor convention: (ab) := sigma_b - sigma_a.  Factors at sigma_n = inf
// always cancel in numerator/denominator pairs and are dropped.
//
// Index pairing: with u_ij = [i,i+1|j+1,j] and X_ij = sum s_ab as defined,
// the monomial identity reads  prod (sigma_i - sigma_j)^{s_ij}
// = +- prod u_ij^{X_{i+1,j+1}}  (indices cyclic).  The printed form without
// the shift does not close numerically; see the tests.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "chy/kinematics.hpp"
#include "chy/polygon.hpp"

namespace chy {

struct ModuliPoint {
    int n = 0;
    std::vector<Complex> sig;  // sigma_3 .. sigma_{n-1}

    ModuliPoint() = default;
    ModuliPoint(int n_, std::vector<Complex> s) : n(n_), sig(std::move(s)) {
        if ((int)sig.size() != n - 3) throw std::invalid_argument("moduli point needs n-3 coordinates");
    }

    bool at_infinity(int i) const { return i == n; }
    Complex sigma(int i) const {
        if (i == 1) return {0.0, 0.0};
        if (i == 2) return {1.0, 0.0};
        if (i == n) throw std::invalid_argument("sigma_n is the point at infinity");
        return sig[i - 3];
    }
};

struct PositivePoint {
    int n = 0;
    std::vector<double> y;  // y_1 .. y_{n-3}, all > 0

    PositivePoint() = default;
    PositivePoint(int n_, std::vector<double> y_) : n(n_), y(std::move(y_)) {
        if ((int)y.size() != n - 3) throw std::invalid_argument("positive point needs n-3 coordinates");
        for (double v : y)
            if (!(v > 0)) throw std::invalid_argument("positive coordinates must be > 0");
    }
};

template <class T>
struct DihedralVector {
    int n = 0;
    std::vector<T> u;  // indexed like diagonals(n)

    DihedralVector() = default;
    explicit DihedralVector(int n_) : n(n_), u(diagonal_count(n_), T(0)) {}
    T& at(const Diagonal& d) { return u[diagonal_index(d, n)]; }
    const T& at(const Diagonal& d) const { return u[diagonal_index(d, n)]; }
    T at(int i, int j) const {
        i = ((i - 1) % n + n) % n + 1;
        j = ((j - 1) % n + n) % n + 1;
        if (i > j) std::swap(i, j);
        return u[diagonal_index(Diagonal(i, j, n), n)];
    }
};

// [ij|kl] = (ik)(jl) / ((il)(jk)); any factor touching sigma_n cancels
// against its partner and is skipped.
inline Complex cross_ratio(const ModuliPoint& p, int i, int j, int k, int l) {
    if (i == j || i == k || i == l || j == k || j == l || k == l)
        throw std::invalid_argument("cross_ratio needs distinct indices");
    auto minor = [&](int a, int b) -> Complex { return p.sigma(b) - p.sigma(a); };
    Complex num(1.0, 0.0), den(1.0, 0.0);
    if (i != p.n && k != p.n) num *= minor(i, k);
    if (j != p.n && l != p.n) num *= minor(j, l);
    if (i != p.n && l != p.n) den *= minor(i, l);
    if (j != p.n && k != p.n) den *= minor(j, k);
    if (den == Complex(0.0, 0.0)) throw std::domain_error("cross_ratio: coincident points");
    return num / den;
}

// u_ij = [i, i+1 | j+1, j], indices cyclic.
inline DihedralVector<Complex> u_from_sigma(const ModuliPoint& p) {
    DihedralVector<Complex> out(p.n);
    auto wrap = [&](int a) { return (a - 1) % p.n + 1; };
    for (const auto& d : diagonals(p.n)) out.at(d) = cross_ratio(p, d.i, wrap(d.i + 1), wrap(d.j + 1), d.j);
    return out;
}

// --- positive parametrization ---------------------------------------------

// P(a, b) = 1 + y_a + y_a y_{a+1} + ... + y_a ... y_b;  P = 1 when b < a.
template <class T>
T y_segment_poly(const std::vector<T>& y, int a, int b) {
    T acc(1), term(1);
    for (int k = a; k <= b; ++k) {
        term *= y[k - 1];
        acc += term;
    }
    return acc;
}

// sigma_j = 1 + x_1 + ... + x_{j-2} with x_k = y_1 ... y_k.
inline ModuliPoint sigma_from_y(const PositivePoint& p) {
    std::vector<Complex> sig;
    double acc = 1.0, x = 1.0;
    for (int k = 1; k <= p.n - 3; ++k) {
        x *= p.y[k - 1];
        acc += x;
        sig.push_back(Complex(acc, 0.0));
    }
    return ModuliPoint(p.n, std::move(sig));
}

// Closed forms for u_ij(y); they agree with u_from_sigma(sigma_from_y(.)).
inline DihedralVector<double> u_from_y(const PositivePoint& p) {
    int n = p.n;
    DihedralVector<double> out(n);
    for (const auto& d : diagonals(n)) {
        int i = d.i, j = d.j;
        double v;
        if (j == n - 1) {
            v = p.y[i - 1] * y_segment_poly(p.y, i + 1, n - 3) / y_segment_poly(p.y, i, n - 3);
        } else if (j == n) {
            v = y_segment_poly(p.y, 1, i - 2) / y_segment_poly(p.y, 1, i - 1);
        } else {
            v = y_segment_poly(p.y, i, j - 1) * y_segment_poly(p.y, i + 1, j - 2) /
                (y_segment_poly(p.y, i, j - 2) * y_segment_poly(p.y, i + 1, j - 1));
        }
        out.at(d) = v;
    }
    return out;
}

// --- u-equations -----------------------------------------------------------

// R_ij = u_ij + prod_{(kl) crossing (ij)} u_kl - 1.
template <class T>
DihedralVector<T> u_equation_residuals(const DihedralVector<T>& u) {
    DihedralVector<T> out(u.n);
    auto diag = diagonals(u.n);
    for (const auto& d : diag) {
        T prod(1);
        for (const auto& e : diag)
            if (crosses(d, e)) prod *= u.at(e);
        out.at(d) = u.at(d) + prod - T(1);
    }
    return out;
}

// R_{A,B,C,D} = u_{A,C} + u_{B,D} - 1 for a decomposition of [n] into four
// non-empty cyclic intervals, each interval given by {first, length}.
template <class T>
T generalized_residual(const DihedralVector<T>& u, std::pair<int, int> A, std::pair<int, int> B,
                       std::pair<int, int> C, std::pair<int, int> D) {
    int n = u.n;
    if (A.second < 1 || B.second < 1 || C.second < 1 || D.second < 1)
        throw std::invalid_argument("generalized residual needs non-empty intervals");
    if (A.second + B.second + C.second + D.second != n)
        throw std::invalid_argument("intervals must decompose [n]");
    auto members = [&](std::pair<int, int> I) {
        std::vector<int> out;
        for (int k = 0; k < I.second; ++k) out.push_back((I.first - 1 + k) % n + 1);
        return out;
    };
    auto block = [&](std::pair<int, int> P, std::pair<int, int> Q) {
        T prod(1);
        for (int a : members(P))
            for (int c : members(Q)) prod *= u.at(a, c);
        return prod;
    };
    return block(A, C) + block(B, D) - T(1);
}

// --- Koba-Nielsen potential -------------------------------------------------

// Principal-branch log of phi_X = prod_{i<j} (sigma_i - sigma_j)^{s_ij} in
// the fixed gauge; factors at sigma_n drop (their exponents pair up).
inline Complex log_potential_sigma(const ModuliPoint& p, const MandelstamPoint<Complex>& m) {
    int n = p.n;
    Complex L(0.0, 0.0);
    for (int j = 3; j <= n - 1; ++j) {
        L += m.s(1, j) * std::log(-p.sigma(j));
        L += m.s(2, j) * std::log(Complex(1.0, 0.0) - p.sigma(j));
    }
    for (int i = 3; i <= n - 1; ++i)
        for (int j = i + 1; j <= n - 1; ++j) L += m.s(i, j) * std::log(p.sigma(i) - p.sigma(j));
    return L;
}

// Same value mod 2 pi i, through the dihedral coordinates: the exponent of
// u_ij is X_{i+1,j+1} (cyclic).
inline Complex log_potential_u(const ModuliPoint& p, const MandelstamPoint<Complex>& m) {
    auto u = u_from_sigma(p);
    auto X = x_from_s(m);
    Complex L(0.0, 0.0);
    for (const auto& d : diagonals(p.n)) L += X.X(d.i + 1, d.j + 1) * std::log(u.at(d));
    return L;
}

inline Complex log_potential(const ModuliPoint& p, const MandelstamPoint<Complex>& m) {
    return log_potential_sigma(p, m);
}

// d log phi / d sigma_k = Q_k = sum_{j != k} s_kj / (sigma_k - sigma_j),
// k = 3..n-1; the j = n term vanishes in the gauge.
inline std::vector<Complex> gradient_log_potential(const ModuliPoint& p, const MandelstamPoint<Complex>& m) {
    int n = p.n;
    std::vector<Complex> out;
    for (int k = 3; k <= n - 1; ++k) {
        Complex q(0.0, 0.0);
        for (int j = 1; j <= n - 1; ++j) {
            if (j == k) continue;
            Complex diff = p.sigma(k) - p.sigma(j);
            if (diff == Complex(0.0, 0.0)) throw std::domain_error("coincident sigma");
            q += m.s(k, j) / diff;
        }
        out.push_back(q);
    }
    return out;
}

// Coefficient of dsigma_3 ^ ... ^ dsigma_{n-1} in the canonical form,
// oriented to match dy_1/y_1 ^ ... : 1 / ((sigma_3-sigma_2)(sigma_4-sigma_3)
// ... (sigma_{n-1}-sigma_{n-2})).
inline Complex canonical_form_coefficient(const ModuliPoint& p) {
    Complex den(1.0, 0.0);
    for (int k = 2; k <= p.n - 2; ++k) den *= p.sigma(k + 1) - p.sigma(k);
    if (den == Complex(0.0, 0.0)) throw std::domain_error("canonical form pole: coincident sigma");
    return Complex(1.0, 0.0) / den;
}

inline double canonical_form_coefficient_y(const PositivePoint& p) {
    double den = 1.0;
    for (double v : p.y) den *= v;
    return 1.0 / den;
}

// --- y-chart monomial data ---------------------------------------------------

// The polynomial p_{ab}(y) = P(a, b-2), registered for 1 <= a < b-1 < b <= n-1.
struct YPolynomial {
    int a = 0, b = 0;
    std::vector<std::vector<int>> monomials;  // exponent vectors in Z^{n-3}, first is 0
};

inline std::vector<YPolynomial> y_polynomials(int n) {
    std::vector<YPolynomial> out;
    for (int a = 1; a <= n - 1; ++a)
        for (int b = a + 2; b <= n - 1; ++b) {
            YPolynomial p;
            p.a = a;
            p.b = b;
            std::vector<int> e(n - 3, 0);
            p.monomials.push_back(e);
            for (int k = a; k <= b - 2; ++k) {
                e[k - 1] += 1;
                p.monomials.push_back(e);
            }
            out.push_back(p);
        }
    return out;
}

inline int y_polynomial_index(int a, int b, int n) {
    int idx = 0;
    for (const auto& p : y_polynomials(n)) {
        if (p.a == a && p.b == b) return idx;
        ++idx;
    }
    return -1;
}

// u_ij as a monomial in y_1..y_{n-3} and the p_ab:  exponents on y, then
// (polynomial index, exponent) pairs.  Factors whose index degenerates
// (P over an empty range) are identically 1 and omitted.
struct UFactor {
    Diagonal d;
    std::vector<int> y_exp;                       // size n-3
    std::vector<std::pair<int, int>> poly_exp;    // (index into y_polynomials(n), exponent)
};

inline std::vector<UFactor> u_factorization(int n) {
    auto polys = y_polynomials(n);
    auto pidx = [&](int a, int b) -> int {
        if (b < a + 2) return -1;  // trivial polynomial, P == 1
        for (size_t k = 0; k < polys.size(); ++k)
            if (polys[k].a == a && polys[k].b == b) return (int)k;
        throw std::logic_error("polynomial index out of table");
    };
    std::vector<UFactor> out;
    for (const auto& d : diagonals(n)) {
        UFactor f;
        f.d = d;
        f.y_exp.assign(n - 3, 0);
        auto add = [&](int a, int b, int e) {
            int k = pidx(a, b);
            if (k >= 0) f.poly_exp.push_back({k, e});
        };
        int i = d.i, j = d.j;
        if (j == n - 1) {
            f.y_exp[i - 1] += 1;
            add(i + 1, n - 1, +1);
            add(i, n - 1, -1);
        } else if (j == n) {
            add(1, i, +1);
            add(1, i + 1, -1);
        } else {
            add(i, j + 1, +1);
            add(i + 1, j, +1);
            add(i, j, -1);
            add(i + 1, j + 1, -1);
        }
        out.push_back(f);
    }
    return out;
}

}  // namespace chy
