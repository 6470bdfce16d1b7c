#pragma once

// General u-equation systems over flag simplicial complexes: residuals,
// stratum restriction to links, Newton witness sampling for the dimension
// claim, the tropical pre-variety, and the catalogue of built-in systems
// (square, hexagon, octagon, Pell, M_{0,n}).

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "chy/kinematics.hpp"
#include "chy/moduli.hpp"
#include "chy/simplicial.hpp"

namespace chy {

struct UEquationSystem {
    SimplicialComplex complex;                 // flag
    std::map<std::pair<int, int>, int> a;      // exponent of u_j in R_i, for j incompatible with i

    int size() const { return complex.num_vertices; }
    bool incompatible(int i, int j) const { return i != j && !complex.compatible(i, j); }

    int exponent(int i, int j) const {
        auto it = a.find({i, j});
        if (it == a.end()) throw std::out_of_range("no exponent for pair");
        return it->second;
    }

    void default_exponents() {
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (incompatible(i, j)) a[{i, j}] = 1;
    }
};

// R_i = u_i + prod_{j incompatible with i} u_j^{a_ij} - 1.
inline Eigen::VectorXd residuals(const UEquationSystem& sys, const Eigen::VectorXd& u) {
    int N = sys.size();
    if (u.size() != N) throw std::invalid_argument("residuals: wrong vector size");
    Eigen::VectorXd r(N);
    for (int i = 0; i < N; ++i) {
        double prod = 1.0;
        for (int j = 0; j < N; ++j)
            if (sys.incompatible(i, j)) prod *= std::pow(u[j], sys.exponent(i, j));
        r[i] = u[i] + prod - 1.0;
    }
    return r;
}

inline Eigen::MatrixXd residual_jacobian(const UEquationSystem& sys, const Eigen::VectorXd& u) {
    int N = sys.size();
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            if (!sys.incompatible(i, j)) continue;
            double term = (double)sys.exponent(i, j) * std::pow(u[j], sys.exponent(i, j) - 1);
            for (int l = 0; l < N; ++l)
                if (l != j && sys.incompatible(i, l)) term *= std::pow(u[l], sys.exponent(i, l));
            J(i, j) += term;
        }
    }
    return J;
}

// Restriction to the stratum of a face: u = 0 on the face, u = 1 off the
// link; the surviving equations are the u-equations of the link complex
// with the inherited exponents.
inline UEquationSystem restrict_to_stratum(const UEquationSystem& sys, const std::vector<int>& face) {
    auto lk = link(sys.complex, face);
    UEquationSystem out;
    out.complex = lk.complex;
    for (int i = 0; i < out.size(); ++i)
        for (int j = 0; j < out.size(); ++j)
            if (out.incompatible(i, j)) out.a[{i, j}] = sys.exponent(lk.vertex_map[i], lk.vertex_map[j]);
    return out;
}

// Gauss-Newton on the full residual vector with a subset of coordinates
// pinned.  The variety has dimension dim(complex)+1, so that many
// coordinates must be fixed for isolated solutions.
struct NewtonWitness {
    Eigen::VectorXd u;
    double residual_norm = 0.0;
    bool converged = false;
};

inline NewtonWitness sample_solution(const UEquationSystem& sys, const std::vector<std::pair<int, double>>& fixed,
                                     std::uint64_t seed, int max_iters = 60, double tol = 1e-12,
                                     int max_restarts = 20) {
    int N = sys.size();
    int expect = sys.complex.dim() + 1;
    if ((int)fixed.size() != expect)
        throw std::invalid_argument("sample_solution: fix exactly dim+1 = " + std::to_string(expect) +
                                    " coordinates");
    std::vector<int> free_idx;
    std::vector<char> is_fixed(N, 0);
    for (auto& [k, v] : fixed) is_fixed[k] = 1;
    for (int k = 0; k < N; ++k)
        if (!is_fixed[k]) free_idx.push_back(k);

    std::mt19937_64 g(seed);
    NewtonWitness best;
    best.residual_norm = 1e300;
    for (int attempt = 0; attempt <= max_restarts; ++attempt) {
        Eigen::VectorXd u(N);
        for (int k = 0; k < N; ++k) u[k] = attempt == 0 ? 0.5 : rng_uniform(g, 0.05, 0.95);
        for (auto& [k, v] : fixed) u[k] = v;
        for (int it = 0; it < max_iters; ++it) {
            Eigen::VectorXd r = residuals(sys, u);
            double nrm = r.lpNorm<Eigen::Infinity>();
            if (nrm < best.residual_norm) {
                best.u = u;
                best.residual_norm = nrm;
            }
            if (nrm < tol) {
                best.converged = true;
                return best;
            }
            Eigen::MatrixXd J = residual_jacobian(sys, u);
            Eigen::MatrixXd Jf(N, (int)free_idx.size());
            for (size_t c = 0; c < free_idx.size(); ++c) Jf.col(c) = J.col(free_idx[c]);
            Eigen::VectorXd step = Jf.completeOrthogonalDecomposition().solve(-r);
            if (!step.allFinite()) break;
            for (size_t c = 0; c < free_idx.size(); ++c) u[free_idx[c]] += step[c];
        }
    }
    best.converged = best.residual_norm < 1e-10;
    return best;
}

// --- tropical pre-variety ----------------------------------------------------

// Cones C(F) = span_{>=0}(e_i : i in F) over the faces of the complex.  A
// vector satisfies all tropical u-equations min(U_i, sum a_ij U_j) = 0 iff
// it is nonnegative with support a face.
struct TropicalPrevariety {
    std::vector<std::vector<int>> cones;  // each cone as the sorted vertex list of its face
};

inline TropicalPrevariety tropical_prevariety(const UEquationSystem& sys) {
    TropicalPrevariety out;
    out.cones = sys.complex.faces();
    return out;
}

inline bool trop_equations_hold(const UEquationSystem& sys, const Eigen::VectorXd& U, double tol = 1e-12) {
    int N = sys.size();
    for (int i = 0; i < N; ++i) {
        double cross = 0.0;
        for (int j = 0; j < N; ++j)
            if (sys.incompatible(i, j)) cross += sys.exponent(i, j) * U[j];
        if (std::abs(std::min(U[i], cross)) > tol) return false;
    }
    return true;
}

inline bool in_prevariety(const UEquationSystem& sys, const Eigen::VectorXd& U, double tol = 1e-12) {
    std::vector<int> support;
    for (int i = 0; i < sys.size(); ++i) {
        if (U[i] < -tol) return false;
        if (U[i] > tol) support.push_back(i);
    }
    return sys.complex.is_face(support);
}

// --- built-in systems ---------------------------------------------------------

// Cycle complex on labelled vertices, in cyclic order.
inline SimplicialComplex cycle_complex(const std::vector<std::string>& labels) {
    int N = (int)labels.size();
    std::vector<std::vector<int>> fs;
    for (int k = 0; k < N; ++k) fs.push_back({k, (k + 1) % N});
    return SimplicialComplex(N, fs, labels);
}

inline UEquationSystem builtin_system(const std::string& name) {
    UEquationSystem sys;
    if (name == "square") {
        sys.complex = cycle_complex({"u1", "u2", "u3", "u4"});
        sys.default_exponents();
        return sys;
    }
    if (name == "hexagon") {
        // vertices u1,v1,u2,v2,u3,v3 in cyclic order; indices mod 3:
        //   u_i + u_{i+1} v_{i+1} u_{i+2} = 1,   v_i + v_{i+1} u_{i+2}^2 v_{i+2} = 1
        sys.complex = cycle_complex({"u1", "v1", "u2", "v2", "u3", "v3"});
        auto u = [](int i) { return 2 * (((i - 1) % 3 + 3) % 3); };
        auto v = [](int i) { return 2 * (((i - 1) % 3 + 3) % 3) + 1; };
        for (int i = 1; i <= 3; ++i) {
            sys.a[{u(i), u(i + 1)}] = 1;
            sys.a[{u(i), v(i + 1)}] = 1;
            sys.a[{u(i), u(i + 2)}] = 1;
            sys.a[{v(i), v(i + 1)}] = 1;
            sys.a[{v(i), u(i + 2)}] = 2;
            sys.a[{v(i), v(i + 2)}] = 1;
        }
        return sys;
    }
    if (name == "octagon") {
        // vertices u1,v1,...,u4,v4 in cyclic order; indices mod 4:
        //   u_i + u_{i+1} v_{i+1} u_{i+2}^2 v_{i+2} u_{i+3} = 1
        //   v_i + v_{i+1} u_{i+2}^3 v_{i+2}^2 u_{i+3}^3 v_{i+3} = 1
        sys.complex = cycle_complex({"u1", "v1", "u2", "v2", "u3", "v3", "u4", "v4"});
        auto u = [](int i) { return 2 * (((i - 1) % 4 + 4) % 4); };
        auto v = [](int i) { return 2 * (((i - 1) % 4 + 4) % 4) + 1; };
        for (int i = 1; i <= 4; ++i) {
            sys.a[{u(i), u(i + 1)}] = 1;
            sys.a[{u(i), v(i + 1)}] = 1;
            sys.a[{u(i), u(i + 2)}] = 2;
            sys.a[{u(i), v(i + 2)}] = 1;
            sys.a[{u(i), u(i + 3)}] = 1;
            sys.a[{v(i), v(i + 1)}] = 1;
            sys.a[{v(i), u(i + 2)}] = 3;
            sys.a[{v(i), v(i + 2)}] = 2;
            sys.a[{v(i), u(i + 3)}] = 3;
            sys.a[{v(i), v(i + 3)}] = 1;
        }
        return sys;
    }
    if (name == "pell3") {
        // u1 + u6 u8 = 1, u4 + u3 u5 = 1, u8 + u1 u2 = 1, u3 + u4 u7 = 1,
        // u5 + u2 u4 u6 = 1, u2 + u5 u7 u8 = 1, u6 + u1 u5 u7 = 1,
        // u7 + u2 u3 u6 = 1, over the complex with the twelve listed facets.
        std::vector<std::vector<int>> fs = {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 7}, {1, 5, 7}, {2, 3, 6},
                                            {2, 4, 6}, {3, 5, 8}, {3, 6, 8}, {4, 6, 8}, {4, 7, 8}, {5, 7, 8}};
        for (auto& f : fs)
            for (auto& v : f) --v;  // 0-based
        std::vector<std::string> lb;
        for (int k = 1; k <= 8; ++k) lb.push_back("u" + std::to_string(k));
        sys.complex = SimplicialComplex(8, fs, lb);
        sys.default_exponents();
        return sys;
    }
    if (name.rfind("M0n(", 0) == 0 && name.back() == ')') {
        int n = std::stoi(name.substr(4, name.size() - 5));
        sys.complex = associahedron_complex(n);
        sys.default_exponents();
        return sys;
    }
    throw std::invalid_argument("unknown builtin system: " + name);
}

// The M_{0,n} u-equations carry the dihedral vector of a moduli point; this
// packs one in the builtin's vertex order.
inline Eigen::VectorXd pack_dihedral(const DihedralVector<double>& u) {
    Eigen::VectorXd out(diagonal_count(u.n));
    int k = 0;
    for (const auto& d : diagonals(u.n)) out[k++] = u.at(d);
    return out;
}

}  // namespace chy
