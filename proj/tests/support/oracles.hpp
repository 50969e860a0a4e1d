// Independent reference computations used only by the tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

// Cyclic Jacobi rotations; eigenvalues sorted descending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, double tol = 1e-14, int max_sweeps = 100) {
    const Eigen::Index n = a.rows();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= tol * a.norm()) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// D^1/2 K D^1/2 with trapezoid weights on a grid.
inline Eigen::MatrixXd nystrom_matrix(const Eigen::MatrixXd& k, const std::vector<double>& t) {
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double h = t[static_cast<std::size_t>(i + 1)] - t[static_cast<std::size_t>(i)];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    const Eigen::VectorXd r = w.cwiseSqrt();
    return r.asDiagonal() * k * r.asDiagonal();
}

// E1(x) = int_0^inf exp(-x e^v) dv by composite Simpson in long double.
inline double e1_reference(double x, int panels = 200000) {
    const long double xl = x;
    const long double upper = std::log(800.0L / xl) > 1.0L ? std::log(800.0L / xl) : 1.0L;
    const long double h = upper / panels;
    auto f = [&](long double v) { return std::exp(-xl * std::exp(v)); };
    long double sum = f(0.0L) + f(upper);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0L : 2.0L) * f(h * i);
    return static_cast<double>(sum * h / 3.0L);
}

// g_1..g_k on s = ln z from the ODE system
//   dg_i/ds = h(s) - sum_{j<=i} g_j,   h = 1 / (2 cosh(s/2)),
// started deep in the small-z regime where g_i = (2/3)(1/3)^(i-1) e^(s/2).
inline std::vector<std::vector<double>> g_functions_ode(int k, const std::vector<double>& s_out, double s_start = -40.0,
                                                        double step = 1e-3) {
    std::vector<double> g(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) g[static_cast<std::size_t>(i)] = (2.0 / 3.0) * std::pow(1.0 / 3.0, i) * std::exp(0.5 * s_start);
    auto rhs = [k](double s, const std::vector<double>& y) {
        std::vector<double> d(static_cast<std::size_t>(k));
        const double h = 0.5 / std::cosh(0.5 * s);
        double partial = 0.0;
        for (int i = 0; i < k; ++i) {
            partial += y[static_cast<std::size_t>(i)];
            d[static_cast<std::size_t>(i)] = h - partial;
        }
        return d;
    };
    auto axpy = [](const std::vector<double>& y, double a, const std::vector<double>& d) {
        std::vector<double> out(y);
        for (std::size_t i = 0; i < y.size(); ++i) out[i] += a * d[i];
        return out;
    };
    std::vector<std::vector<double>> out(static_cast<std::size_t>(k), std::vector<double>(s_out.size()));
    double s = s_start;
    for (std::size_t p = 0; p < s_out.size(); ++p) {
        while (s < s_out[p]) {
            const double h = std::min(step, s_out[p] - s);
            const auto k1 = rhs(s, g);
            const auto k2 = rhs(s + 0.5 * h, axpy(g, 0.5 * h, k1));
            const auto k3 = rhs(s + 0.5 * h, axpy(g, 0.5 * h, k2));
            const auto k4 = rhs(s + h, axpy(g, h, k3));
            for (std::size_t i = 0; i < g.size(); ++i) g[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            s += h;
        }
        for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)][p] = g[static_cast<std::size_t>(i)];
    }
    return out;
}

// Ladder generator A with d(pi)/dt = A pi for pi_0..pi_N.
inline Eigen::MatrixXd ladder_generator(int n, double gamma) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
    auto rate = [&](int m) { return gamma * m * (n - m + 1); };
    for (int m = 0; m <= n; ++m) {
        a(m, m) = -rate(m);
        if (m < n) a(m, m + 1) = rate(m + 1);
    }
    return a;
}

// <J+(t') J-(t)> for t <= t' from matrix exponentials of the population and coherence generators.
inline double correlation_expm(int n, double gamma, double t, double tp) {
    Eigen::VectorXd pi0 = Eigen::VectorXd::Zero(n + 1);
    pi0[n] = 1.0;
    const Eigen::MatrixXd a = ladder_generator(n, gamma);
    const Eigen::VectorXd pi = (a * t).exp() * pi0;
    auto rate = [&](int m) { return gamma * m * (n - m + 1); };
    // coherence between |m+1> and |m>, m = 0..N-1
    Eigen::VectorXd xi(n);
    for (int m = 0; m < n; ++m) xi[m] = std::sqrt(rate(m + 1)) * pi[m + 1];
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        b(m, m) = -0.5 * (rate(m) + rate(m + 1));
        if (m + 1 < n) b(m, m + 1) = std::sqrt(rate(m + 1) * rate(m + 2));
    }
    const Eigen::VectorXd later = (b * (tp - t)).exp() * xi;
    double k = 0.0;
    for (int m = 0; m < n; ++m) k += std::sqrt(rate(m + 1)) * later[m];
    return k;
}

} // namespace oracle
