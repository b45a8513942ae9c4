#include "zsp/cue.hpp"

#include "zsp/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zsp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_spec(const KernelSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("cue: matrix dimension must be at least 2");
}

// sin(pi N u) / (N sin(pi u)) for u near 0, where both factors vanish.
// Guarded by a 3-term series below |u| = 1e-8 (next omitted term ~ u^4).
double kernel_core(double n, double u) {
    if (std::abs(u) < 1e-8) {
        const double t = kPi * u;
        return 1.0 - t * t * (n * n - 1.0) / 6.0;
    }
    return std::sin(kPi * n * u) / (n * std::sin(kPi * u));
}

Eigen::MatrixXd kernel_matrix(long long n, double s) {
    const double nd = static_cast<double>(n);
    Eigen::MatrixXd a(n, n);
    for (long long j = 0; j < n; ++j) {
        a(j, j) = s / nd;
        for (long long k = 0; k < j; ++k) {
            const double d = static_cast<double>(j - k);
            const double v = std::sin(kPi * s * d / nd) / (kPi * d);
            a(j, k) = v;
            a(k, j) = v;
        }
    }
    return a;
}

} // namespace

double kernel(const KernelSpec& spec, double x, double y) {
    check_spec(spec);
    const double nd = static_cast<double>(spec.n);
    const double d = x - y;
    const double m = std::round(d / nd);
    const double u = d / nd - m;
    // Residue sign at the period: the limit at d = m*N is (-1)^(m(N-1)).
    const long long parity = (std::llabs(std::llround(m)) % 2) * ((spec.n - 1) % 2);
    const double sign = parity ? -1.0 : 1.0;
    return sign * kernel_core(nd, u);
}

double r2_cue_exact(const KernelSpec& spec, double s) {
    const double k = kernel(spec, s, 0.0);
    return 1.0 - k * k;
}

double r2_truncated(const KernelSpec& spec, double s, int order) {
    check_spec(spec);
    if (order != 2 && order != 4)
        throw std::invalid_argument("r2_truncated: order must be 2 or 4");
    const double nd = static_cast<double>(spec.n);
    const double t = kPi * s;
    const double sinc = std::abs(t) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t;
    const double sin2 = std::sin(t) * std::sin(t);
    double r = 1.0 - sinc * sinc - sin2 / (3.0 * nd * nd);
    if (order == 4) r -= t * t * sin2 / (15.0 * nd * nd * nd * nd);
    return r;
}

double gap_determinant(const KernelSpec& spec, double s) {
    check_spec(spec);
    const double nd = static_cast<double>(spec.n);
    if (s < 0.0 || s > nd)
        throw std::domain_error("gap_determinant: s outside [0, N]");
    if (s == 0.0) return 1.0; // identity matrix

    const Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(spec.n, spec.n) - kernel_matrix(spec.n, s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    double det = 1.0;
    for (long long i = 0; i < spec.n; ++i) det *= solver.eigenvalues()(i);
    return det;
}

SpacingCurve spacing_density(const KernelSpec& spec, std::span<const double> grid) {
    check_spec(spec);
    const double nd = static_cast<double>(spec.n);
    const double s_max = std::min(nd, 8.0);
    for (double s : grid)
        if (s < 0.0 || s > s_max)
            throw std::domain_error("spacing_density: grid outside [0, min(N, 8)]");

    const long long n = spec.n;
    SpacingCurve curve;
    curve.kind = SpacingKind::p_finite_n;
    curve.grid.assign(grid.begin(), grid.end());
    curve.values.reserve(grid.size());

    Eigen::MatrixXd da(n, n), dda(n, n);
    for (double s : grid) {
        // A and its entrywise s-derivatives; diag(A') = 1/N, diag(A'') = 0.
        const Eigen::MatrixXd a = kernel_matrix(n, s);
        for (long long j = 0; j < n; ++j) {
            da(j, j) = 1.0 / nd;
            dda(j, j) = 0.0;
            for (long long k = 0; k < j; ++k) {
                const double d = static_cast<double>(j - k);
                const double arg = kPi * s * d / nd;
                da(j, k) = da(k, j) = std::cos(arg) / nd;
                dda(j, k) = dda(k, j) = -kPi * d * std::sin(arg) / (nd * nd);
            }
        }

        const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - a;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
        const Eigen::VectorXd& lam = solver.eigenvalues();
        const double lam_max = lam(n - 1);
        if (lam(0) <= 1e-13 * std::max(1.0, lam_max))
            throw ConditioningError("spacing_density: I - A numerically singular", s);

        double det = 1.0;
        for (long long i = 0; i < n; ++i) det *= lam(i);

        const Eigen::MatrixXd b = solver.eigenvectors().transpose() * da * solver.eigenvectors();
        const Eigen::MatrixXd c2 = solver.eigenvectors().transpose() * dda * solver.eigenvectors();

        double t1 = 0.0, t2 = 0.0, t3 = 0.0;
        for (long long i = 0; i < n; ++i) {
            t1 += b(i, i) / lam(i);
            t2 += c2(i, i) / lam(i);
            for (long long j = 0; j < n; ++j) t3 += b(i, j) * b(i, j) / (lam(i) * lam(j));
        }
        // (log E)' = -t1, (log E)'' = -t2 - t3, p = E [ (log E)'' + ((log E)')^2 ].
        const double p = det * (t1 * t1 - t2 - t3);
        if (p < -1e-10)
            throw std::runtime_error("spacing_density: density below the -1e-10 floor");
        curve.values.push_back(p);
    }

    curve.meta["n"] = spec.n;
    curve.meta["error_estimate"] = 1e-10;
    curve.meta["tol"] = 1e-6;
    if (grid.size() >= 2) curve.meta["step"] = grid[1] - grid[0];
    return curve;
}

} // namespace zsp
