/// Small numerical building blocks shared across modules: compensated
/// summation, trapezoid quadrature, polynomial extrapolation to zero,
/// natural cubic splines, and log-log slope fitting.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace zsp {

/// Kahan compensated accumulator. Keeps long prime sums and quadratures
/// accurate to a few ulps regardless of term count.
class KahanSum {
public:
    void add(double v) {
        double y = v - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// Trapezoid rule on an arbitrary ascending grid.
double trapezoid(std::span<const double> x, std::span<const double> y);

/// Value at 0 of the interpolating polynomial through (x_i, y_i), by
/// Neville's scheme. With nodes x = 1/N^2 this is Richardson extrapolation
/// eliminating one inverse-power term per extra node.
double neville_at_zero(std::span<const double> x, std::span<const double> y);

/// Prefix estimates of neville_at_zero: element k is the extrapolation
/// through the first k+1 nodes. The tail of this sequence measures
/// extrapolation self-consistency.
std::vector<double> neville_prefix_estimates(std::span<const double> x,
                                             std::span<const double> y);

/// Natural cubic spline through ascending nodes. Evaluation outside the node
/// span throws std::domain_error.
class CubicSpline {
public:
    CubicSpline(std::span<const double> x, std::span<const double> y);
    double operator()(double s) const;
    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

private:
    std::vector<double> x_, y_, m_; // m_ holds second derivatives at nodes
};

/// Least-squares slope of log|y| against log(x). For y ~ c * x^(-beta) the
/// returned slope is -beta; callers negate to get a decay exponent.
double fit_log_slope(std::span<const double> x, std::span<const double> y);

/// Uniform grid [lo, hi] with the given step; the last point lands on hi
/// within half a step. Throws std::invalid_argument on bad bounds or step.
std::vector<double> make_grid(double lo, double hi, double step);

} // namespace zsp
