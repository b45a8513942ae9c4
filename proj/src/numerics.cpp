#include "zsp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zsp {

double trapezoid(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("trapezoid: need two matching samples at least");
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        acc.add(0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]));
    return acc.value();
}

double neville_at_zero(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("neville_at_zero: need matching non-empty nodes");
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j])
                throw std::invalid_argument("neville_at_zero: nodes must be distinct");
    std::vector<double> t(y.begin(), y.end());
    const std::size_t n = t.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i)
            t[i] = (x[i + k] * t[i] - x[i] * t[i + 1]) / (x[i + k] - x[i]);
    return t[0];
}

std::vector<double> neville_prefix_estimates(std::span<const double> x,
                                             std::span<const double> y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("neville_prefix_estimates: need matching non-empty nodes");
    std::vector<double> out;
    out.reserve(x.size());
    for (std::size_t k = 1; k <= x.size(); ++k)
        out.push_back(neville_at_zero(x.first(k), y.first(k)));
    return out;
}

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 2)
        throw std::invalid_argument("CubicSpline: need two matching nodes at least");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i] < x_[i + 1]))
            throw std::invalid_argument("CubicSpline: nodes must ascend strictly");

    m_.assign(n, 0.0); // natural boundary: second derivative 0 at both ends
    if (n == 2) return;

    // Tridiagonal system for interior second derivatives, Thomas algorithm.
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), sub(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        sub[i] = h0;
        diag[i] = 2.0 * (h0 + h1);
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * (x_[i] - x_[i - 1]); // upper entry of row i-1 is h_{i-1}
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        const double upper = (i + 2 < n) ? (x_[i + 1] - x_[i]) : 0.0;
        m_[i] = (rhs[i] - upper * m_[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

double CubicSpline::operator()(double s) const {
    if (s < x_.front() || s > x_.back())
        throw std::domain_error("CubicSpline: evaluation outside node span");
    auto it = std::upper_bound(x_.begin(), x_.end(), s);
    std::size_t j = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (j + 1 >= x_.size()) j = x_.size() - 2;
    const double h = x_[j + 1] - x_[j];
    const double a = (x_[j + 1] - s) / h;
    const double b = (s - x_[j]) / h;
    return a * y_[j] + b * y_[j + 1] +
           ((a * a * a - a) * m_[j] + (b * b * b - b) * m_[j + 1]) * h * h / 6.0;
}

double fit_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_log_slope: need two matching points at least");
    double mx = 0.0, my = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] == 0.0)
            throw std::invalid_argument("fit_log_slope: nonpositive abscissa or zero value");
        mx += std::log(x[i]);
        my += std::log(std::abs(y[i]));
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(std::abs(y[i])) - my);
    }
    return sxy / sxx;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi > lo))
        throw std::invalid_argument("make_grid: need hi > lo and step > 0");
    const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) g[i] = lo + static_cast<double>(i) * step;
    g.back() = std::min(g.back(), hi);
    return g;
}

} // namespace zsp
