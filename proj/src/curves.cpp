#include "zsp/curves.hpp"

#include "zsp/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace zsp {

namespace {

void check_common(const std::vector<double>& grid, const std::vector<double>& values,
                  const std::vector<double>& errors) {
    if (grid.size() != values.size() || grid.empty())
        throw std::logic_error("curve: grid/value size mismatch");
    if (!errors.empty() && errors.size() != grid.size())
        throw std::logic_error("curve: error column size mismatch");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::logic_error("curve: grid must ascend strictly");
    for (double v : values)
        if (!std::isfinite(v)) throw std::logic_error("curve: non-finite value");
}

bool spans_zero_to_six(const std::vector<double>& grid) {
    return grid.front() <= 1e-12 && grid.back() >= 6.0 - 1e-9;
}

std::string format_row(double s, double v, double e) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", s, v, e);
    return buf;
}

void write_rows(const std::string& path, const std::vector<double>& grid,
                const std::vector<double>& values, const std::vector<double>& errors,
                const nlohmann::json& sidecar) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << "s,value,error_estimate\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << format_row(grid[i], values[i], errors.empty() ? 0.0 : errors[i]);
    out.close();

    std::ofstream meta(path + ".meta.json");
    if (!meta) throw std::runtime_error("write_csv: cannot open " + path + ".meta.json");
    meta << sidecar.dump(2) << "\n";
}

} // namespace

std::string to_string(SpacingKind k) {
    switch (k) {
        case SpacingKind::p_finite_n: return "p_finite_n";
        case SpacingKind::p_asymptotic: return "p_asymptotic";
        case SpacingKind::p1_correction: return "p1_correction";
        case SpacingKind::delta_p: return "delta_p";
        case SpacingKind::empirical: return "empirical";
    }
    return "unknown";
}

std::string to_string(CorrelationOrigin o) {
    switch (o) {
        case CorrelationOrigin::cue_exact: return "cue_exact";
        case CorrelationOrigin::cue_expansion: return "cue_expansion";
        case CorrelationOrigin::bk_full: return "bk_full";
        case CorrelationOrigin::bk_expansion: return "bk_expansion";
        case CorrelationOrigin::empirical: return "empirical";
    }
    return "unknown";
}

void validate(const SpacingCurve& c) {
    check_common(c.grid, c.values, c.errors);
    const double tol = c.meta.value("tol", 1e-6);
    const bool density_like =
        c.kind == SpacingKind::p_finite_n || c.kind == SpacingKind::p_asymptotic;
    const bool correction_like =
        c.kind == SpacingKind::p1_correction || c.kind == SpacingKind::delta_p;

    if (density_like || c.kind == SpacingKind::empirical) {
        const double floor = c.kind == SpacingKind::empirical ? 0.0 : -1e-10;
        for (double v : c.values)
            if (v < floor) throw std::logic_error("curve: density value below positivity floor");
    }
    if (spans_zero_to_six(c.grid)) {
        const double mass = trapezoid(c.grid, c.values);
        if (density_like && std::abs(mass - 1.0) > tol)
            throw std::logic_error("curve: density mass off 1 beyond declared tolerance");
        if (correction_like && std::abs(mass) > tol)
            throw std::logic_error("curve: correction mass off 0 beyond declared tolerance");
    }
}

void validate(const CorrelationCurve& c) {
    check_common(c.grid, c.values, c.errors);
    if (c.origin == CorrelationOrigin::cue_exact && c.grid.front() <= 1e-12 &&
        std::abs(c.values.front()) > 1e-10)
        throw std::logic_error("curve: exact CUE correlation must vanish at 0");
    // Decorrelation at large separation, when the grid reaches that regime.
    if (c.grid.back() >= 5.0) {
        const double tail_tol = c.meta.value("tail_tol", 0.05);
        KahanSum sum;
        int count = 0;
        for (std::size_t i = 0; i < c.grid.size(); ++i) {
            if (c.grid[i] < 5.0) continue;
            sum.add(c.values[i]);
            ++count;
        }
        if (count > 0 && std::abs(sum.value() / count - 1.0) > tail_tol)
            throw std::logic_error("curve: correlation tail mean off 1 beyond declared tolerance");
    }
}

void write_csv(const std::string& path, const SpacingCurve& c) {
    nlohmann::json sidecar = c.meta;
    sidecar["kind"] = to_string(c.kind);
    sidecar["columns"] = {"s", "value", "error_estimate"};
    write_rows(path, c.grid, c.values, c.errors, sidecar);
}

void write_csv(const std::string& path, const CorrelationCurve& c) {
    nlohmann::json sidecar = c.meta;
    sidecar["origin"] = to_string(c.origin);
    sidecar["columns"] = {"s", "value", "error_estimate"};
    write_rows(path, c.grid, c.values, c.errors, sidecar);
}

} // namespace zsp
