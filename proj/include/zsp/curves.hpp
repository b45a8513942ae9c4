/// Sampled-curve containers shared by every module: spacing densities on an
/// s-grid and two-point correlations, each with provenance metadata, plus
/// CSV emission with a JSON sidecar.

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace zsp {

enum class SpacingKind { p_finite_n, p_asymptotic, p1_correction, delta_p, empirical };
enum class CorrelationOrigin { cue_exact, cue_expansion, bk_full, bk_expansion, empirical };

std::string to_string(SpacingKind k);
std::string to_string(CorrelationOrigin o);

/// A spacing-density-like function sampled on an ascending s-grid.
/// errors holds per-point error estimates (empty means none quoted).
/// meta is a free-form provenance record: N or E or dataset id, grid step,
/// error estimate, declared tolerances.
struct SpacingCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> errors;
    SpacingKind kind = SpacingKind::p_finite_n;
    nlohmann::json meta;
};

/// Two-point correlation samples, tagged by how they were produced.
struct CorrelationCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> errors;
    CorrelationOrigin origin = CorrelationOrigin::cue_exact;
    nlohmann::json meta;
};

/// Checks the kind-dependent invariants (grid ascending, positivity floor,
/// normalization of density-like kinds when the grid spans [0, 6]); throws
/// std::logic_error naming the first violated property.
void validate(const SpacingCurve& c);
void validate(const CorrelationCurve& c);

/// Writes "s,value,error_estimate" rows in round-trip precision to `path`
/// and the metadata (including kind/origin) to `path + ".meta.json"`.
void write_csv(const std::string& path, const SpacingCurve& c);
void write_csv(const std::string& path, const CorrelationCurve& c);

} // namespace zsp
