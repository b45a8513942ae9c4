#include "zsp/mc.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace zsp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Explicit Box-Muller on top of mt19937_64 keeps the draw sequence
// bit-reproducible across standard libraries (std::normal_distribution is
// implementation-defined).
struct GaussianPairSource {
    std::mt19937_64 engine;

    explicit GaussianPairSource(uint64_t seed) : engine(seed) {}

    double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

    std::pair<double, double> pair() {
        const double u1 = 1.0 - uniform(); // (0, 1]: keeps the log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
    }
};

// Eigenphases of one Haar-distributed unitary, in (-pi, pi], unsorted.
std::vector<double> draw_eigenphases(long long n, uint64_t sample_seed, bool haar_correction) {
    const auto dim = static_cast<Eigen::Index>(n);
    GaussianPairSource source(sample_seed);

    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto [re, im] = source.pair();
            g(i, j) = std::complex<double>(re, im) * std::numbers::sqrt2 * 0.5;
        }
    }

    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    if (haar_correction) {
        // Fix the residual phase freedom: divide each column by the phase of
        // the matching R diagonal entry so the factorization is unique and
        // the resulting Q is exactly Haar-distributed.
        for (Eigen::Index j = 0; j < dim; ++j) {
            const std::complex<double> r_jj = qr.matrixQR()(j, j);
            const double mag = std::abs(r_jj);
            q.col(j) *= mag > 0.0 ? r_jj / mag : std::complex<double>(1.0, 0.0);
        }
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(q, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("sample_cue: eigen decomposition failed");

    std::vector<double> phases(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < dim; ++k) {
        const std::complex<double> lambda = solver.eigenvalues()(k);
        if (std::abs(std::abs(lambda) - 1.0) > 1e-8)
            throw std::runtime_error("sample_cue: eigenvalue drifted off the unit circle");
        phases[static_cast<std::size_t>(k)] = std::arg(lambda);
    }
    return phases;
}

void check_run_args(long long n, long long samples) {
    if (n < 2) throw std::invalid_argument("sample_cue: need dimension n >= 2");
    if (samples < 1) throw std::invalid_argument("sample_cue: need at least one sample");
}

// Per-bin mean and scatter over per-sample counts; converts to a density
// normalized by the unconditional spacing count n per sample.
struct SampleMoments {
    std::vector<double> sum;
    std::vector<double> sumsq;
    std::vector<long long> scratch;

    explicit SampleMoments(std::size_t nbins) : sum(nbins, 0.0), sumsq(nbins, 0.0), scratch(nbins, 0) {}

    void absorb() {
        for (std::size_t b = 0; b < scratch.size(); ++b) {
            const auto c = static_cast<double>(scratch[b]);
            sum[b] += c;
            sumsq[b] += c * c;
            scratch[b] = 0;
        }
    }
};

void fill_curve_from_moments(const SampleMoments& moments, const BinSpec& bins,
                             long long n, long long samples,
                             std::vector<double>& grid, std::vector<double>& values,
                             std::vector<double>& errors) {
    const double width = (bins.hi - bins.lo) / bins.nbins;
    const double s_count = static_cast<double>(samples);
    const double norm = 1.0 / (static_cast<double>(n) * width);
    for (int b = 0; b < bins.nbins; ++b) {
        const auto bi = static_cast<std::size_t>(b);
        const double mean = moments.sum[bi] / s_count;
        double var = 0.0;
        if (samples > 1)
            var = std::max(0.0, (moments.sumsq[bi] - moments.sum[bi] * mean) / (s_count - 1.0));
        grid.push_back(bins.lo + (b + 0.5) * width);
        values.push_back(mean * norm);
        errors.push_back(std::sqrt(var / s_count) * norm);
    }
}

} // namespace

McRun sample_cue(long long n, long long samples, uint64_t seed, bool haar_correction) {
    check_run_args(n, samples);
    McRun run;
    run.n = n;
    run.samples = samples;
    run.seed = seed;
    run.spacings.reserve(static_cast<std::size_t>(n * samples));

    const double unfold_scale = static_cast<double>(n) / kTwoPi;
    uint64_t state = seed;
    for (long long s = 0; s < samples; ++s) {
        std::vector<double> phases = draw_eigenphases(n, splitmix64(state), haar_correction);
        std::sort(phases.begin(), phases.end());

        const std::size_t base = run.spacings.size();
        for (std::size_t k = 1; k < phases.size(); ++k)
            run.spacings.push_back((phases[k] - phases[k - 1]) * unfold_scale);
        run.spacings.push_back((phases.front() + kTwoPi - phases.back()) * unfold_scale);

        // Pin the block sum to exactly n (it is n up to rounding already);
        // the wrap gap absorbs the accumulated epsilon.
        double total = 0.0;
        for (std::size_t k = base; k < run.spacings.size(); ++k) total += run.spacings[k];
        run.spacings.back() += static_cast<double>(n) - total;
    }
    return run;
}

std::vector<double> sample_eigenphases(long long n, long long samples, uint64_t seed,
                                       bool haar_correction) {
    check_run_args(n, samples);
    std::vector<double> pooled;
    pooled.reserve(static_cast<std::size_t>(n * samples));
    uint64_t state = seed;
    for (long long s = 0; s < samples; ++s) {
        const std::vector<double> phases = draw_eigenphases(n, splitmix64(state), haar_correction);
        pooled.insert(pooled.end(), phases.begin(), phases.end());
    }
    return pooled;
}

SpacingCurve mc_spacing_curve(const McRun& run, const BinSpec& bins) {
    SpacingCurve curve = spacing_histogram(run.spacings, bins);
    curve.meta["n"] = run.n;
    curve.meta["samples"] = run.samples;
    curve.meta["seed"] = run.seed;
    return curve;
}

SpacingCurve mc_spacing_curve_sample_errors(const McRun& run, const BinSpec& bins) {
    if (bins.nbins < 1 || !(bins.hi > bins.lo))
        throw std::invalid_argument("histogram bins: need nbins >= 1 and hi > lo");
    const double width = (bins.hi - bins.lo) / bins.nbins;
    SampleMoments moments(static_cast<std::size_t>(bins.nbins));

    for (long long s = 0; s < run.samples; ++s) {
        const std::size_t base = static_cast<std::size_t>(s * run.n);
        for (long long k = 0; k < run.n; ++k) {
            const double v = run.spacings[base + static_cast<std::size_t>(k)];
            if (v < bins.lo || v >= bins.hi) continue;
            auto idx = static_cast<std::size_t>((v - bins.lo) / width);
            if (idx >= moments.scratch.size()) idx = moments.scratch.size() - 1;
            ++moments.scratch[idx];
        }
        moments.absorb();
    }

    SpacingCurve curve;
    curve.kind = SpacingKind::empirical;
    fill_curve_from_moments(moments, bins, run.n, run.samples, curve.grid, curve.values,
                            curve.errors);
    curve.meta["n"] = run.n;
    curve.meta["samples"] = run.samples;
    curve.meta["seed"] = run.seed;
    curve.meta["errors"] = "per-sample scatter";
    return curve;
}

CorrelationCurve mc_pair_correlation(const McRun& run, const BinSpec& bins) {
    if (bins.nbins < 1 || !(bins.hi > bins.lo))
        throw std::invalid_argument("histogram bins: need nbins >= 1 and hi > lo");
    if (bins.hi > static_cast<double>(run.n))
        throw std::invalid_argument("mc_pair_correlation: bins.hi exceeds the circle size n");

    const double width = (bins.hi - bins.lo) / bins.nbins;
    const auto n = static_cast<std::size_t>(run.n);
    SampleMoments moments(static_cast<std::size_t>(bins.nbins));
    std::vector<double> pos(n);

    for (long long s = 0; s < run.samples; ++s) {
        const std::size_t base = static_cast<std::size_t>(s) * n;
        pos[0] = 0.0;
        for (std::size_t k = 1; k < n; ++k) pos[k] = pos[k - 1] + run.spacings[base + k - 1];

        // All directed pairs at forward circular distance below bins.hi;
        // every ordered pair appears exactly once, seen from its left point.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t step = 1; step < n; ++step) {
                const std::size_t j = i + step;
                const double target =
                    j < n ? pos[j] : pos[j - n] + static_cast<double>(run.n);
                const double d = target - pos[i];
                if (d >= bins.hi) break;
                if (d < bins.lo) continue;
                auto b = static_cast<std::size_t>((d - bins.lo) / width);
                if (b >= moments.scratch.size()) b = moments.scratch.size() - 1;
                ++moments.scratch[b];
            }
        }
        moments.absorb();
    }

    CorrelationCurve curve;
    curve.origin = CorrelationOrigin::empirical;
    fill_curve_from_moments(moments, bins, run.n, run.samples, curve.grid, curve.values,
                            curve.errors);
    curve.meta["n"] = run.n;
    curve.meta["samples"] = run.samples;
    curve.meta["seed"] = run.seed;
    curve.meta["errors"] = "per-sample scatter";
    return curve;
}

ZeroDataset surrogate_dataset(const McRun& run, double e_height) {
    const HeightContext ctx = make_height_context(e_height);
    ZeroDataset ds;
    ds.offset = e_height;
    ds.ordinates.reserve(run.spacings.size() + 1);
    ds.ordinates.push_back(0.0);
    double t_rel = 0.0;
    for (double s : run.spacings) {
        const double rho = std::log((e_height + t_rel) / kTwoPi) / kTwoPi;
        t_rel += s / rho;
        ds.ordinates.push_back(t_rel);
    }
    (void)ctx;
    ds.count = static_cast<long long>(ds.ordinates.size());
    ds.window_center = e_height + 0.5 * (ds.ordinates.front() + ds.ordinates.back());
    return ds;
}

} // namespace zsp
