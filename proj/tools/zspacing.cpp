// Command-line front end: runs each stage of the spacing-correction pipeline
// and emits figure-ready CSV curves plus a run.json manifest that makes every
// invocation reproducible (replay re-executes a manifest bit-for-bit).

#include "zsp/bk.hpp"
#include "zsp/constants.hpp"
#include "zsp/cue.hpp"
#include "zsp/curves.hpp"
#include "zsp/errors.hpp"
#include "zsp/extract.hpp"
#include "zsp/mc.hpp"
#include "zsp/numerics.hpp"
#include "zsp/predict.hpp"
#include "zsp/zeros.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace zsp;

namespace {

constexpr const char* kToolVersion = "zspacing 1.0.0";

// Exit codes: 0 success, 2 invalid arguments, 3 missing/unusable zero data,
// 4 numerical failure.
struct MissingInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<long long> parse_n_seq(const std::string& text) {
    std::vector<long long> out;
    std::string token;
    std::stringstream stream(text);
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size())
            throw std::invalid_argument("bad N-sequence entry '" + token + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty N-sequence");
    return out;
}

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &g.lo, &g.hi, &g.step, &tail) != 3)
        throw std::invalid_argument("grid must look like min:max:step");
    if (!(g.hi > g.lo) || !(g.step > 0.0))
        throw std::invalid_argument("grid needs max > min and step > 0");
    return g;
}

std::vector<double> grid_from_config(const json& config) {
    return make_grid(config.at("grid_min").get<double>(), config.at("grid_max").get<double>(),
                     config.at("grid_step").get<double>());
}

ConstantSet constants_from_config(const json& config) {
    const auto limit = config.at("sieve_limit").get<long long>();
    if (limit >= 1000) return build_constant_set(limit);
    return assemble_constant_set(sieve(limit));
}

std::string emit(const fs::path& out_dir, const std::string& name, const SpacingCurve& curve,
                 json& outputs) {
    const std::string path = (out_dir / name).string();
    validate(curve);
    write_csv(path, curve);
    outputs.push_back(path);
    outputs.push_back(path + ".meta.json");
    return path;
}

std::string emit(const fs::path& out_dir, const std::string& name,
                 const CorrelationCurve& curve, json& outputs) {
    const std::string path = (out_dir / name).string();
    validate(curve);
    write_csv(path, curve);
    outputs.push_back(path);
    outputs.push_back(path + ".meta.json");
    return path;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// Full-precision offset_header zero file, the inverse of load_zeros.
void write_zeros_file(const fs::path& path, const ZeroDataset& ds, json& outputs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    char buf[64];
    std::snprintf(buf, sizeof buf, "# offset %.17g\n", ds.offset);
    out << buf;
    for (double u : ds.ordinates) {
        std::snprintf(buf, sizeof buf, "%.17g\n", u);
        out << buf;
    }
    outputs.push_back(path.string());
}

ZeroDataset load_zeros_checked(const json& config) {
    const std::string path = config.at("zeros").get<std::string>();
    if (path.empty()) throw MissingInput("no zeros file given (--zeros)");
    if (!fs::exists(path)) throw MissingInput("zeros file '" + path + "' does not exist");
    const std::string format = config.at("format").get<std::string>();
    return load_zeros(path, format == "offset_header" ? ZeroFormat::offset_header
                                                      : ZeroFormat::plain);
}

double resolve_height(json& config, const ZeroDataset& ds) {
    double height = config.at("height").get<double>();
    if (height <= 0.0) {
        height = ds.window_center;
        config["height"] = height; // manifest must show the resolved value
    }
    return height;
}

// ---------------------------------------------------------------------------
// Command bodies. Each reads only `config` (so replay sees the same world),
// emits its files under out_dir, and reports produced paths + results.

void cmd_constants(json& config, const ConstantSet& cs, const fs::path& out_dir,
                   json& outputs, json& results) {
    (void)config;
    const std::string path = (out_dir / "constants.json").string();
    write_text(path, constant_set_json(cs));
    outputs.push_back(path);
    results["lambda"] = cs.lambda;
    results["c_ratio"] = cs.c_ratio;
    results["tail_error"] = cs.tail_error;
}

void cmd_cue_spacing(json& config, const fs::path& out_dir, json& outputs, json& results) {
    const auto n = config.at("n").get<long long>();
    const std::vector<double> grid = grid_from_config(config);
    const SpacingCurve curve = spacing_density(KernelSpec{n}, grid);
    emit(out_dir, "cue_spacing.csv", curve, outputs);
    results["n"] = n;
    results["mass"] = trapezoid(curve.grid, curve.values);
}

void cmd_extract(json& config, const fs::path& out_dir, json& outputs, json& results) {
    const auto n_seq = config.at("n_sequence").get<std::vector<long long>>();
    const std::vector<double> grid = grid_from_config(config);
    const ExtractionReport report = extract_p1(n_seq, grid);
    emit(out_dir, "p0.csv", report.p0, outputs);
    emit(out_dir, "p1.csv", report.p1, outputs);
    results["consistency_error"] = report.consistency_error;
}

void cmd_predict(json& config, const ConstantSet& cs, const fs::path& out_dir, json& outputs,
                 json& results) {
    const PredictionParams params = derive_params(config.at("height").get<double>(), cs);
    const auto n_seq = config.at("n_sequence").get<std::vector<long long>>();
    const double step = config.at("grid_step").get<double>();

    // The p1 table must cover alpha * grid_max, so extract on a wider span.
    const std::vector<double> wide = make_grid(0.0, 6.0, step);
    const ExtractionReport report = extract_p1(n_seq, wide);
    const std::vector<double> grid = grid_from_config(config);

    emit(out_dir, "p0.csv", report.p0, outputs);
    emit(out_dir, "p1.csv", report.p1, outputs);
    emit(out_dir, "delta_p.csv", delta_p(params, report.p1, grid), outputs);
    emit(out_dir, "predicted.csv", predicted_spacing(params, report.p0, report.p1, grid),
         outputs);

    results["n0"] = params.ctx.n0;
    results["n_eff"] = params.n_eff;
    results["alpha"] = params.alpha;
    results["rho_bar"] = params.ctx.rho_bar;
    results["consistency_error"] = report.consistency_error;
}

void cmd_analyze(json& config, const ConstantSet& cs, const fs::path& out_dir, json& outputs,
                 json& results) {
    const ZeroDataset ds = load_zeros_checked(config);
    const PredictionParams params = derive_params(resolve_height(config, ds), cs);
    const BinSpec bins{config.at("bins_lo").get<double>(), config.at("bins_hi").get<double>(),
                       config.at("bins_n").get<int>()};
    const EmpiricalStats stats = analyze(ds, params, bins);
    emit(out_dir, "spacing_hist.csv", stats.spacing_hist, outputs);
    emit(out_dir, "r2_hist.csv", stats.r2_hist, outputs);

    const std::vector<double> spacings = unfold(ds);
    KahanSum mean;
    for (double s : spacings) mean.add(s);
    results["count"] = ds.count;
    results["window_center"] = ds.window_center;
    results["mean_spacing"] = mean.value() / static_cast<double>(spacings.size());
    results["n_eff"] = params.n_eff;
    results["alpha"] = params.alpha;
}

void cmd_mc(json& config, const fs::path& out_dir, json& outputs, json& results) {
    const auto n = config.at("n").get<long long>();
    const auto samples = config.at("samples").get<long long>();
    const auto seed = config.at("seed").get<uint64_t>();
    const McRun run = sample_cue(n, samples, seed, config.at("haar_correction").get<bool>());

    const BinSpec bins{config.at("bins_lo").get<double>(), config.at("bins_hi").get<double>(),
                       config.at("bins_n").get<int>()};
    emit(out_dir, "mc_spacing.csv", mc_spacing_curve_sample_errors(run, bins), outputs);

    const double r2_hi = std::min(bins.hi, static_cast<double>(n));
    const BinSpec r2_bins{bins.lo, r2_hi,
                          std::max(1, static_cast<int>(bins.nbins * (r2_hi - bins.lo)
                                                       / (bins.hi - bins.lo)))};
    emit(out_dir, "mc_r2.csv", mc_pair_correlation(run, r2_bins), outputs);

    const double height = config.at("height").get<double>();
    if (height > 0.0)
        write_zeros_file(out_dir / "surrogate_zeros.txt", surrogate_dataset(run, height),
                         outputs);

    KahanSum mean;
    for (double s : run.spacings) mean.add(s);
    results["mean_spacing"] = mean.value() / static_cast<double>(run.spacings.size());
    results["spacings"] = static_cast<long long>(run.spacings.size());
}

void cmd_figure(json& config, const ConstantSet& cs, const fs::path& out_dir, json& outputs,
                json& results) {
    const std::string panel = config.at("panel").get<std::string>();
    const ZeroDataset ds = load_zeros_checked(config);
    const PredictionParams params = derive_params(resolve_height(config, ds), cs);
    const BinSpec bins{config.at("bins_lo").get<double>(), config.at("bins_hi").get<double>(),
                       config.at("bins_n").get<int>()};

    EmpiricalStats stats;
    stats.params = params;
    stats.spacing_hist = spacing_histogram(unfold(ds), bins);

    const auto n_seq = config.at("n_sequence").get<std::vector<long long>>();
    const std::vector<double> wide = make_grid(0.0, 6.0, config.at("grid_step").get<double>());
    const ExtractionReport report = extract_p1(n_seq, wide);
    const std::vector<double> grid = grid_from_config(config);

    results["n0"] = params.ctx.n0;
    results["n_eff"] = params.n_eff;
    results["alpha"] = params.alpha;

    if (panel == "1a") {
        emit(out_dir, "empirical.csv", stats.spacing_hist, outputs);
        emit(out_dir, "p0.csv", report.p0, outputs);
        return;
    }
    if (panel == "1b") {
        emit(out_dir, "empirical_diff.csv", residuals(stats, report.p0), outputs);
        // Finite-N reference at the nearest integer dimension to n0.
        const long long n_round = std::llround(params.ctx.n0);
        const SpacingCurve pn = spacing_density(KernelSpec{n_round}, wide);
        SpacingCurve diff;
        diff.kind = SpacingKind::delta_p;
        diff.grid = wide;
        diff.values.resize(wide.size());
        for (std::size_t i = 0; i < wide.size(); ++i)
            diff.values[i] = pn.values[i] - report.p0.values[i];
        diff.meta["n"] = n_round;
        diff.meta["role"] = "finite_n_minus_asymptotic";
        emit(out_dir, "finite_n_diff.csv", diff, outputs);
        results["n_round"] = n_round;
        return;
    }
    if (panel == "2a" || panel == "3a") {
        emit(out_dir, "empirical_delta.csv", residuals(stats, report.p0), outputs);
        emit(out_dir, "delta_rescaled.csv", delta_p(params, report.p1, grid), outputs);
        emit(out_dir, "delta_norescale.csv",
             delta_p(params, report.p1, grid, /*no_rescale=*/true), outputs);
        return;
    }
    // 2b / 3b: residual after subtracting the full prediction. The prediction
    // grid spans the histogram bins, not the theory span: alpha * bins.hi must
    // stay inside the p1 table where alpha * 6 would not.
    const std::vector<double> pred_grid =
        make_grid(bins.lo, bins.hi, config.at("grid_step").get<double>());
    const SpacingCurve predicted =
        predicted_spacing(params, report.p0, report.p1, pred_grid);
    emit(out_dir, "residual.csv", residuals(stats, predicted), outputs);
}

json run_command(const std::string& command, json config, const fs::path& out_dir) {
    fs::create_directories(out_dir);

    const ConstantSet cs = constants_from_config(config);
    json outputs = json::array();
    json results = json::object();

    if (command == "constants")
        cmd_constants(config, cs, out_dir, outputs, results);
    else if (command == "cue-spacing")
        cmd_cue_spacing(config, out_dir, outputs, results);
    else if (command == "extract")
        cmd_extract(config, out_dir, outputs, results);
    else if (command == "predict")
        cmd_predict(config, cs, out_dir, outputs, results);
    else if (command == "analyze")
        cmd_analyze(config, cs, out_dir, outputs, results);
    else if (command == "mc")
        cmd_mc(config, out_dir, outputs, results);
    else if (command == "figure")
        cmd_figure(config, cs, out_dir, outputs, results);
    else
        throw std::invalid_argument("unknown command '" + command + "'");

    json manifest;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["constant_set"] = json::parse(constant_set_json(cs));
    manifest["results"] = results;
    manifest["tool_version"] = kToolVersion;

    const std::string manifest_path = (out_dir / "run.json").string();
    outputs.push_back(manifest_path);
    manifest["outputs"] = outputs;
    write_text(manifest_path, manifest.dump(2) + "\n");
    return manifest;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-size spacing statistics of zeta zeros and the CUE"};
    app.require_subcommand(1);

    double sieve_limit = 1e7;
    double height = 0.0;
    std::string n_seq_text = "16,32,64,128";
    std::string grid_text = "0:4:0.02";
    std::string zeros_path;
    std::string format = "plain";
    std::string out_dir = "zspacing_out";
    std::string panel;
    std::string manifest_path;
    long long n = 0;
    long long samples = 10000;
    uint64_t seed = 1;
    int threads = 1;
    bool no_haar_correction = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--sieve-limit", sieve_limit, "Prime sieve bound");
        cmd->add_option("--threads", threads, "Worker cap (stages run sequentially)");
        cmd->add_option("--out-dir", out_dir, "Output directory");
    };

    auto* c_constants = app.add_subcommand("constants", "Compute the constant set");
    add_common(c_constants);

    auto* c_cue = app.add_subcommand("cue-spacing", "Finite-N spacing density");
    add_common(c_cue);
    c_cue->add_option("--n", n, "Matrix dimension")->required();
    c_cue->add_option("--grid", grid_text, "Evaluation grid min:max:step");

    auto* c_extract = app.add_subcommand("extract", "Extrapolate p0 and the 1/N^2 term");
    add_common(c_extract);
    c_extract->add_option("--n-seq", n_seq_text, "Comma-separated dimensions");
    c_extract->add_option("--grid", grid_text, "Evaluation grid min:max:step");

    auto* c_predict = app.add_subcommand("predict", "Predicted spacing curve at a height");
    add_common(c_predict);
    c_predict->add_option("--height", height, "Height E on the critical line")->required();
    c_predict->add_option("--n-seq", n_seq_text, "Comma-separated dimensions");
    c_predict->add_option("--grid", grid_text, "Output grid min:max:step");

    auto* c_analyze = app.add_subcommand("analyze", "Empirical statistics of a zero table");
    add_common(c_analyze);
    c_analyze->add_option("--zeros", zeros_path, "Zero ordinate file")->required();
    c_analyze->add_option("--format", format, "plain|offset_header")
        ->check(CLI::IsMember({"plain", "offset_header"}));
    c_analyze->add_option("--height", height, "Height E (default: window center)");

    auto* c_mc = app.add_subcommand("mc", "Monte Carlo CUE sampling");
    add_common(c_mc);
    c_mc->add_option("--n", n, "Matrix dimension")->required();
    c_mc->add_option("--samples", samples, "Sample count");
    c_mc->add_option("--seed", seed, "RNG seed");
    c_mc->add_option("--height", height, "Also write a surrogate zero table at this height");
    c_mc->add_flag("--no-haar-correction", no_haar_correction,
                   "Skip the QR phase fix (deliberately defective sampling)");

    auto* c_figure = app.add_subcommand("figure", "Curve set of one figure panel");
    add_common(c_figure);
    c_figure->add_option("panel", panel, "Panel id")
        ->required()
        ->check(CLI::IsMember({"1a", "1b", "2a", "2b", "3a", "3b"}));
    c_figure->add_option("--zeros", zeros_path, "Zero ordinate file")->required();
    c_figure->add_option("--format", format, "plain|offset_header")
        ->check(CLI::IsMember({"plain", "offset_header"}));
    c_figure->add_option("--height", height, "Height E (default: window center)");
    c_figure->add_option("--n-seq", n_seq_text, "Comma-separated dimensions");
    c_figure->add_option("--grid", grid_text, "Theory grid min:max:step");

    auto* c_replay = app.add_subcommand("replay", "Re-execute a run.json manifest");
    c_replay->add_option("--manifest", manifest_path, "Manifest to replay")->required();
    c_replay->add_option("--out-dir", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::string command;
        json config;

        if (c_replay->parsed()) {
            if (!fs::exists(manifest_path))
                throw MissingInput("manifest '" + manifest_path + "' does not exist");
            std::ifstream in(manifest_path);
            const json manifest = json::parse(in);
            command = manifest.at("command").get<std::string>();
            config = manifest.at("config");
        } else {
            config["sieve_limit"] = static_cast<long long>(std::llround(sieve_limit));
            config["threads"] = threads;
            if (c_constants->parsed()) {
                command = "constants";
            } else if (c_cue->parsed()) {
                command = "cue-spacing";
                const GridSpec g = parse_grid(grid_text);
                config["n"] = n;
                config["grid_min"] = g.lo;
                config["grid_max"] = g.hi;
                config["grid_step"] = g.step;
            } else if (c_extract->parsed()) {
                command = "extract";
                const GridSpec g = parse_grid(grid_text);
                config["n_sequence"] = parse_n_seq(n_seq_text);
                config["grid_min"] = g.lo;
                config["grid_max"] = g.hi;
                config["grid_step"] = g.step;
            } else if (c_predict->parsed()) {
                command = "predict";
                const GridSpec g = parse_grid(grid_text);
                config["height"] = height;
                config["n_sequence"] = parse_n_seq(n_seq_text);
                config["grid_min"] = g.lo;
                config["grid_max"] = g.hi;
                config["grid_step"] = g.step;
            } else if (c_analyze->parsed()) {
                command = "analyze";
                config["zeros"] = zeros_path;
                config["format"] = format;
                config["height"] = height;
                config["bins_lo"] = 0.0;
                config["bins_hi"] = 4.0;
                config["bins_n"] = 80;
            } else if (c_mc->parsed()) {
                command = "mc";
                config["n"] = n;
                config["samples"] = samples;
                config["seed"] = seed;
                config["height"] = height;
                config["haar_correction"] = !no_haar_correction;
                config["bins_lo"] = 0.0;
                config["bins_hi"] = 4.0;
                config["bins_n"] = 80;
            } else if (c_figure->parsed()) {
                command = "figure";
                const GridSpec g = parse_grid(grid_text);
                config["panel"] = panel;
                config["zeros"] = zeros_path;
                config["format"] = format;
                config["height"] = height;
                config["n_sequence"] = parse_n_seq(n_seq_text);
                config["grid_min"] = g.lo;
                config["grid_max"] = g.hi;
                config["grid_step"] = g.step;
                config["bins_lo"] = 0.0;
                config["bins_hi"] = 4.0;
                config["bins_n"] = 80;
            }
        }

        run_command(command, config, out_dir);
        return 0;
    } catch (const MissingInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s (line %ld)\n", e.what(), e.line());
        return 3;
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s (line %ld)\n", e.what(), e.line());
        return 3;
    } catch (const ConditioningError& e) {
        std::fprintf(stderr, "numerical failure: %s (s = %g)\n", e.what(), e.where());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    }
}
