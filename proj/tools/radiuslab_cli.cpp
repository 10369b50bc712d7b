// radiuslab: verify, compare, sharpness and eval front end.
#include <charconv>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "radiuslab/harness.hpp"
#include "radiuslab/matrix_io.hpp"

using namespace radiuslab;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CommonFlags {
    std::string ensemble = "ginibre";
    std::string pair_ensemble;
    std::string dims = "2:16";
    double scale = 1.0;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    double tol = 1e-7;
    double class_tol = 1e-9;
    int grid = 720;
    double refine_tol = 1e-10;
    int refine_iters = 200;
    unsigned threads = 0;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--ensemble", f.ensemble, "ensemble kind for S")->capture_default_str();
    app->add_option("--pair-ensemble", f.pair_ensemble, "ensemble kind for T in two-operand bounds");
    app->add_option("--dim", f.dims, "dimension N or range LO:HI, cycled over trials")->capture_default_str();
    app->add_option("--scale", f.scale, "ensemble scale")->capture_default_str();
    app->add_option("--trials", f.trials, "number of trials")->capture_default_str();
    app->add_option("--seed", f.seed, "base seed")->capture_default_str();
    app->add_option("--tol", f.tol, "relative tolerance for holds")->capture_default_str();
    app->add_option("--class-tol", f.class_tol, "tolerance for hypothesis classification")->capture_default_str();
    app->add_option("--grid", f.grid, "theta grid size")->capture_default_str();
    app->add_option("--refine-tol", f.refine_tol, "golden-section bracket width")->capture_default_str();
    app->add_option("--refine-iters", f.refine_iters, "golden-section iteration cap")->capture_default_str();
    app->add_option("--threads", f.threads, "worker cap (0: RADIUSLAB_THREADS or all cores)");
    app->add_option("--out", f.out, "output path (default stdout)");
    app->add_option("--format", f.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

std::size_t parse_size(const std::string& s) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw Error(ErrorCode::BadConfig, "bad dimension '" + s + "'");
    return v;
}

EnsembleKind parse_kind(const std::string& name) {
    if (const auto k = parse_ensemble_kind(name)) return *k;
    throw Error(ErrorCode::BadSpec, "unknown ensemble '" + name + "'");
}

RunConfig make_config(const CommonFlags& f) {
    RunConfig c;
    c.ensemble = parse_kind(f.ensemble);
    if (!f.pair_ensemble.empty()) c.pair_ensemble = parse_kind(f.pair_ensemble);
    if (const auto colon = f.dims.find(':'); colon != std::string::npos) {
        c.dim_lo = parse_size(f.dims.substr(0, colon));
        c.dim_hi = parse_size(f.dims.substr(colon + 1));
    } else {
        c.dim_lo = c.dim_hi = parse_size(f.dims);
    }
    c.scale = f.scale;
    c.trials = f.trials;
    c.seed = f.seed;
    c.eval.tol_rel = f.tol;
    c.eval.class_tol = f.class_tol;
    c.eval.sweep.coarse_grid = f.grid;
    c.eval.sweep.refine_tol = f.refine_tol;
    c.eval.sweep.max_refine_iters = f.refine_iters;
    c.threads = f.threads;
    c.output_path = f.out;
    c.format = f.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    return c;
}

bool is_usage_error(ErrorCode c) {
    switch (c) {
    case ErrorCode::UnknownBound:
    case ErrorCode::UnknownLemma:
    case ErrorCode::IncomparableBounds:
    case ErrorCode::BadSpec:
    case ErrorCode::BadConfig:
    case ErrorCode::BadExponent:
    case ErrorCode::ParseError:
        return true;
    default:
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical-radius inequality verifier"};
    app.require_subcommand(1);

    CommonFlags verify_flags, compare_flags, sharp_flags, eval_flags;

    std::string verify_bounds = "all";
    auto* verify = app.add_subcommand("verify", "evaluate bounds over an ensemble");
    verify->add_option("--bounds", verify_bounds, "comma-separated ids, id@param, or all")->capture_default_str();
    add_common(verify, verify_flags);

    std::string tighter, looser;
    auto* compare = app.add_subcommand("compare", "check that one upper bound is never above another");
    compare->add_option("--tighter", tighter, "bound claimed to be tighter")->required();
    compare->add_option("--looser", looser, "bound claimed to be looser")->required();
    add_common(compare, compare_flags);

    std::string sharp_bound;
    SharpnessOptions sharp_opt;
    auto* sharp = app.add_subcommand("sharpness", "search for the smallest relative slack");
    sharp->add_option("--bound", sharp_bound, "bound id")->required();
    sharp->add_option("--starts", sharp_opt.starts, "multistart count")->capture_default_str();
    sharp->add_option("--steps", sharp_opt.steps, "perturbation steps per start")->capture_default_str();
    sharp_flags.dims = "2:4";
    add_common(sharp, sharp_flags);

    std::string matrix_path, matrix_t_path, eval_bounds;
    auto* eval = app.add_subcommand("eval", "evaluate bounds on one matrix file");
    eval->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    eval->add_option("--matrix-t", matrix_t_path, "second operand for two-operand bounds (default S*)");
    eval->add_option("--bounds", eval_bounds, "comma-separated ids, id@param, or all")->required();
    add_common(eval, eval_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        SuiteReport rep;
        if (*verify) {
            RunConfig cfg = make_config(verify_flags);
            cfg.bounds = parse_bound_list(verify_bounds);
            rep = cmd_verify(cfg);
        } else if (*compare) {
            RunConfig cfg = make_config(compare_flags);
            rep = cmd_compare(cfg, parse_bound_selector(tighter), parse_bound_selector(looser));
        } else if (*sharp) {
            RunConfig cfg = make_config(sharp_flags);
            rep = cmd_sharpness(cfg, parse_bound_selector(sharp_bound), sharp_opt);
        } else {
            const RunConfig cfg = make_config(eval_flags);
            const ComplexMatrix s = read_matrix_file(matrix_path);
            std::optional<ComplexMatrix> t;
            if (!matrix_t_path.empty()) t = read_matrix_file(matrix_t_path);
            cfg.eval.sweep.validate();
            rep = cmd_eval(s, t, parse_bound_list(eval_bounds), cfg.eval);
            rep.config.output_path = cfg.output_path;
            rep.config.format = cfg.format;
        }
        write_report(rep);
        return rep.exit_code();
    } catch (const Error& e) {
        std::cerr << "radiuslab: " << e.what() << '\n';
        return is_usage_error(e.code()) ? kExitUsage : kExitRuntime;
    }
}
