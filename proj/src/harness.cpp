#include "radiuslab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "radiuslab/matrix_io.hpp"
#include "radiuslab/rng.hpp"

namespace radiuslab {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Seed streams; one per role so samples never collide across roles.
constexpr std::uint64_t kStreamS = 0;
constexpr std::uint64_t kStreamT = 1;
constexpr std::uint64_t kStreamStart = 3;
constexpr std::uint64_t kStreamWalk = 4;
constexpr std::uint64_t kStreamLemma = 16;

template <class F>
void run_parallel(std::size_t jobs, unsigned requested, F&& fn) {
    const unsigned workers = worker_count(requested, jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < jobs; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct Outcome {
    std::optional<BoundReport> report;
    std::string error;
};

struct TrialData {
    std::optional<ComplexMatrix> s;
    std::optional<ComplexMatrix> t;
    std::vector<Outcome> outcomes;  // one per selector
    std::vector<Witness> lemma_inputs;  // one per selector, lemmas only
};

Witness witness_of(const LemmaInputs& in) {
    Witness w;
    w.s = in.a;
    w.t = in.b;
    w.x = in.x;
    w.y = in.y;
    return w;
}

ComplexMatrix sample_role(const RunConfig& cfg, std::uint64_t stream, std::size_t trial, bool pair_role) {
    EnsembleSpec spec;
    spec.kind = pair_role && cfg.pair_ensemble ? *cfg.pair_ensemble : cfg.ensemble;
    spec.dim = cfg.dim_for(trial);
    spec.scale = cfg.scale;
    spec.seed = derive_seed(cfg.seed, stream, trial);
    return sample(spec);
}

template <class F>
Outcome guarded(F&& f) {
    Outcome o;
    try {
        o.report = f();
    } catch (const Error& e) {
        o.error = e.what();
    }
    return o;
}

// Evaluates every selector on trial i's shared samples.
TrialData run_trial(const RunConfig& cfg, const std::vector<BoundSelector>& sels, std::size_t i) {
    TrialData d;
    d.outcomes.resize(sels.size());
    d.lemma_inputs.resize(sels.size());
    bool need_s = false, need_pair = false;
    for (const auto& sel : sels) {
        const auto arity = sel.info().arity;
        need_s = need_s || arity != BoundArity::Lemma;
        need_pair = need_pair || arity == BoundArity::Pair;
    }
    std::optional<Operand> s_op;
    std::optional<OperandPair> pair;
    std::string setup_error;
    try {
        if (need_s) {
            d.s = sample_role(cfg, kStreamS, i, false);
            s_op.emplace(*d.s, cfg.eval);
        }
        if (need_pair) {
            d.t = sample_role(cfg, kStreamT, i, true);
            pair.emplace(*s_op, Operand(*d.t, cfg.eval));
        }
    } catch (const Error& e) {
        setup_error = e.what();
    }
    for (std::size_t k = 0; k < sels.size(); ++k) {
        const auto& sel = sels[k];
        switch (sel.info().arity) {
        case BoundArity::Single:
            d.outcomes[k] = s_op ? guarded([&] { return evaluate_single(sel, *s_op); }) : Outcome{{}, setup_error};
            break;
        case BoundArity::Pair:
            d.outcomes[k] = pair ? guarded([&] { return evaluate_pair(sel, *pair); }) : Outcome{{}, setup_error};
            break;
        case BoundArity::Lemma: {
            const LemmaInputs in = sample_for(sel, cfg.dim_for(i), derive_seed(cfg.seed, kStreamLemma + k, i));
            d.lemma_inputs[k] = witness_of(in);
            d.outcomes[k] = guarded([&] { return evaluate_lemma(sel, in, cfg.eval); });
            break;
        }
        }
    }
    return d;
}

Witness trial_witness(const TrialData& d, const BoundSelector& sel, std::size_t k) {
    if (sel.info().arity == BoundArity::Lemma) return d.lemma_inputs[k];
    Witness w;
    w.s = d.s;
    if (sel.info().arity == BoundArity::Pair) w.t = d.t;
    return w;
}

// Deterministic reduction in trial order; ties keep the lowest index.
std::vector<BoundAggregate> aggregate(const std::vector<BoundSelector>& sels, const std::vector<TrialData>& data) {
    std::vector<BoundAggregate> out;
    for (std::size_t k = 0; k < sels.size(); ++k) {
        BoundAggregate a;
        a.bound_id = sels[k].label();
        double sum = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const Outcome& o = data[i].outcomes[k];
            ++a.trials;
            if (!o.report) {
                ++a.error_count;
                if (a.first_error.empty()) a.first_error = "trial " + std::to_string(i) + ": " + o.error;
                continue;
            }
            const BoundReport& r = *o.report;
            if (!r.applicable) continue;
            ++a.applicable_count;
            if (r.holds) ++a.pass_count;
            sum += r.slack;
            const double rel = r.relative_slack();
            if (a.applicable_count == 1 || r.slack < a.min_slack) a.min_slack = r.slack;
            if (!a.worst_trial || rel < a.min_relative_slack) {
                a.min_relative_slack = rel;
                a.worst_trial = i;
                a.worst_report = r;
                a.worst_witness = trial_witness(data[i], sels[k], k);
            }
        }
        if (a.applicable_count) a.mean_slack = sum / static_cast<double>(a.applicable_count);
        out.push_back(std::move(a));
    }
    return out;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Sharpness search state: S (and T for pair bounds), each at unit Frobenius norm.
struct Candidate {
    ComplexMatrix s;
    std::optional<ComplexMatrix> t;
};

void normalize(ComplexMatrix& m) {
    const double f = m.frobenius_norm();
    if (f > 0.0) m *= 1.0 / f;
}

struct Scored {
    double value = kInf;
    std::optional<BoundReport> report;
};

Scored score(const BoundSelector& sel, const Candidate& c, const EvalSettings& eval) {
    Scored out;
    try {
        Operand s(c.s, eval);
        BoundReport r = c.t ? evaluate_pair(sel, OperandPair(std::move(s), Operand(*c.t, eval)))
                            : evaluate_single(sel, s);
        if (r.applicable && std::isfinite(r.slack)) out.value = r.relative_slack();
        out.report = std::move(r);
    } catch (const Error&) {
        out.value = kInf;
    }
    return out;
}

void perturb(Candidate& c, Rng& rng, double step) {
    const std::size_t per = c.s.size() * 2;
    const std::size_t total = c.t ? 2 * per : per;
    const std::size_t pick = static_cast<std::size_t>(rng.next() % total);
    ComplexMatrix& m = pick < per ? c.s : *c.t;
    const std::size_t local = pick % per;
    Complex& z = m.entries()[local / 2];
    const double delta = step * rng.normal();
    z += (local % 2 == 0) ? Complex(delta, 0.0) : Complex(0.0, delta);
    normalize(m);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json witness_json(const Witness& w) {
    json j = json::object();
    if (w.s) j["S"] = matrix_to_json(*w.s);
    if (w.t) j["T"] = matrix_to_json(*w.t);
    const auto vec = [](const std::vector<Complex>& v) {
        json a = json::array();
        for (const auto& z : v) a.push_back({z.real(), z.imag()});
        return a;
    };
    if (!w.x.empty()) j["x"] = vec(w.x);
    if (!w.y.empty()) j["y"] = vec(w.y);
    return j;
}

json config_json(const RunConfig& c) {
    json bounds = json::array();
    for (const auto& b : c.bounds) bounds.push_back(b.label());
    json j = {
        {"bounds", bounds},
        {"ensemble", std::string(to_string(c.ensemble))},
        {"dims", {c.dim_lo, c.dim_hi}},
        {"scale", c.scale},
        {"trials", c.trials},
        {"seed", c.seed},
        {"tol_rel", c.eval.tol_rel},
        {"class_tol", c.eval.class_tol},
        {"sweep",
         {{"coarse_grid", c.eval.sweep.coarse_grid},
          {"refine_tol", c.eval.sweep.refine_tol},
          {"max_refine_iters", c.eval.sweep.max_refine_iters}}},
    };
    j["pair_ensemble"] = c.pair_ensemble ? json(std::string(to_string(*c.pair_ensemble))) : json(nullptr);
    return j;
}

json aggregate_json(const BoundAggregate& a) {
    const bool any = a.applicable_count > 0;
    json j = {
        {"bound_id", a.bound_id},
        {"trials", a.trials},
        {"applicable_count", a.applicable_count},
        {"pass_count", a.pass_count},
        {"error_count", a.error_count},
        {"min_slack", any ? json(a.min_slack) : json(nullptr)},
        {"mean_slack", any ? json(a.mean_slack) : json(nullptr)},
        {"min_relative_slack", any ? json(a.min_relative_slack) : json(nullptr)},
        {"worst_trial", a.worst_trial ? json(*a.worst_trial) : json(nullptr)},
    };
    if (!a.first_error.empty()) j["first_error"] = a.first_error;
    if (a.worst_report) {
        j["worst_report"] = report_to_json(*a.worst_report);
        j["worst_witness"] = witness_json(a.worst_witness);
    }
    return j;
}

}  // namespace

void RunConfig::validate() const {
    if (bounds.empty()) throw Error(ErrorCode::BadConfig, "no bounds selected");
    if (trials == 0) throw Error(ErrorCode::BadConfig, "trials must be >= 1");
    if (dim_lo == 0 || dim_hi < dim_lo) throw Error(ErrorCode::BadConfig, "dimension range must satisfy 1 <= lo <= hi");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorCode::BadConfig, "scale must be finite and > 0");
    if (!(eval.tol_rel >= 0.0)) throw Error(ErrorCode::BadConfig, "tol must be >= 0");
    if (!(eval.class_tol > 0.0)) throw Error(ErrorCode::BadConfig, "class tolerance must be > 0");
    eval.sweep.validate();
}

std::size_t RunConfig::dim_for(std::size_t trial) const noexcept {
    return dim_lo + trial % (dim_hi - dim_lo + 1);
}

int SuiteReport::exit_code() const noexcept {
    for (const auto& b : bounds)
        if (b.failed()) return 1;
    if (compare && compare->violations > 0) return 1;
    for (const auto& r : reports)
        if (r.applicable && !r.holds) return 1;
    return 0;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned n = requested;
    if (n == 0) {
        if (const char* env = std::getenv("RADIUSLAB_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v > 0) n = static_cast<unsigned>(v);
        }
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

SuiteReport cmd_verify(const RunConfig& cfg) {
    cfg.validate();
    const auto t0 = Clock::now();
    std::vector<TrialData> data(cfg.trials);
    run_parallel(cfg.trials, cfg.threads, [&](std::size_t i) { data[i] = run_trial(cfg, cfg.bounds, i); });
    SuiteReport rep;
    rep.command = "verify";
    rep.config = cfg;
    rep.bounds = aggregate(cfg.bounds, data);
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

SuiteReport cmd_compare(const RunConfig& base, const BoundSelector& tighter, const BoundSelector& looser) {
    const std::string key = compare_key(tighter);
    if (key.empty() || key != compare_key(looser) || tighter.info().arity != looser.info().arity) {
        throw Error(ErrorCode::IncomparableBounds, tighter.label() + " and " + looser.label() +
                                                       " are not upper bounds on the same quantity");
    }
    RunConfig cfg = base;
    cfg.bounds = {tighter, looser};
    cfg.validate();
    const auto t0 = Clock::now();
    std::vector<TrialData> data(cfg.trials);
    run_parallel(cfg.trials, cfg.threads, [&](std::size_t i) { data[i] = run_trial(cfg, cfg.bounds, i); });

    SuiteReport rep;
    rep.command = "compare";
    rep.config = cfg;
    rep.bounds = aggregate(cfg.bounds, data);
    CompareSummary c;
    c.tighter = tighter.label();
    c.looser = looser.label();
    c.quantity = key;
    double sum = 0.0;
    double worst = -kInf;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& a = data[i].outcomes[0].report;
        const auto& b = data[i].outcomes[1].report;
        if (!a || !b || !a->applicable || !b->applicable) continue;
        ++c.compared;
        const double gap = b->rhs - a->rhs;
        const double excess = a->scale > 0.0 ? -gap / a->scale : -gap;
        if (-gap > cfg.eval.tol_rel * a->scale) ++c.violations;
        sum += gap;
        if (c.compared == 1 || gap < c.min_gap) c.min_gap = gap;
        if (excess > worst) {
            worst = excess;
            c.worst_trial = i;
            c.worst_witness = trial_witness(data[i], tighter, 0);
        }
    }
    if (c.compared) {
        c.mean_gap = sum / static_cast<double>(c.compared);
        c.max_relative_excess = worst;
    }
    rep.compare = std::move(c);
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

SuiteReport cmd_sharpness(const RunConfig& base, const BoundSelector& sel, const SharpnessOptions& opt) {
    const auto arity = sel.info().arity;
    if (arity == BoundArity::Lemma) {
        throw Error(ErrorCode::BadSpec, "sharpness searches single- and two-operand bounds, not lemmas");
    }
    if (opt.starts == 0) throw Error(ErrorCode::BadConfig, "sharpness needs at least one start");
    RunConfig cfg = base;
    cfg.bounds = {sel};
    cfg.validate();
    const auto t0 = Clock::now();

    struct StartResult {
        Scored best;
        std::optional<Candidate> where;
        std::size_t evaluations = 0;
    };
    std::vector<StartResult> results(opt.starts);
    run_parallel(opt.starts, cfg.threads, [&](std::size_t m) {
        Candidate cur{sample_role(cfg, kStreamStart, m, false), std::nullopt};
        normalize(cur.s);
        if (arity == BoundArity::Pair) {
            cur.t = sample_role(cfg, kStreamStart + 100, m, true);
            normalize(*cur.t);
        }
        Rng rng(derive_seed(cfg.seed, kStreamWalk, m));
        Scored best = score(sel, cur, cfg.eval);
        std::size_t evals = 1;
        double step = opt.initial_step;
        for (std::size_t k = 0; k < opt.steps && best.value > opt.stop_at; ++k) {
            Candidate trial = cur;
            perturb(trial, rng, step);
            Scored s = score(sel, trial, cfg.eval);
            ++evals;
            if (s.value < best.value) {
                best = std::move(s);
                cur = std::move(trial);
                step = std::min(step * 1.25, 1.0);
            } else {
                step *= 0.9;
            }
        }
        results[m] = {std::move(best), std::move(cur), evals};
    });

    SharpnessSummary sum;
    sum.bound_id = sel.label();
    sum.starts = opt.starts;
    sum.steps = opt.steps;
    sum.best_relative_slack = kInf;
    std::optional<std::size_t> best_m;
    for (std::size_t m = 0; m < results.size(); ++m) {
        sum.evaluations += results[m].evaluations;
        if (!best_m || results[m].best.value < sum.best_relative_slack) {
            best_m = m;
            sum.best_relative_slack = results[m].best.value;
        }
    }
    const auto& winner = results[*best_m];
    sum.best_report = winner.best.report;
    sum.witness.s = winner.where->s;
    sum.witness.t = winner.where->t;

    SuiteReport rep;
    rep.command = "sharpness";
    rep.config = cfg;
    rep.sharpness = std::move(sum);
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

SuiteReport cmd_eval(const ComplexMatrix& s, const std::optional<ComplexMatrix>& t,
                     const std::vector<BoundSelector>& bounds, const EvalSettings& settings) {
    const auto t0 = Clock::now();
    require_square(s, "eval");
    const ComplexMatrix other = t ? *t : s.adjoint();
    require_same_shape(s, other, "eval");
    SuiteReport rep;
    rep.command = "eval";
    rep.config.bounds = bounds;
    rep.config.eval = settings;
    rep.config.trials = 1;
    rep.config.dim_lo = rep.config.dim_hi = s.rows();

    std::optional<Operand> s_op;
    std::optional<OperandPair> pair;
    for (const auto& sel : bounds) {
        switch (sel.info().arity) {
        case BoundArity::Single:
            if (!s_op) s_op.emplace(s, settings);
            rep.reports.push_back(evaluate_single(sel, *s_op));
            break;
        case BoundArity::Pair:
            if (!s_op) s_op.emplace(s, settings);
            if (!pair) pair.emplace(*s_op, Operand(other, settings));
            rep.reports.push_back(evaluate_pair(sel, *pair));
            break;
        case BoundArity::Lemma: {
            LemmaInputs in;
            in.a = s;
            in.b = other;
            const double v = 1.0 / std::sqrt(static_cast<double>(s.rows()));
            in.x.assign(s.rows(), Complex(v, 0.0));
            in.y = in.x;
            rep.reports.push_back(evaluate_lemma(sel, in, settings));
            break;
        }
        }
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

json report_to_json(const BoundReport& r) {
    json details = json::object();
    for (const auto& [k, v] : r.details) details[k] = v;
    json j = {
        {"bound_id", r.bound_id},
        {"lhs", r.lhs},
        {"rhs", r.rhs},
        {"slack", r.slack},
        {"scale", r.scale},
        {"relative_slack", r.relative_slack()},
        {"holds", r.holds},
        {"applicable", r.applicable},
        {"details", details},
    };
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

json to_json(const SuiteReport& rep, bool include_wall_time) {
    json j = {{"schema", 1}, {"command", rep.command}, {"config", config_json(rep.config)}};
    if (!rep.bounds.empty()) {
        json b = json::array();
        for (const auto& a : rep.bounds) b.push_back(aggregate_json(a));
        j["bounds"] = b;
    }
    if (rep.compare) {
        const auto& c = *rep.compare;
        json cj = {
            {"tighter", c.tighter},
            {"looser", c.looser},
            {"quantity", c.quantity},
            {"compared", c.compared},
            {"violations", c.violations},
            {"max_relative_excess", c.compared ? json(c.max_relative_excess) : json(nullptr)},
            {"mean_gap", c.compared ? json(c.mean_gap) : json(nullptr)},
            {"min_gap", c.compared ? json(c.min_gap) : json(nullptr)},
            {"worst_trial", c.worst_trial ? json(*c.worst_trial) : json(nullptr)},
        };
        if (c.worst_trial) cj["worst_witness"] = witness_json(c.worst_witness);
        j["compare"] = cj;
    }
    if (rep.sharpness) {
        const auto& s = *rep.sharpness;
        json sj = {
            {"bound_id", s.bound_id},
            {"starts", s.starts},
            {"steps", s.steps},
            {"evaluations", s.evaluations},
            {"best_relative_slack", std::isfinite(s.best_relative_slack) ? json(s.best_relative_slack) : json(nullptr)},
            {"witness", witness_json(s.witness)},
        };
        if (s.best_report) sj["best_report"] = report_to_json(*s.best_report);
        j["sharpness"] = sj;
    }
    if (!rep.reports.empty()) {
        json r = json::array();
        for (const auto& x : rep.reports) r.push_back(report_to_json(x));
        j["reports"] = r;
    }
    j["exit_code"] = rep.exit_code();
    if (include_wall_time) j["wall_time_seconds"] = rep.wall_seconds;
    return j;
}

std::string to_csv(const SuiteReport& rep) {
    std::ostringstream out;
    out << "scope,field,value\n";
    const auto row = [&](const std::string& scope, const std::string& field, const std::string& value) {
        out << csv_field(scope) << ',' << field << ',' << csv_field(value) << '\n';
    };
    const auto num = [&](const std::string& scope, const std::string& field, double v) { row(scope, field, fmt17(v)); };
    const auto count = [&](const std::string& scope, const std::string& field, std::size_t v) {
        row(scope, field, std::to_string(v));
    };
    row("run", "schema", "1");
    row("run", "command", rep.command);
    count("run", "seed", rep.config.seed);
    count("run", "trials", rep.config.trials);
    for (const auto& a : rep.bounds) {
        count(a.bound_id, "trials", a.trials);
        count(a.bound_id, "applicable_count", a.applicable_count);
        count(a.bound_id, "pass_count", a.pass_count);
        count(a.bound_id, "error_count", a.error_count);
        if (a.applicable_count) {
            num(a.bound_id, "min_slack", a.min_slack);
            num(a.bound_id, "mean_slack", a.mean_slack);
            num(a.bound_id, "min_relative_slack", a.min_relative_slack);
        }
        if (a.worst_trial) count(a.bound_id, "worst_trial", *a.worst_trial);
    }
    if (rep.compare) {
        const auto& c = *rep.compare;
        row("compare", "tighter", c.tighter);
        row("compare", "looser", c.looser);
        count("compare", "compared", c.compared);
        count("compare", "violations", c.violations);
        if (c.compared) {
            num("compare", "max_relative_excess", c.max_relative_excess);
            num("compare", "mean_gap", c.mean_gap);
            num("compare", "min_gap", c.min_gap);
        }
    }
    if (rep.sharpness) {
        const auto& s = *rep.sharpness;
        row("sharpness", "bound_id", s.bound_id);
        count("sharpness", "evaluations", s.evaluations);
        num("sharpness", "best_relative_slack", s.best_relative_slack);
    }
    for (const auto& r : rep.reports) {
        num(r.bound_id, "lhs", r.lhs);
        num(r.bound_id, "rhs", r.rhs);
        num(r.bound_id, "slack", r.slack);
        num(r.bound_id, "scale", r.scale);
        row(r.bound_id, "holds", r.holds ? "1" : "0");
        row(r.bound_id, "applicable", r.applicable ? "1" : "0");
        for (const auto& [k, v] : r.details) num(r.bound_id, "details." + k, v);
    }
    count("run", "exit_code", static_cast<std::size_t>(rep.exit_code()));
    return out.str();
}

void write_report(const SuiteReport& rep) {
    const std::string text =
        rep.config.format == OutputFormat::Csv ? to_csv(rep) : to_json(rep).dump(2) + "\n";
    if (rep.config.output_path.empty() || rep.config.output_path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw Error(ErrorCode::IOFailure, "cannot write to stdout");
        return;
    }
    std::ofstream out(rep.config.output_path);
    if (!out) throw Error(ErrorCode::IOFailure, "cannot open " + rep.config.output_path);
    out << text;
    if (!out) throw Error(ErrorCode::IOFailure, "write failed for " + rep.config.output_path);
}

}  // namespace radiuslab
