// Acceptance run: one PASS/FAIL line per criterion. argv[1] is the CLI binary.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "radiuslab/harness.hpp"
#include "radiuslab/matrix_io.hpp"

using namespace radiuslab;
namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kDimLo = 2, kDimHi = 8;

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

ComplexMatrix ginibre(std::size_t n, std::uint64_t seed) {
    return sample(EnsembleSpec{EnsembleKind::Ginibre, n, 1.0, seed});
}

RunConfig config(const std::string& bounds, EnsembleKind kind, std::size_t trials, std::uint64_t seed) {
    RunConfig c;
    c.bounds = parse_bound_list(bounds);
    c.ensemble = kind;
    c.dim_lo = kDimLo;
    c.dim_hi = kDimHi;
    c.trials = trials;
    c.seed = seed;
    return c;
}

// Every aggregate must be fully applicable and failure free. Appends the
// offenders to `bad`.
bool all_pass(const SuiteReport& rep, std::size_t need_applicable, std::string& bad) {
    bool ok = true;
    for (const auto& a : rep.bounds) {
        if (a.failed() || a.applicable_count < need_applicable) {
            ok = false;
            bad += a.bound_id + "(applicable " + std::to_string(a.applicable_count) + ", pass " +
                   std::to_string(a.pass_count) + ", errors " + std::to_string(a.error_count) +
                   (a.first_error.empty() ? "" : ", " + a.first_error) + ") ";
        }
    }
    return ok;
}

// 1. Radius engine cross-validation.
void criterion1() {
    double worst_oracle = 0.0, worst_embed = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < 500; ++i) {
        const std::size_t n = kDimLo + i % (kDimHi - kDimLo + 1);
        const ComplexMatrix s = ginibre(n, derive_seed(1, 0, i));
        const ComplexMatrix t = ginibre(n, derive_seed(1, 1, i));
        const double norm = operator_norm(s);
        const double gap = std::abs(numerical_radius(s) - numerical_radius_oracle(s, 32, i)) / norm;
        const double direct = numerical_radius(off_diag_embed(s, t));
        const double rel = std::abs(off_diag_numerical_radius(s, t) - direct) / direct;
        worst_oracle = std::max(worst_oracle, gap);
        worst_embed = std::max(worst_embed, rel);
        ok = ok && gap <= 1e-6 && rel <= 1e-7;
    }
    report(1, ok, "sweep vs ascent oracle and off-diagonal identity on 500 Ginibre samples",
           "max |sweep-oracle|/||S|| " + fmt(worst_oracle) + ", max off-diagonal rel err " + fmt(worst_embed));
}

// 2. Universal bounds.
void criterion2() {
    const std::string list =
        "equiv_lower,equiv_upper,kittaneh03,bp_spectral,heydarbeygi,"
        "power_mean@0,power_mean@0.25,power_mean@0.5,power_mean@0.75,power_mean@1,"
        "fg_general@0.75,fg_general@rational,thm24,cor10,prop4@1,prop4@2,prop4@3,thm5,eq16,thm6";
    const auto rep = cmd_verify(config(list, EnsembleKind::Ginibre, 1000, 2));
    std::string bad;
    const bool ok = all_pass(rep, 1000, bad);
    double worst = kInf;
    for (const auto& a : rep.bounds) worst = std::min(worst, a.min_relative_slack);
    report(2, ok, "universal bounds, 1000 Ginibre trials each",
           ok ? "min relative slack " + fmt(worst) : bad);
}

// product3 case k: draws (S, T) from the given ensembles until `need` trials land in case k.
bool product_case(int k, EnsembleKind ks, EnsembleKind kt, std::size_t need, std::string& detail) {
    std::size_t hit = 0, failed = 0;
    for (std::size_t i = 0; hit < need && i < 20 * need; ++i) {
        const std::size_t n = kDimLo + i % (kDimHi - kDimLo + 1);
        const ComplexMatrix s = sample(EnsembleSpec{ks, n, 1.0, derive_seed(3, 10 + k, i)});
        const ComplexMatrix t = sample(EnsembleSpec{kt, n, 1.0, derive_seed(3, 20 + k, i)});
        const auto r = bound_product(OperandPair(Operand(s), Operand(t)));
        if (!r.applicable || r.details.at("case") != k) continue;
        ++hit;
        if (!r.holds) ++failed;
    }
    detail += "product3 case " + std::to_string(k) + ": " + std::to_string(hit) + " applicable, " +
              std::to_string(failed) + " failed; ";
    return hit >= need && failed == 0;
}

// 3. Hypothesis-gated bounds.
void criterion3() {
    std::string bad;
    bool ok = true;
    ok &= all_pass(cmd_verify(config("thm8", EnsembleKind::Accretive, 1000, 3)), 1000, bad);
    ok &= all_pass(cmd_verify(config("thm8", EnsembleKind::Dissipative, 1000, 4)), 1000, bad);
    ok &= all_pass(cmd_verify(config("ms_acc_dis", EnsembleKind::AccretiveDissipative, 1000, 5)), 1000, bad);
    const std::string gated =
        "eq18,eq19,remark_min,thm25@1,thm25@2,thm25@inf,final_thm@1,final_thm@2,final_thm@inf";
    ok &= all_pass(cmd_verify(config(gated, EnsembleKind::Accretive, 1000, 6)), 1000, bad);
    ok &= all_pass(cmd_verify(config(gated, EnsembleKind::Dissipative, 1000, 7)), 1000, bad);
    std::string cases;
    ok &= product_case(1, EnsembleKind::Accretive, EnsembleKind::Accretive, 1000, cases);
    ok &= product_case(2, EnsembleKind::Dissipative, EnsembleKind::Dissipative, 1000, cases);
    ok &= product_case(3, EnsembleKind::Accretive, EnsembleKind::Dissipative, 1000, cases);
    report(3, ok, "gated bounds, 1000 applicable trials each", bad + cases);
}

// 4. Chain orderings.
void criterion4() {
    const std::pair<const char*, const char*> chain[] = {
        {"bp_spectral", "kittaneh03"}, {"cor10", "bp_spectral"}, {"power_mean@0.5", "heydarbeygi"}};
    bool ok = true;
    std::string detail;
    for (const auto& [tight, loose] : chain) {
        const auto rep = cmd_compare(config(tight, EnsembleKind::Ginibre, 1000, 8), parse_bound_selector(tight),
                                     parse_bound_selector(loose));
        const auto& c = *rep.compare;
        ok = ok && c.compared == 1000 && c.violations == 0;
        detail += std::string(tight) + " <= " + loose + ": " + std::to_string(c.violations) + " violations, max excess " +
                  fmt(c.max_relative_excess) + "; ";
    }
    report(4, ok, "chain orderings over 1000 Ginibre trials", detail);
}

// 5. Best-possible constants.
void criterion5() {
    double pm = 0.0, e16 = 0.0, eq = 0.0;
    for (std::size_t i = 0; i < 200; ++i) {
        const std::size_t n = kDimLo + i % (kDimHi - kDimLo + 1);
        const Operand s(sample(EnsembleSpec{EnsembleKind::Normal, n, 1.0, derive_seed(5, 0, i)}));
        const double n2 = s.norm() * s.norm();
        pm = std::max(pm, std::abs(bound_power_mean(s, 0.5).slack) / n2);
        e16 = std::max(e16, std::abs(bound_eq16(s).slack) / n2);
        eq = std::max(eq, std::abs(s.omega() - s.norm()) / s.norm());
    }
    RunConfig cfg = config("equiv_lower", EnsembleKind::Ginibre, 1, 5);
    cfg.dim_lo = 2;
    cfg.dim_hi = 4;
    const auto sharp = cmd_sharpness(cfg, parse_bound_selector("equiv_lower"));
    const double best = sharp.sharpness->best_relative_slack;
    const bool ok = pm <= 1e-6 && e16 <= 1e-6 && eq <= 1e-8 && best <= 1e-6;
    report(5, ok, "equality cases on 200 normal matrices and sharpness of equiv_lower",
           "power_mean@0.5 " + fmt(pm) + ", eq16 " + fmt(e16) + ", |omega-||S|||/||S|| " + fmt(eq) +
               ", sharpness " + fmt(best));
}

// 6. Lemma suite.
void criterion6() {
    const std::string list =
        "k1,lem2,lem2@normal,lem3,lem14,lem17,lem22@1,lem22@2,lem22@inf,lem27,"
        "lem28@1,lem28@2,lem28@3,eq21,as_ineq@1,as_ineq@2,as_ineq@3,pomoc";
    std::string bad;
    bool ok = all_pass(cmd_verify(config(list, EnsembleKind::Ginibre, 500, 6)), 500, bad);

    // Identity precision for pomoc and both readings of lem27.
    double pomoc_gap = 0.0;
    std::size_t diag_ok = 0, two_ok = 0, standard_ok = 0;
    for (std::size_t i = 0; i < 500; ++i) {
        const std::size_t n = kDimLo + i % (kDimHi - kDimLo + 1);
        const auto p = check_lemma("pomoc", sample_lemma_inputs("pomoc", n, derive_seed(6, 1, i)));
        pomoc_gap = std::max(pomoc_gap, std::abs(p.slack));
        const auto in = sample_lemma_inputs("lem27", n, derive_seed(6, 2, i), {}, 0.5);
        const auto r = check_lemma("lem27", in);
        standard_ok += r.holds;
        diag_ok += r.details.at("x_only_holds_diagonal") == 1.0;
        two_ok += r.details.at("x_only_holds_two_vector") == 1.0;
    }
    ok = ok && pomoc_gap <= 1e-9 && standard_ok == 500;
    report(6, ok, "lemma suite, 500 trials per id and variant",
           bad + "pomoc max gap " + fmt(pomoc_gap) + "; lem27 standard form " + std::to_string(standard_ok) +
               "/500, single-vector reading on <Ax,x> " + std::to_string(diag_ok) + "/500, on <Ax,y> " +
               std::to_string(two_ok) + "/500");
}

// 7. Fixed values.
void criterion7() {
    const Operand jordan(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
    const auto kit = bound_kittaneh(jordan);
    const auto id = bound_equiv(Operand(ComplexMatrix::identity(3))).second;
    const auto shear = bound_thm8(Operand(ComplexMatrix{{1.0, 2.0}, {0.0, 1.0}}));
    const bool ok = std::abs(jordan.omega() - 0.5) <= 1e-8 && std::abs(jordan.norm() - 1.0) <= 1e-8 &&
                    std::abs(kit.slack) <= 1e-8 && std::abs(id.slack) <= 1e-12 && shear.applicable && shear.holds;
    report(7, ok, "jordan2, identity and shear regressions",
           "jordan2 omega " + fmt(jordan.omega()) + ", kittaneh03 slack " + fmt(kit.slack) + ", identity slack " +
               fmt(id.slack) + ", shear thm8 slack " + fmt(shear.slack));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string& cli, const std::string& args, const fs::path& out) {
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 8. Determinism and the exit-code contract, through the CLI.
void criterion8(const std::string& cli) {
    const fs::path dir = fs::temp_directory_path() / ("radiuslab_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string verify = "verify --bounds kittaneh03,thm24,eq16,lem17 --dim 2:6 --trials 50 --seed 99";
    bool ok = true;
    std::string detail;

    const int a = run(cli, verify + " --threads 1", dir / "a.json");
    const int b = run(cli, verify + " --threads 4", dir / "b.json");
    auto ja = nlohmann::json::parse(slurp(dir / "a.json"), nullptr, false);
    auto jb = nlohmann::json::parse(slurp(dir / "b.json"), nullptr, false);
    if (ja.is_object()) ja.erase("wall_time_seconds");
    if (jb.is_object()) jb.erase("wall_time_seconds");
    const bool same_json = ja.is_object() && ja == jb;
    run(cli, verify + " --format csv", dir / "a.csv");
    run(cli, verify + " --format csv", dir / "b.csv");
    const bool same_csv = !slurp(dir / "a.csv").empty() && slurp(dir / "a.csv") == slurp(dir / "b.csv");
    ok = ok && a == 0 && b == 0 && same_json && same_csv;
    detail += std::string("json identical ") + (same_json ? "yes" : "no") + ", csv identical " +
              (same_csv ? "yes" : "no") + "; ";

    write_matrix_file((dir / "jordan.json").string(), ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
    {
        std::ofstream bad(dir / "bad.json");
        bad << "{\"rows\": 2, \"cols\": 2, \"data\": [[1, 0]]}";
    }
    const struct {
        std::string args;
        int expected;
    } cases[] = {
        {"eval --matrix \"" + (dir / "jordan.json").string() + "\" --bounds kittaneh03", 0},
        {"compare --tighter equiv_upper --looser kittaneh03 --dim 2:5 --trials 20", 1},
        {"verify --bounds no_such_bound", 2},
        {"compare --tighter kittaneh03 --looser heydarbeygi", 2},
        {"eval --matrix \"" + (dir / "bad.json").string() + "\" --bounds kittaneh03", 2},
        {"eval --matrix \"" + (dir / "missing.json").string() + "\" --bounds kittaneh03", 3},
        {"verify --bounds kittaneh03 --trials 5 --out \"" + (dir / "no" / "such" / "dir.json").string() + "\"", 3},
    };
    for (const auto& c : cases) {
        const int got = run(cli, c.args, dir / "out.txt");
        if (got != c.expected) {
            ok = false;
            detail += "'" + c.args + "' exited " + std::to_string(got) + " (want " + std::to_string(c.expected) + "); ";
        }
    }
    fs::remove_all(dir);
    report(8, ok, "determinism and exit codes", detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: radiuslab_acceptance <path-to-radiuslab-cli>\n";
        return 2;
    }
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8(argv[1]);
    } catch (const std::exception& e) {
        std::cout << "FAIL: unexpected error: " << e.what() << std::endl;
        return 1;
    }
    return failures == 0 ? 0 : 1;
}
