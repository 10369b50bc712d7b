#include "radiuslab/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace radiuslab {

namespace {

using A = BoundArity;

const std::vector<BoundInfo> kCatalog = {
    {"equiv_lower", A::Single, 1, "", false, "", {}, "", "||S||/2 <= omega(S)"},
    {"equiv_upper", A::Single, 1, "omega", false, "", {}, "", "omega(S) <= ||S||"},
    {"kittaneh03", A::Single, 1, "omega", false, "", {}, "", "omega <= (||S|| + ||S^2||^{1/2})/2"},
    {"bp_spectral", A::Single, 1, "omega", false, "", {}, "", "omega <= (||S|| + sqrt r(|S||S*|))/2"},
    {"heydarbeygi", A::Single, 2, "omega^2", false, "", {}, "",
     "omega^2 <= ||S*S + SS*||/4 + omega(|S||S*|)/2"},
    {"fg_general", A::Single, 2, "omega^2", false, "a", 0.75, "",
     "omega^2 <= ||Re(f^4(|S|) + g^4(|S*|) + 2 f^2(|S|) g^2(|S*|))||/4, f = t^a, g = t^{1-a}; "
     "@rational gives f = t/(1+t), g = 1+t"},
    {"power_mean", A::Single, 2, "omega^2", false, "t", 0.5, "",
     "omega^2 <= ||Re(|S|^{4(1-t)} + |S*|^{4t} + 2 |S|^{2(1-t)} |S*|^{2t})||/4"},
    {"thm24", A::Pair, 1, "embed_omega", false, "", {}, "", "omega([[O,S],[T*,O]]) <= max(alpha, beta)/2"},
    {"cor10", A::Single, 1, "omega", false, "", {}, "",
     "omega <= max(|| |S*| + (|S*|^{1/2}|S||S*|^{1/2})^{1/2} ||, || |S| + (|S|^{1/2}|S*||S|^{1/2})^{1/2} ||)/2"},
    {"prop4", A::Pair, 0, "embed_omega^r", false, "r", 2.0, "", "omega^r([[O,S],[T*,O]]) <= max(lambda, mu)/2"},
    {"thm5", A::Pair, 2, "embed_omega^2", false, "", {}, "", "omega^2([[O,S],[T*,O]]) <= max(delta, xi)/2"},
    {"eq16", A::Single, 2, "omega^2", false, "", {}, "",
     "omega^2 <= max(r(|S*|(|S*|+|S|)), r(|S|(|S*|+|S|)))/2"},
    {"normal_prop", A::Pair, 1, "embed_omega", true, "", {}, "",
     "normal A, B: omega([[O,A],[B*,O]]) <= max(|| |A| + ||B|^{1/2}|A|^{1/2}| ||, ...)/2"},
    {"thm6", A::Single, 1, "", false, "", {}, "", "||S|| <= omega(S) + sqrt r(|Re S||Im S|)"},
    {"thm8", A::Single, 1, "", true, "", {}, "", "accretive or dissipative: ||S||/sqrt(3) <= omega(S)"},
    {"ms_acc_dis", A::Single, 1, "", true, "", {}, "", "accretive-dissipative: ||S||/sqrt(2) <= omega(S)"},
    {"product3", A::Pair, 2, "", true, "", {}, "", "omega(ST) <= 3 omega(S) omega(T) in the accretive/dissipative cases"},
    {"eq18", A::Single, 2, "", true, "", {}, "", "||S||^2 <= ||SS* + S*S||/2 + ||Re S|| ||Im S||"},
    {"eq19", A::Single, 2, "", true, "", {}, "", "||S||^2 - ||S^2|| <= 2 ||Re S|| ||Im S||"},
    {"remark_min", A::Single, 2, "", true, "", {}, "",
     "||S||^2 <= ||Re S|| ||Im S|| + min(||Re S|| ||Im S|| + ||S^2||, ||SS* + S*S||/2)"},
    {"thm25", A::Single, 2, "", true, "p", 2.0, "",
     "|||SS*|||_p <= |||(Re S)^2 + (Im S)^2|||_p + ||Re S|| |||Im S|||_p (roles swap when dissipative)"},
    {"final_thm", A::Single, 2, "", true, "p", 2.0, "", "|||SS*|||_p <= w_p(S) (2 w_p(S) + omega(S))"},
    {"k1", A::Lemma, 1, "", true, "", {}, "", "PSD A, B: ||A+B|| <= max(||A + |B^{1/2}A^{1/2}| ||, ||B + |A^{1/2}B^{1/2}| ||)"},
    {"lem2", A::Lemma, 1, "", true, "", {}, "hermitian", "Hermitian or normal A, B: ||A+B|| <= || |A| + |B| ||"},
    {"lem3", A::Lemma, 1, "", false, "", {}, "", "sup ||A + e^{it}B||/2 = omega([[O,A],[B*,O]])"},
    {"lem14", A::Lemma, 2, "", true, "", {}, "", "S or T positive: ||ST - TS|| <= ||S|| ||T||"},
    {"lem17", A::Lemma, 1, "", true, "", {}, "", "PSD A, B: max(||A||, ||B||) - ||A^{1/2}B^{1/2}|| <= ||A - B||"},
    {"lem22", A::Lemma, 2, "", true, "p", 2.0, "",
     "A normal, Re A, Im A >= 0: |||AB - BA|||_p <= sqrt(||Re A||^2 + ||Im A||^2) |||B|||_p"},
    {"lem27", A::Lemma, 1, "", false, "a", 0.5, "", "|<Ax,y>| <= sqrt(<f^2(|A|)x,x> <g^2(|A*|)y,y>)"},
    {"lem28", A::Lemma, 0, "", true, "r", 2.0, "", "PSD A, unit x: <Ax,x>^r <= <A^r x,x>"},
    {"eq21", A::Lemma, 1, "", false, "", {}, "", "max(||Re S||, ||Im S||) <= omega(S)"},
    {"as_ineq", A::Lemma, 0, "", true, "r", 2.0, "", "PSD A, B: ||((A+B)/2)^r|| <= ||(A^r + B^r)/2||"},
    {"pomoc", A::Lemma, 1, "", false, "", {}, "", "||[[O,X],[Y,O]]|| = max(||X||, ||Y||)"},
};

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_param(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::optional<double> parse_number(std::string_view s) {
    if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

ScalarMap power_map(double e) {
    return [e](double t) { return e == 0.0 ? 1.0 : std::pow(t, e); };
}

double param_of(const BoundSelector& sel) {
    const auto p = sel.effective_param();
    if (!p) throw Error(ErrorCode::BadSpec, sel.id + " needs a parameter");
    return *p;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

const std::vector<BoundInfo>& bound_catalog() { return kCatalog; }

const BoundInfo& bound_info(std::string_view id) {
    for (const auto& b : kCatalog)
        if (b.id == id) return b;
    throw Error(ErrorCode::UnknownBound, "unknown bound id '" + std::string(id) + "'");
}

std::string BoundSelector::label() const {
    if (!variant.empty()) return id + "@" + variant;
    if (param) return id + "@" + format_param(*param);
    return id;
}

std::optional<double> BoundSelector::effective_param() const {
    if (param) return param;
    return info().default_param;
}

BoundSelector parse_bound_selector(std::string_view text) {
    text = trim(text);
    BoundSelector sel;
    const auto at = text.find('@');
    sel.id = std::string(text.substr(0, at));
    const BoundInfo& info = bound_info(sel.id);
    if (at == std::string_view::npos) return sel;

    std::string_view suffix = text.substr(at + 1);
    // Accept "t=0.5" as well as "0.5".
    if (const auto eq = suffix.find('='); eq != std::string_view::npos) suffix = suffix.substr(eq + 1);
    if (suffix.empty()) throw Error(ErrorCode::BadSpec, "empty parameter in '" + std::string(text) + "'");
    if (const auto v = parse_number(suffix)) {
        if (info.param_name.empty()) {
            throw Error(ErrorCode::BadSpec, sel.id + " takes no numeric parameter");
        }
        sel.param = *v;
        return sel;
    }
    const bool variant_ok = (sel.id == "fg_general" && suffix == "rational") ||
                            (sel.id == "lem2" && (suffix == "hermitian" || suffix == "normal"));
    if (!variant_ok) {
        throw Error(ErrorCode::BadSpec, "unknown variant '" + std::string(suffix) + "' for " + sel.id);
    }
    sel.variant = std::string(suffix);
    return sel;
}

std::vector<BoundSelector> parse_bound_list(std::string_view text) {
    std::vector<BoundSelector> out;
    if (trim(text) == "all") {
        for (const auto& b : kCatalog) out.push_back(BoundSelector{std::string(b.id), {}, {}});
        return out;
    }
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto part = trim(text.substr(0, comma));
        if (!part.empty()) out.push_back(parse_bound_selector(part));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) throw Error(ErrorCode::BadSpec, "empty bound list");
    return out;
}

double selector_degree(const BoundSelector& sel) {
    const BoundInfo& info = sel.info();
    if (info.degree != 0) return info.degree;
    return param_of(sel);
}

std::string compare_key(const BoundSelector& sel) {
    const BoundInfo& info = sel.info();
    if (info.upper_bound_of.empty()) return {};
    if (sel.id == "prop4") {
        const double r = param_of(sel);
        if (r == 1.0) return "embed_omega";
        if (r == 2.0) return "embed_omega^2";
        return "embed_omega^" + format_param(r);
    }
    return std::string(info.upper_bound_of);
}

BoundReport evaluate_single(const BoundSelector& sel, const Operand& s) {
    const std::string& id = sel.id;
    BoundReport r;
    if (id == "equiv_lower") r = bound_equiv(s).first;
    else if (id == "equiv_upper") r = bound_equiv(s).second;
    else if (id == "kittaneh03") r = bound_kittaneh(s);
    else if (id == "bp_spectral") r = bound_bp(s);
    else if (id == "heydarbeygi") r = bound_heydarbeygi(s);
    else if (id == "fg_general") {
        if (sel.variant == "rational") {
            r = bound_fg(s, [](double t) { return t / (1.0 + t); }, [](double t) { return 1.0 + t; });
        } else {
            const double a = param_of(sel);
            if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorCode::BadExponent, "fg_general: a must lie in [0, 1]");
            r = bound_fg(s, power_map(a), power_map(1.0 - a));
        }
    } else if (id == "power_mean") r = bound_power_mean(s, param_of(sel));
    else if (id == "cor10") r = bound_cor10(s);
    else if (id == "eq16") r = bound_eq16(s);
    else if (id == "thm6") r = bound_thm6(s);
    else if (id == "thm8") r = bound_thm8(s);
    else if (id == "ms_acc_dis") r = bound_ms(s);
    else if (id == "eq18") r = bound_eq18(s);
    else if (id == "eq19") r = bound_eq19(s);
    else if (id == "remark_min") r = bound_remark_min(s);
    else if (id == "thm25") r = bound_thm25(s, param_of(sel));
    else if (id == "final_thm") r = bound_final_thm(s, param_of(sel));
    else throw Error(ErrorCode::UnknownBound, id + " is not a single-operand bound");
    r.bound_id = sel.label();
    return r;
}

BoundReport evaluate_pair(const BoundSelector& sel, const OperandPair& st) {
    const std::string& id = sel.id;
    BoundReport r;
    if (id == "thm24") r = bound_thm24(st);
    else if (id == "prop4") r = bound_prop4(st, param_of(sel));
    else if (id == "thm5") r = bound_thm5(st);
    else if (id == "normal_prop") r = bound_normal_prop(st);
    else if (id == "product3") r = bound_product(st);
    else throw Error(ErrorCode::UnknownBound, id + " is not a two-operand bound");
    r.bound_id = sel.label();
    return r;
}

BoundReport evaluate_lemma(const BoundSelector& sel, const LemmaInputs& in, const EvalSettings& settings) {
    LemmaInputs copy = in;
    if (sel.param) {
        copy.param = sel.param;
        if (sel.id == "lem27") {
            copy.f = power_map(*sel.param);
            copy.g = power_map(1.0 - *sel.param);
        }
    }
    BoundReport r = check_lemma(sel.id, copy, settings);
    r.bound_id = sel.label();
    return r;
}

LemmaInputs sample_for(const BoundSelector& sel, std::size_t dim, std::uint64_t seed) {
    const std::string_view variant = sel.variant.empty() ? sel.info().default_variant : sel.variant;
    return sample_lemma_inputs(sel.id, dim, seed, variant, sel.param);
}

}  // namespace radiuslab
