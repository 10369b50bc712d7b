#include "radiuslab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace radiuslab {

namespace {

double sq(double x) { return x * x; }

// X^{1/2} Y X^{1/2}, exactly Hermitian.
ComplexMatrix sandwich(const ComplexMatrix& x_sqrt, const ComplexMatrix& y) {
    ComplexMatrix m = x_sqrt * y * x_sqrt;
    detail::hermitize(m);
    return m;
}

// S S* and S* S, exactly Hermitian.
ComplexMatrix gram_outer(const ComplexMatrix& s) {
    ComplexMatrix m = s * s.adjoint();
    detail::hermitize(m);
    return m;
}

ComplexMatrix gram_inner(const ComplexMatrix& s) {
    ComplexMatrix m = adjoint_times(s, s);
    detail::hermitize(m);
    return m;
}

BoundReport make(std::string id, double lhs, double rhs, double scale) {
    BoundReport r;
    r.bound_id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.scale = scale;
    return r;
}

BoundReport not_applicable(BoundReport r, std::string reason, double tol_rel) {
    r.applicable = false;
    r.reason = std::move(reason);
    finish_inequality(r, tol_rel);
    return r;
}

void record_class(BoundReport& r, const MatrixClassification& c, const std::string& prefix = "") {
    r.details[prefix + "accretive"] = c.is_accretive ? 1.0 : 0.0;
    r.details[prefix + "dissipative"] = c.is_dissipative ? 1.0 : 0.0;
}

bool accretive_or_dissipative(const Operand& s) {
    return s.classification().is_accretive || s.classification().is_dissipative;
}

const char* kNeedsAccOrDis = "needs an accretive or dissipative operand";

void check_schatten(double p) {
    if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::BadExponent, "Schatten exponent must be >= 1");
}

ComplexMatrix spectral_apply(const EigenDecomposition& e, const ScalarMap& f) {
    std::vector<double> w(e.eigenvalues.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = f(std::max(e.eigenvalues[i], 0.0));
    ComplexMatrix m = e.vectors * ComplexMatrix::diagonal(std::span<const double>(w)) * e.vectors.adjoint();
    detail::hermitize(m);
    return m;
}

// 1/4 || Re(F4 + G4 + 2 F2 G2) ||.
double fg_rhs(const ComplexMatrix& f2, const ComplexMatrix& f4, const ComplexMatrix& g2, const ComplexMatrix& g4) {
    const ComplexMatrix sum = f4 + g4 + 2.0 * (f2 * g2);
    return 0.25 * operator_norm(cartesian_decomposition(sum).real);
}

double pair_scale(const OperandPair& st, int degree) {
    return std::pow(std::max(st.s().norm(), st.t().norm()), degree);
}

}  // namespace

void require_fg_product(const std::vector<double>& spectrum, const ScalarMap& f, const ScalarMap& g,
                        double norm) {
    for (double raw : spectrum) {
        const double t = std::max(raw, 0.0);
        const double ft = f(t), gt = g(t);
        if (!std::isfinite(ft) || !std::isfinite(gt) || ft < 0.0 || gt < 0.0) {
            throw Error(ErrorCode::FGProductViolation,
                        "f and g must be finite and nonnegative on the spectrum (t = " + std::to_string(t) + ")");
        }
        if (std::abs(ft * gt - t) > 1e-8 * std::max(t, norm)) {
            throw Error(ErrorCode::FGProductViolation,
                        "f(t) g(t) != t at t = " + std::to_string(t));
        }
    }
}

void finish_inequality(BoundReport& r, double tol_rel) {
    r.slack = r.rhs - r.lhs;
    r.holds = r.slack >= -tol_rel * r.scale;
}

void finish_identity(BoundReport& r, double tol_rel) {
    r.slack = -std::abs(r.rhs - r.lhs);
    r.holds = r.slack >= -tol_rel * r.scale;
}

namespace {

ComplexMatrix checked_operand(ComplexMatrix s) {
    require_square(s, "Operand");
    if (!s.all_finite()) throw Error(ErrorCode::NonFinite, "Operand: non-finite entry");
    return s;
}

}  // namespace

Operand::Operand(ComplexMatrix s, EvalSettings settings)
    : s_(checked_operand(std::move(s))),
      settings_(settings),
      norm_(operator_norm(s_)),
      omega_(numerical_radius(s_, settings_.sweep)),
      abs_(matrix_abs(s_)),
      abs_adj_(matrix_abs(s_.adjoint())),
      abs_sqrt_(psd_power(abs_, 0.5)),
      abs_adj_sqrt_(psd_power(abs_adj_, 0.5)),
      parts_(cartesian_decomposition(s_)),
      norm_re_(operator_norm(parts_.real)),
      norm_im_(operator_norm(parts_.imag)),
      class_(classify(s_, settings_.class_tol)) {}

OperandPair::OperandPair(Operand s, Operand t)
    : s_(std::move(s)),
      t_(std::move(t)),
      embed_omega_(off_diag_numerical_radius(s_.matrix(), t_.matrix(), s_.settings().sweep)) {}

double sandwich_term(const ComplexMatrix& x, const ComplexMatrix& x_sqrt, const ComplexMatrix& y, double r) {
    const ComplexMatrix inner_term = psd_power(sandwich(x_sqrt, y), r / 2.0);
    const ComplexMatrix xr = r == 1.0 ? x : psd_power(x, r);
    ComplexMatrix sum = xr + inner_term;
    detail::hermitize(sum);
    return operator_norm(sum);
}

std::pair<BoundReport, BoundReport> bound_equiv(const Operand& s) {
    const double tol = s.settings().tol_rel;
    BoundReport lower = make("equiv_lower", 0.5 * s.norm(), s.omega(), s.norm());
    BoundReport upper = make("equiv_upper", s.omega(), s.norm(), s.norm());
    for (auto* r : {&lower, &upper}) {
        r->details["omega"] = s.omega();
        r->details["norm"] = s.norm();
        finish_inequality(*r, tol);
    }
    return {lower, upper};
}

BoundReport bound_kittaneh(const Operand& s) {
    const double sq_norm = operator_norm(s.matrix() * s.matrix());
    BoundReport r = make("kittaneh03", s.omega(), 0.5 * (s.norm() + std::sqrt(sq_norm)), s.norm());
    r.details["omega"] = s.omega();
    r.details["norm"] = s.norm();
    r.details["square_norm"] = sq_norm;
    finish_inequality(r, s.settings().tol_rel);
    return r;
}

BoundReport bound_bp(const Operand& s) {
    const double tol = s.settings().tol_rel;
    const double spec = spectral_radius_psd_product(s.abs(), s.abs_adjoint());
    const double root_r = std::sqrt(std::max(spec, 0.0));
    const double root_sq = std::sqrt(operator_norm(s.matrix() * s.matrix()));
    BoundReport r = make("bp_spectral", s.omega(), 0.5 * (s.norm() + root_r), s.norm());
    r.details["omega"] = s.omega();
    r.details["norm"] = s.norm();
    r.details["spectral_radius"] = spec;
    r.details["sqrt_spectral_radius"] = root_r;
    r.details["sqrt_square_norm"] = root_sq;
    r.details["improves_kittaneh"] = root_r <= root_sq + tol * s.norm() ? 1.0 : 0.0;
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_heydarbeygi(const Operand& s) {
    ComplexMatrix sum = gram_inner(s.matrix()) + gram_outer(s.matrix());
    const double sum_norm = operator_norm(sum);
    const double cross = numerical_radius(s.abs() * s.abs_adjoint(), s.settings().sweep);
    BoundReport r = make("heydarbeygi", sq(s.omega()), 0.25 * sum_norm + 0.5 * cross, sq(s.norm()));
    r.details["omega"] = s.omega();
    r.details["gram_sum_norm"] = sum_norm;
    r.details["omega_abs_product"] = cross;
    finish_inequality(r, s.settings().tol_rel);
    return r;
}

BoundReport bound_fg(const Operand& s, const ScalarMap& f, const ScalarMap& g) {
    const EigenDecomposition ea = hermitian_eigen(s.abs());
    const EigenDecomposition eb = hermitian_eigen(s.abs_adjoint());
    require_fg_product(ea.eigenvalues, f, g, s.norm());
    require_fg_product(eb.eigenvalues, f, g, s.norm());
    const ComplexMatrix f2 = spectral_apply(ea, [&](double t) { return sq(f(t)); });
    const ComplexMatrix f4 = spectral_apply(ea, [&](double t) { return sq(sq(f(t))); });
    const ComplexMatrix g2 = spectral_apply(eb, [&](double t) { return sq(g(t)); });
    const ComplexMatrix g4 = spectral_apply(eb, [&](double t) { return sq(sq(g(t))); });
    BoundReport r = make("fg_general", sq(s.omega()), fg_rhs(f2, f4, g2, g4), sq(s.norm()));
    r.details["omega"] = s.omega();
    finish_inequality(r, s.settings().tol_rel);
    return r;
}

BoundReport bound_power_mean(const Operand& s, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::BadExponent, "power_mean: t must lie in [0, 1]");
    const ComplexMatrix f2 = psd_power(s.abs(), 2.0 * (1.0 - t));
    const ComplexMatrix f4 = psd_power(s.abs(), 4.0 * (1.0 - t));
    const ComplexMatrix g2 = psd_power(s.abs_adjoint(), 2.0 * t);
    const ComplexMatrix g4 = psd_power(s.abs_adjoint(), 4.0 * t);
    BoundReport r = make("power_mean", sq(s.omega()), fg_rhs(f2, f4, g2, g4), sq(s.norm()));
    r.details["omega"] = s.omega();
    r.details["t"] = t;
    finish_inequality(r, s.settings().tol_rel);
    return r;
}

BoundReport bound_cor10(const Operand& s) {
    const double tol = s.settings().tol_rel;
    const double adj_term = sandwich_term(s.abs_adjoint(), s.abs_adjoint_sqrt(), s.abs(), 1.0);
    const double abs_term = sandwich_term(s.abs(), s.abs_sqrt(), s.abs_adjoint(), 1.0);
    const double spec = spectral_radius_psd_product(s.abs(), s.abs_adjoint());
    const double bp_rhs = 0.5 * (s.norm() + std::sqrt(std::max(spec, 0.0)));
    BoundReport r = make("cor10", s.omega(), 0.5 * std::max(adj_term, abs_term), s.norm());
    r.details["omega"] = s.omega();
    r.details["adjoint_term"] = adj_term;
    r.details["abs_term"] = abs_term;
    r.details["bp_rhs"] = bp_rhs;
    r.details["below_bp"] = r.rhs <= bp_rhs + tol * s.norm() ? 1.0 : 0.0;
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_eq16(const Operand& s) {
    const ComplexMatrix sum = s.abs() + s.abs_adjoint();
    const double adj_r = spectral_radius_psd_product(s.abs_adjoint(), sum);
    const double abs_r = spectral_radius_psd_product(s.abs(), sum);
    BoundReport r = make("eq16", sq(s.omega()), 0.5 * std::max(adj_r, abs_r), sq(s.norm()));
    r.details["omega"] = s.omega();
    r.details["adjoint_radius"] = adj_r;
    r.details["abs_radius"] = abs_r;
    finish_inequality(r, s.settings().tol_rel);
    return r;
}

BoundReport bound_thm6(const Operand& s) {
    const ComplexMatrix abs_re = matrix_abs(s.real_part());
    const ComplexMatrix abs_im = matrix_abs(s.imag_part());
    const double spec = spectral_radius_psd_product(abs_re, abs_im);
    const double root_r = std::sqrt(std::max(spec, 0.0));
    const double cross = operator_norm(psd_power(abs_re, 0.5) * psd_power(abs_im, 0.5));
    BoundReport r = make("thm6", s.norm(), s.omega() + root_r, s.norm());
    r.details["omega"] = s.omega();
    r.details["norm"] = s.norm();
    r.details["spectral_radius"] = spec;
    r.details["sqrt_spectral_radius"] = root_r;
    r.details["cross_root_norm"] = cross;
    finish_inequality(r, s.settings().tol_rel);
    return r;
}

BoundReport bound_prop4(const OperandPair& st, double r) {
    if (std::isnan(r) || r < 1.0 || std::isinf(r)) throw Error(ErrorCode::BadExponent, "prop4: r must be finite and >= 1");
    const Operand& s = st.s();
    const Operand& t = st.t();
    const double l1 = sandwich_term(s.abs_adjoint(), s.abs_adjoint_sqrt(), t.abs_adjoint(), r);
    const double l2 = sandwich_term(s.abs(), s.abs_sqrt(), t.abs(), r);
    const double m1 = sandwich_term(t.abs_adjoint(), t.abs_adjoint_sqrt(), s.abs_adjoint(), r);
    const double m2 = sandwich_term(t.abs(), t.abs_sqrt(), s.abs(), r);
    const double lambda = std::max(l1, l2);
    const double mu = std::max(m1, m2);
    BoundReport rep = make("prop4", std::pow(st.embed_omega(), r), 0.5 * std::max(lambda, mu), pair_scale(st, 1));
    rep.scale = std::pow(rep.scale, r);
    rep.details["embed_omega"] = st.embed_omega();
    rep.details["r"] = r;
    rep.details["lambda"] = lambda;
    rep.details["mu"] = mu;
    finish_inequality(rep, st.settings().tol_rel);
    return rep;
}

BoundReport bound_thm24(const OperandPair& st) {
    BoundReport r = bound_prop4(st, 1.0);
    r.bound_id = "thm24";
    r.details["alpha"] = r.details["lambda"];
    r.details["beta"] = r.details["mu"];
    r.details.erase("lambda");
    r.details.erase("mu");
    r.details.erase("r");
    return r;
}

BoundReport bound_thm5(const OperandPair& st) {
    const Operand& s = st.s();
    const Operand& t = st.t();
    const double d1 = spectral_radius_psd_product(s.abs_adjoint(), s.abs_adjoint() + t.abs_adjoint());
    const double d2 = spectral_radius_psd_product(s.abs(), s.abs() + t.abs());
    const double x1 = spectral_radius_psd_product(t.abs_adjoint(), t.abs_adjoint() + s.abs_adjoint());
    const double x2 = spectral_radius_psd_product(t.abs(), t.abs() + s.abs());
    const double delta = std::max(d1, d2);
    const double xi = std::max(x1, x2);
    BoundReport r = make("thm5", sq(st.embed_omega()), 0.5 * std::max(delta, xi), pair_scale(st, 2));
    r.details["embed_omega"] = st.embed_omega();
    r.details["delta"] = delta;
    r.details["xi"] = xi;
    finish_inequality(r, st.settings().tol_rel);
    return r;
}

BoundReport bound_normal_prop(const OperandPair& ab) {
    const Operand& a = ab.s();
    const Operand& b = ab.t();
    const double tol = ab.settings().tol_rel;
    // ||B|^{1/2} |A|^{1/2}| = (|A|^{1/2} |B| |A|^{1/2})^{1/2}.
    const double left = operator_norm(a.abs() + psd_power(sandwich(a.abs_sqrt(), b.abs()), 0.5));
    const double right = operator_norm(b.abs() + psd_power(sandwich(b.abs_sqrt(), a.abs()), 0.5));
    BoundReport r = make("normal_prop", ab.embed_omega(), 0.5 * std::max(left, right), pair_scale(ab, 1));
    r.details["embed_omega"] = ab.embed_omega();
    r.details["a_term"] = left;
    r.details["b_term"] = right;
    if (!a.classification().is_normal || !b.classification().is_normal) {
        return not_applicable(std::move(r), "both operands must be normal", tol);
    }
    const double special_a = operator_norm(a.abs() + psd_power(sandwich(a.abs_sqrt(), a.abs_adjoint()), 0.5));
    const double special_b = operator_norm(a.abs_adjoint() + psd_power(sandwich(a.abs_adjoint_sqrt(), a.abs()), 0.5));
    r.details["special_lhs"] = a.norm();
    r.details["special_rhs"] = 0.5 * std::max(special_a, special_b);
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_thm8(const Operand& s) {
    const double tol = s.settings().tol_rel;
    const double nr = s.norm_real(), ni = s.norm_imag();
    BoundReport r = make("thm8", std::numbers::sqrt3 / 3.0 * s.norm(), s.omega(), s.norm());
    r.details["omega"] = s.omega();
    r.details["norm"] = s.norm();
    r.details["norm_squared"] = sq(s.norm());
    r.details["cartesian_bound"] = sq(nr) + sq(ni) + nr * ni;
    record_class(r, s.classification());
    if (!accretive_or_dissipative(s)) return not_applicable(std::move(r), kNeedsAccOrDis, tol);
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_ms(const Operand& s) {
    const double tol = s.settings().tol_rel;
    BoundReport r = make("ms_acc_dis", std::numbers::sqrt2 / 2.0 * s.norm(), s.omega(), s.norm());
    r.details["omega"] = s.omega();
    r.details["norm"] = s.norm();
    record_class(r, s.classification());
    if (!s.classification().is_accretive_dissipative()) {
        return not_applicable(std::move(r), "needs an accretive-dissipative operand", tol);
    }
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_product(const OperandPair& st) {
    const Operand& s = st.s();
    const Operand& t = st.t();
    const double tol = st.settings().tol_rel;
    const auto& cs = s.classification();
    const auto& ct = t.classification();
    int which = 0;
    if (cs.is_accretive && ct.is_accretive) which = 1;
    else if (cs.is_dissipative && ct.is_dissipative) which = 2;
    else if ((cs.is_accretive && ct.is_dissipative) || (cs.is_dissipative && ct.is_accretive)) which = 3;

    const double lhs = numerical_radius(s.matrix() * t.matrix(), st.settings().sweep);
    const double prod = s.omega() * t.omega();
    BoundReport r = make("product3", lhs, which ? 3.0 * prod : 4.0 * prod, s.norm() * t.norm());
    r.details["omega_s"] = s.omega();
    r.details["omega_t"] = t.omega();
    r.details["case"] = which;
    r.details["rhs_factor3"] = 3.0 * prod;
    r.details["rhs_factor4"] = 4.0 * prod;
    if (which == 0) {
        return not_applicable(std::move(r), "operands fit none of the accretive/dissipative cases; factor 4 reported", tol);
    }
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_eq18(const Operand& s) {
    const double tol = s.settings().tol_rel;
    const double sum_norm = operator_norm(gram_outer(s.matrix()) + gram_inner(s.matrix()));
    const double cross = s.norm_real() * s.norm_imag();
    BoundReport r = make("eq18", sq(s.norm()), 0.5 * sum_norm + cross, sq(s.norm()));
    r.details["gram_sum_norm"] = sum_norm;
    r.details["cartesian_product"] = cross;
    record_class(r, s.classification());
    if (!accretive_or_dissipative(s)) return not_applicable(std::move(r), kNeedsAccOrDis, tol);
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_eq19(const Operand& s) {
    const double tol = s.settings().tol_rel;
    const double norm2 = sq(s.norm());
    const double raw = norm2 - operator_norm(s.matrix() * s.matrix());
    BoundReport r = make("eq19", raw, 2.0 * s.norm_real() * s.norm_imag(), norm2);
    r.details["raw_difference"] = raw;
    record_class(r, s.classification());
    if (!accretive_or_dissipative(s)) return not_applicable(std::move(r), kNeedsAccOrDis, tol);
    if (raw < -1e-9 * norm2) {
        throw Error(ErrorCode::InternalConsistency, "eq19: ||S||^2 - ||S^2|| is negative beyond roundoff");
    }
    r.lhs = std::max(raw, 0.0);
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_remark_min(const Operand& s) {
    const double tol = s.settings().tol_rel;
    const double cross = s.norm_real() * s.norm_imag();
    const double first = cross + operator_norm(s.matrix() * s.matrix());
    const double second = 0.5 * operator_norm(gram_outer(s.matrix()) + gram_inner(s.matrix()));
    BoundReport r = make("remark_min", sq(s.norm()), cross + std::min(first, second), sq(s.norm()));
    r.details["cartesian_product"] = cross;
    r.details["branch_square"] = first;
    r.details["branch_gram"] = second;
    record_class(r, s.classification());
    if (!accretive_or_dissipative(s)) return not_applicable(std::move(r), kNeedsAccOrDis, tol);
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_thm25(const Operand& s, double p) {
    check_schatten(p);
    const double tol = s.settings().tol_rel;
    const ComplexMatrix& re = s.real_part();
    const ComplexMatrix& im = s.imag_part();
    ComplexMatrix squares = re * re + im * im;
    detail::hermitize(squares);
    const double lhs = schatten_norm(gram_outer(s.matrix()), p);
    const double base = schatten_norm(squares, p);
    const double acc_rhs = base + s.norm_real() * schatten_norm(im, p);
    const double dis_rhs = base + s.norm_imag() * schatten_norm(re, p);
    const auto& c = s.classification();
    BoundReport r = make("thm25", lhs, c.is_accretive || !c.is_dissipative ? acc_rhs : dis_rhs,
                         s.norm() * schatten_norm(s.matrix(), p));
    r.details["p"] = p;
    r.details["squares_norm"] = base;
    r.details["accretive_rhs"] = acc_rhs;
    r.details["dissipative_rhs"] = dis_rhs;
    r.details["min_rhs"] = std::min(acc_rhs, dis_rhs);
    record_class(r, c);
    if (!accretive_or_dissipative(s)) return not_applicable(std::move(r), kNeedsAccOrDis, tol);
    finish_inequality(r, tol);
    return r;
}

BoundReport bound_final_thm(const Operand& s, double p) {
    check_schatten(p);
    const double tol = s.settings().tol_rel;
    const double lhs = schatten_norm(gram_outer(s.matrix()), p);
    const double wp = std::isinf(p) ? s.omega() : weighted_numerical_radius(s.matrix(), p, s.settings().sweep);
    BoundReport r = make("final_thm", lhs, wp * (2.0 * wp + s.omega()), s.norm() * schatten_norm(s.matrix(), p));
    r.details["p"] = p;
    r.details["omega"] = s.omega();
    r.details["weighted_omega"] = wp;
    record_class(r, s.classification());
    if (!accretive_or_dissipative(s)) return not_applicable(std::move(r), kNeedsAccOrDis, tol);
    finish_inequality(r, tol);
    return r;
}

}  // namespace radiuslab
