#include "radiuslab/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "radiuslab/ensembles.hpp"
#include "radiuslab/rng.hpp"

namespace radiuslab {

namespace {

const ComplexMatrix& need(const std::optional<ComplexMatrix>& m, std::string_view id, const char* name) {
    if (!m) throw Error(ErrorCode::BadSpec, std::string(id) + ": missing matrix " + name);
    return *m;
}

const std::vector<Complex>& need_vec(const std::vector<Complex>& v, std::size_t n, std::string_view id,
                                     const char* name) {
    if (v.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, std::string(id) + ": vector " + name + " has wrong length");
    }
    return v;
}

BoundReport make(std::string_view id, double lhs, double rhs, double scale) {
    BoundReport r;
    r.bound_id = std::string(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.scale = scale;
    return r;
}

BoundReport gate(BoundReport r, bool ok, const char* reason, double tol) {
    if (!ok) {
        r.applicable = false;
        r.reason = reason;
    }
    finish_inequality(r, tol);
    return r;
}

// |X| for X = P^{1/2} Q^{1/2}, i.e. (Q^{1/2} P Q^{1/2})^{1/2}.
ComplexMatrix abs_of_root_product(const ComplexMatrix& p, const ComplexMatrix& q) {
    return matrix_abs(psd_power(p, 0.5) * psd_power(q, 0.5));
}

double norm_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m = a + b;
    detail::hermitize(m);
    return operator_norm(m);
}

double param_or(const LemmaInputs& in, double fallback) { return in.param.value_or(fallback); }

double require_r(double r, std::string_view id) {
    if (std::isnan(r) || std::isinf(r) || r < 1.0) {
        throw Error(ErrorCode::BadExponent, std::string(id) + ": r must be finite and >= 1");
    }
    return r;
}

BoundReport lemma_k1(const ComplexMatrix& a, const ComplexMatrix& b, const EvalSettings& st) {
    require_same_shape(a, b, "k1");
    const auto ca = classify(a, st.class_tol), cb = classify(b, st.class_tol);
    BoundReport r = make("k1", 0.0, 0.0, operator_norm(a) + operator_norm(b));
    if (!ca.is_psd || !cb.is_psd) return gate(std::move(r), false, "needs PSD A and B", st.tol_rel);
    const double left = norm_sum(a, abs_of_root_product(b, a));
    const double right = norm_sum(b, abs_of_root_product(a, b));
    r.lhs = norm_sum(a, b);
    r.rhs = std::max(left, right);
    r.details["a_term"] = left;
    r.details["b_term"] = right;
    return gate(std::move(r), true, "", st.tol_rel);
}

BoundReport lemma_2(const ComplexMatrix& a, const ComplexMatrix& b, const EvalSettings& st) {
    require_same_shape(a, b, "lem2");
    const auto ca = classify(a, st.class_tol), cb = classify(b, st.class_tol);
    const bool herm = ca.is_hermitian && cb.is_hermitian;
    const bool normal = ca.is_normal && cb.is_normal;
    BoundReport r = make("lem2", operator_norm(a + b), norm_sum(matrix_abs(a), matrix_abs(b)),
                         operator_norm(a) + operator_norm(b));
    r.details["hermitian_pair"] = herm ? 1.0 : 0.0;
    r.details["normal_pair"] = normal ? 1.0 : 0.0;
    return gate(std::move(r), herm || normal, "needs a Hermitian or a normal pair", st.tol_rel);
}

BoundReport lemma_3(const ComplexMatrix& a, const ComplexMatrix& b, const EvalSettings& st) {
    require_same_shape(a, b, "lem3");
    const double rot = off_diag_numerical_radius(a, b, st.sweep);
    const double direct = numerical_radius(off_diag_embed(a, b), st.sweep);
    BoundReport r = make("lem3", rot, direct, std::max(operator_norm(a), operator_norm(b)));
    r.details["rotation_sup"] = rot;
    r.details["embed_omega"] = direct;
    finish_identity(r, st.tol_rel);
    return r;
}

BoundReport lemma_14(const ComplexMatrix& s, const ComplexMatrix& t, const EvalSettings& st) {
    require_same_shape(s, t, "lem14");
    const double ns = operator_norm(s), nt = operator_norm(t);
    BoundReport r = make("lem14", operator_norm(s * t - t * s), ns * nt, ns * nt);
    const bool ok = classify(s, st.class_tol).is_psd || classify(t, st.class_tol).is_psd;
    return gate(std::move(r), ok, "needs S or T positive", st.tol_rel);
}

BoundReport lemma_17(const ComplexMatrix& a, const ComplexMatrix& b, const EvalSettings& st) {
    require_same_shape(a, b, "lem17");
    const double na = operator_norm(a), nb = operator_norm(b);
    BoundReport r = make("lem17", 0.0, 0.0, std::max(na, nb));
    if (!classify(a, st.class_tol).is_psd || !classify(b, st.class_tol).is_psd) {
        return gate(std::move(r), false, "needs PSD A and B", st.tol_rel);
    }
    const double root = operator_norm(psd_power(a, 0.5) * psd_power(b, 0.5));
    r.lhs = std::max(na, nb) - root;
    r.rhs = operator_norm(a - b);
    r.details["root_product_norm"] = root;
    return gate(std::move(r), true, "", st.tol_rel);
}

BoundReport lemma_22(const ComplexMatrix& a, const ComplexMatrix& b, double p, const EvalSettings& st) {
    require_same_shape(a, b, "lem22");
    if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::BadExponent, "lem22: Schatten exponent must be >= 1");
    const auto c = classify(a, st.class_tol);
    const auto parts = cartesian_decomposition(a);
    const double nr = operator_norm(parts.real), ni = operator_norm(parts.imag);
    const double nb = schatten_norm(b, p);
    BoundReport r = make("lem22", schatten_norm(a * b - b * a, p), std::sqrt(nr * nr + ni * ni) * nb,
                         operator_norm(a) * nb);
    r.details["p"] = p;
    const bool ok = c.is_normal && c.is_accretive && c.is_dissipative;
    return gate(std::move(r), ok, "needs A normal with Re A, Im A >= 0", st.tol_rel);
}

BoundReport lemma_27(const ComplexMatrix& a, const std::vector<Complex>& x, const std::vector<Complex>& y,
                     const ScalarMap& f, const ScalarMap& g, const EvalSettings& st) {
    const std::size_t n = a.rows();
    need_vec(x, n, "lem27", "x");
    need_vec(y, n, "lem27", "y");
    const ComplexMatrix abs_a = matrix_abs(a);
    const ComplexMatrix abs_adj = matrix_abs(a.adjoint());
    const double na = operator_norm(a);
    require_fg_product(hermitian_eigenvalues(abs_a), f, g, na);
    require_fg_product(hermitian_eigenvalues(abs_adj), f, g, na);
    const auto clamp = [](const ScalarMap& h) {
        return [&h](double t) {
            const double v = h(std::max(t, 0.0));
            return v * v;
        };
    };
    const ComplexMatrix f2 = spectral_map(abs_a, clamp(f));
    const ComplexMatrix g2 = spectral_map(abs_adj, clamp(g));
    const double fx = std::max(form(f2, x, x).real(), 0.0);
    const double gy = std::max(form(g2, y, y).real(), 0.0);
    const double gx = std::max(form(g2, x, x).real(), 0.0);
    const double lhs_xy = std::abs(form(a, x, y));
    const double lhs_xx = std::abs(form(a, x, x));
    const double printed = std::sqrt(fx * gx);
    const double tol = st.tol_rel;

    BoundReport r = make("lem27", lhs_xy, std::sqrt(fx * gy), na * vector_norm(x) * vector_norm(y));
    const double scale_xx = na * vector_norm(x) * vector_norm(x);
    r.details["x_only_rhs"] = printed;
    r.details["x_only_lhs_diagonal"] = lhs_xx;
    r.details["x_only_holds_diagonal"] = printed - lhs_xx >= -tol * scale_xx ? 1.0 : 0.0;
    r.details["x_only_holds_two_vector"] = printed - lhs_xy >= -tol * r.scale ? 1.0 : 0.0;
    finish_inequality(r, tol);
    return r;
}

BoundReport lemma_28(const ComplexMatrix& a, std::vector<Complex> x, double rr, const EvalSettings& st) {
    need_vec(x, a.rows(), "lem28", "x");
    const double r = require_r(rr, "lem28");
    const double len = vector_norm(x);
    if (!(len > 0.0)) throw Error(ErrorCode::BadSpec, "lem28: x must be nonzero");
    for (auto& z : x) z /= len;
    const double na = operator_norm(a);
    BoundReport rep = make("lem28", 0.0, 0.0, std::pow(na, r));
    rep.details["r"] = r;
    if (!classify(a, st.class_tol).is_psd) return gate(std::move(rep), false, "needs PSD A", st.tol_rel);
    rep.lhs = std::pow(std::max(form(a, x, x).real(), 0.0), r);
    rep.rhs = form(psd_power(a, r), x, x).real();
    return gate(std::move(rep), true, "", st.tol_rel);
}

BoundReport lemma_eq21(const ComplexMatrix& s, const EvalSettings& st) {
    require_square(s, "eq21");
    const auto parts = cartesian_decomposition(s);
    const double nr = operator_norm(parts.real), ni = operator_norm(parts.imag);
    const double w = numerical_radius(s, st.sweep);
    BoundReport r = make("eq21", std::max(nr, ni), w, operator_norm(s));
    r.details["re_norm"] = nr;
    r.details["im_norm"] = ni;
    r.details["omega"] = w;
    finish_inequality(r, st.tol_rel);
    return r;
}

BoundReport lemma_as(const ComplexMatrix& a, const ComplexMatrix& b, double rr, const EvalSettings& st) {
    require_same_shape(a, b, "as_ineq");
    const double r = require_r(rr, "as_ineq");
    BoundReport rep = make("as_ineq", 0.0, 0.0, std::pow(std::max(operator_norm(a), operator_norm(b)), r));
    rep.details["r"] = r;
    if (!classify(a, st.class_tol).is_psd || !classify(b, st.class_tol).is_psd) {
        return gate(std::move(rep), false, "needs PSD A and B", st.tol_rel);
    }
    ComplexMatrix mean = 0.5 * (a + b);
    detail::hermitize(mean);
    rep.lhs = operator_norm(psd_power(mean, r));
    rep.rhs = 0.5 * norm_sum(psd_power(a, r), psd_power(b, r));
    return gate(std::move(rep), true, "", st.tol_rel);
}

BoundReport lemma_pomoc(const ComplexMatrix& x, const ComplexMatrix& y, const EvalSettings& st) {
    require_same_shape(x, y, "pomoc");
    const double nx = operator_norm(x), ny = operator_norm(y);
    const double rhs = std::max(nx, ny);
    BoundReport r = make("pomoc", operator_norm(block_anti_diagonal(x, y)), rhs, rhs);
    r.details["x_norm"] = nx;
    r.details["y_norm"] = ny;
    finish_identity(r, st.tol_rel);
    return r;
}

double root_map(double t) { return std::sqrt(std::max(t, 0.0)); }

}  // namespace

const std::vector<std::string_view>& lemma_ids() {
    static const std::vector<std::string_view> ids = {"k1",   "lem2", "lem3", "lem14", "lem17",  "lem22",
                                                      "lem27", "lem28", "eq21", "as_ineq", "pomoc"};
    return ids;
}

bool is_lemma_id(std::string_view id) noexcept {
    const auto& ids = lemma_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

BoundReport check_lemma(std::string_view id, const LemmaInputs& in, const EvalSettings& st) {
    if (!is_lemma_id(id)) throw Error(ErrorCode::UnknownLemma, "unknown lemma id '" + std::string(id) + "'");
    const ComplexMatrix& a = need(in.a, id, "A");
    if (id == "eq21") return lemma_eq21(a, st);
    require_square(a, std::string(id).c_str());
    if (id == "lem27") {
        const ScalarMap f = in.f ? in.f : ScalarMap(root_map);
        const ScalarMap g = in.g ? in.g : ScalarMap(root_map);
        return lemma_27(a, in.x, in.y, f, g, st);
    }
    if (id == "lem28") return lemma_28(a, in.x, param_or(in, 2.0), st);
    const ComplexMatrix& b = need(in.b, id, "B");
    if (id == "k1") return lemma_k1(a, b, st);
    if (id == "lem2") return lemma_2(a, b, st);
    if (id == "lem3") return lemma_3(a, b, st);
    if (id == "lem14") return lemma_14(a, b, st);
    if (id == "lem17") return lemma_17(a, b, st);
    if (id == "lem22") return lemma_22(a, b, param_or(in, 2.0), st);
    if (id == "as_ineq") return lemma_as(a, b, param_or(in, 2.0), st);
    return lemma_pomoc(a, b, st);
}

LemmaInputs sample_lemma_inputs(std::string_view id, std::size_t dim, std::uint64_t seed,
                                std::string_view variant, std::optional<double> param) {
    if (!is_lemma_id(id)) throw Error(ErrorCode::UnknownLemma, "unknown lemma id '" + std::string(id) + "'");
    if (dim == 0) throw Error(ErrorCode::BadSpec, "lemma inputs need dim >= 1");
    const auto draw = [&](EnsembleKind kind, std::uint64_t stream) {
        return sample(EnsembleSpec{kind, dim, 1.0, derive_seed(seed, stream, 0)});
    };
    Rng rng(derive_seed(seed, 99, 0));
    const auto vec = [&] {
        std::vector<Complex> v(dim);
        for (auto& z : v) z = rng.complex_normal();
        return v;
    };

    LemmaInputs in;
    in.param = param;
    if (id == "k1" || id == "lem17" || id == "as_ineq") {
        in.a = draw(EnsembleKind::Psd, 1);
        in.b = draw(EnsembleKind::Psd, 2);
    } else if (id == "lem2") {
        const auto kind = variant == "normal" ? EnsembleKind::Normal : EnsembleKind::Hermitian;
        in.a = draw(kind, 1);
        in.b = draw(kind, 2);
    } else if (id == "lem3" || id == "pomoc") {
        in.a = draw(EnsembleKind::Ginibre, 1);
        in.b = draw(EnsembleKind::Ginibre, 2);
    } else if (id == "lem14") {
        in.a = draw(EnsembleKind::Psd, 1);
        in.b = draw(EnsembleKind::Ginibre, 2);
        if (seed & 1) std::swap(in.a, in.b);
    } else if (id == "lem22") {
        // U diag(d) U* with every d_i in the closed first quadrant.
        const ComplexMatrix u = haar_unitary(dim, rng);
        std::vector<Complex> d(dim);
        for (auto& z : d) {
            const Complex w = rng.complex_normal();
            z = {std::abs(w.real()), std::abs(w.imag())};
        }
        in.a = u * ComplexMatrix::diagonal(std::span<const Complex>(d)) * u.adjoint();
        in.b = draw(EnsembleKind::Ginibre, 2);
    } else if (id == "lem27") {
        in.a = draw(EnsembleKind::Ginibre, 1);
        in.x = vec();
        in.y = vec();
        if (param) {
            const double e = *param;
            if (!(e >= 0.0 && e <= 1.0)) throw Error(ErrorCode::BadExponent, "lem27: exponent must lie in [0, 1]");
            in.f = [e](double t) { return std::pow(t, e); };
            in.g = [e](double t) { return std::pow(t, 1.0 - e); };
        }
    } else if (id == "lem28") {
        in.a = draw(EnsembleKind::Psd, 1);
        in.x = vec();
    } else {
        in.a = draw(EnsembleKind::Ginibre, 1);
    }
    return in;
}

}  // namespace radiuslab
