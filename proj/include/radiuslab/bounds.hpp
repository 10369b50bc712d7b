#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "radiuslab/linalg.hpp"
#include "radiuslab/matrix.hpp"
#include "radiuslab/radius.hpp"

namespace radiuslab {

struct EvalSettings {
    SweepConfig sweep{};
    double tol_rel = 1e-7;    ///< holds <=> slack >= -tol_rel * scale
    double class_tol = 1e-9;  ///< tolerance for hypothesis gates
};

/// One evaluated inequality, always in the form lhs <= rhs.
struct BoundReport {
    std::string bound_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;   ///< rhs - lhs; -|rhs - lhs| for identities
    double scale = 0.0;   ///< natural homogeneity of the statement
    bool holds = true;
    bool applicable = true;
    std::string reason;   ///< why the hypotheses failed, if they did
    std::map<std::string, double> details;

    double relative_slack() const noexcept { return scale > 0.0 ? slack / scale : slack; }
};

/// Sets slack and holds for an inequality lhs <= rhs.
void finish_inequality(BoundReport& r, double tol_rel);
/// Sets slack and holds for an identity lhs == rhs.
void finish_identity(BoundReport& r, double tol_rel);

/// A square matrix with the derived quantities most bounds need: norms, the
/// numerical radius, |S|, |S*|, their square roots, the Cartesian parts and
/// the hypothesis classification. Computed once at construction.
class Operand {
public:
    explicit Operand(ComplexMatrix s, EvalSettings settings = {});

    const ComplexMatrix& matrix() const noexcept { return s_; }
    const EvalSettings& settings() const noexcept { return settings_; }
    std::size_t dim() const noexcept { return s_.rows(); }

    double norm() const noexcept { return norm_; }
    double omega() const noexcept { return omega_; }
    const ComplexMatrix& abs() const noexcept { return abs_; }
    const ComplexMatrix& abs_adjoint() const noexcept { return abs_adj_; }
    const ComplexMatrix& abs_sqrt() const noexcept { return abs_sqrt_; }
    const ComplexMatrix& abs_adjoint_sqrt() const noexcept { return abs_adj_sqrt_; }
    const ComplexMatrix& real_part() const noexcept { return parts_.real; }
    const ComplexMatrix& imag_part() const noexcept { return parts_.imag; }
    double norm_real() const noexcept { return norm_re_; }
    double norm_imag() const noexcept { return norm_im_; }
    const MatrixClassification& classification() const noexcept { return class_; }

private:
    ComplexMatrix s_;
    EvalSettings settings_;
    double norm_;
    double omega_;
    ComplexMatrix abs_;
    ComplexMatrix abs_adj_;
    ComplexMatrix abs_sqrt_;
    ComplexMatrix abs_adj_sqrt_;
    CartesianParts parts_;
    double norm_re_;
    double norm_im_;
    MatrixClassification class_;
};

/// (S, T) together with omega([[O, S], [T*, O]]).
class OperandPair {
public:
    OperandPair(Operand s, Operand t);

    const Operand& s() const noexcept { return s_; }
    const Operand& t() const noexcept { return t_; }
    const EvalSettings& settings() const noexcept { return s_.settings(); }
    double embed_omega() const noexcept { return embed_omega_; }

private:
    Operand s_;
    Operand t_;
    double embed_omega_;
};

using ScalarMap = std::function<double(double)>;

// Universal upper and lower estimates.
std::pair<BoundReport, BoundReport> bound_equiv(const Operand& s);
BoundReport bound_kittaneh(const Operand& s);
BoundReport bound_bp(const Operand& s);
BoundReport bound_heydarbeygi(const Operand& s);
/// Throws FGProductViolation unless f, g >= 0 and f(t) g(t) = t on the
/// spectra of |S| and |S*|.
BoundReport bound_fg(const Operand& s, const ScalarMap& f, const ScalarMap& g);
/// Throws BadExponent unless 0 <= t <= 1.
BoundReport bound_power_mean(const Operand& s, double t);
BoundReport bound_cor10(const Operand& s);
BoundReport bound_eq16(const Operand& s);
BoundReport bound_thm6(const Operand& s);

// Off-diagonal operator matrices [[O, S], [T*, O]].
BoundReport bound_thm24(const OperandPair& st);
/// Throws BadExponent unless r >= 1.
BoundReport bound_prop4(const OperandPair& st, double r);
BoundReport bound_thm5(const OperandPair& st);
BoundReport bound_normal_prop(const OperandPair& ab);

// Statements gated on accretive / dissipative hypotheses. These never throw
// for a failed hypothesis; they report applicable = false.
BoundReport bound_thm8(const Operand& s);
BoundReport bound_ms(const Operand& s);
BoundReport bound_product(const OperandPair& st);
BoundReport bound_eq18(const Operand& s);
BoundReport bound_eq19(const Operand& s);
BoundReport bound_remark_min(const Operand& s);
BoundReport bound_thm25(const Operand& s, double p);
BoundReport bound_final_thm(const Operand& s, double p);

/// Throws FGProductViolation unless f, g are finite and nonnegative and
/// |f(t) g(t) - t| <= 1e-8 max(t, norm) for every t in `spectrum` (clamped at 0).
void require_fg_product(const std::vector<double>& spectrum, const ScalarMap& f, const ScalarMap& g,
                        double norm);

/// || X^r + (X^{1/2} Y X^{1/2})^{r/2} || for PSD X, Y.
double sandwich_term(const ComplexMatrix& x, const ComplexMatrix& x_sqrt, const ComplexMatrix& y, double r);

}  // namespace radiuslab
