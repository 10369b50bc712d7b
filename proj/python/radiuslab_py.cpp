#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "radiuslab/harness.hpp"
#include "radiuslab/matrix_io.hpp"

namespace py = pybind11;
using namespace radiuslab;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
    if (a.ndim() != 2) throw Error(ErrorCode::BadSpec, "expected a 2-d array");
    const auto r = static_cast<std::size_t>(a.shape(0));
    const auto c = static_cast<std::size_t>(a.shape(1));
    std::vector<Complex> data(a.data(), a.data() + r * c);
    return ComplexMatrix(r, c, std::move(data));
}

CArray to_array(const ComplexMatrix& m) {
    CArray out({m.rows(), m.cols()});
    std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
    return out;
}

std::vector<Complex> to_vector(const CArray& a) {
    if (a.ndim() != 1) throw Error(ErrorCode::BadSpec, "expected a 1-d array");
    return std::vector<Complex>(a.data(), a.data() + a.shape(0));
}

py::dict report_dict(const BoundReport& r) {
    py::dict d;
    d["bound_id"] = r.bound_id;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["slack"] = r.slack;
    d["scale"] = r.scale;
    d["holds"] = r.holds;
    d["applicable"] = r.applicable;
    d["reason"] = r.reason;
    d["details"] = r.details;
    return d;
}

SweepConfig sweep_of(int grid, double refine_tol, int iters) {
    SweepConfig s;
    s.coarse_grid = grid;
    s.refine_tol = refine_tol;
    s.max_refine_iters = iters;
    return s;
}

EnsembleKind kind_of(const std::string& name) {
    if (const auto k = parse_ensemble_kind(name)) return *k;
    throw Error(ErrorCode::BadSpec, "unknown ensemble '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_radiuslab, m) {
    m.doc() = "Numerical radius, norms and inequality checks for small complex matrices";

    // Messages start with the error code name, e.g. "NotSquare: ...".
    py::register_exception<Error>(m, "RadiuslabError", PyExc_ValueError);

    constexpr double inf = std::numeric_limits<double>::infinity();

    m.def("numerical_radius",
          [](const CArray& s, int grid, double tol, int iters) {
              return numerical_radius(to_matrix(s), sweep_of(grid, tol, iters));
          },
          py::arg("s"), py::arg("coarse_grid") = 720, py::arg("refine_tol") = 1e-10,
          py::arg("max_refine_iters") = 200);
    m.def("numerical_radius_oracle",
          [](const CArray& s, int restarts, std::uint64_t seed) {
              return numerical_radius_oracle(to_matrix(s), restarts, seed);
          },
          py::arg("s"), py::arg("restarts") = 32, py::arg("seed") = 0);
    m.def("off_diag_numerical_radius",
          [](const CArray& s, const CArray& t) { return off_diag_numerical_radius(to_matrix(s), to_matrix(t)); },
          py::arg("s"), py::arg("t"));
    m.def("weighted_numerical_radius",
          [](const CArray& s, double p) { return weighted_numerical_radius(to_matrix(s), p); }, py::arg("s"),
          py::arg("p"));
    m.def("operator_norm", [](const CArray& s) { return operator_norm(to_matrix(s)); });
    m.def("schatten_norm", [](const CArray& s, double p) { return schatten_norm(to_matrix(s), p); },
          py::arg("s"), py::arg("p") = inf);
    m.def("singular_values", [](const CArray& s) { return singular_values(to_matrix(s)); });
    m.def("matrix_abs", [](const CArray& s) { return to_array(matrix_abs(to_matrix(s))); });
    m.def("psd_power", [](const CArray& a, double p) { return to_array(psd_power(to_matrix(a), p)); });
    m.def("spectral_map", [](const CArray& a, const std::function<double(double)>& f) {
        return to_array(spectral_map(to_matrix(a), f));
    });
    m.def("hermitian_eigen", [](const CArray& h) {
        const auto e = hermitian_eigen(to_matrix(h));
        return py::make_tuple(e.eigenvalues, to_array(e.vectors));
    });
    m.def("spectral_radius_psd_product", [](const CArray& a, const CArray& b) {
        return spectral_radius_psd_product(to_matrix(a), to_matrix(b));
    });
    m.def("cartesian_decomposition", [](const CArray& s) {
        const auto p = cartesian_decomposition(to_matrix(s));
        return py::make_tuple(to_array(p.real), to_array(p.imag));
    });
    m.def("off_diag_embed", [](const CArray& s, const CArray& t) {
        return to_array(off_diag_embed(to_matrix(s), to_matrix(t)));
    });
    m.def(
        "classify",
        [](const CArray& s, double tol) {
            const auto c = classify(to_matrix(s), tol);
            py::dict d;
            d["hermitian"] = c.is_hermitian;
            d["normal"] = c.is_normal;
            d["accretive"] = c.is_accretive;
            d["dissipative"] = c.is_dissipative;
            d["psd"] = c.is_psd;
            return d;
        },
        py::arg("s"), py::arg("tol") = 1e-9);

    m.def(
        "sample",
        [](const std::string& kind, std::size_t dim, double scale, std::uint64_t seed) {
            return to_array(sample(EnsembleSpec{kind_of(kind), dim, scale, seed}));
        },
        py::arg("kind"), py::arg("dim"), py::arg("scale") = 1.0, py::arg("seed") = 0);
    m.def("canonical_suite", [] {
        py::list out;
        for (const auto& [name, mat] : canonical_suite()) out.append(py::make_tuple(name, to_array(mat)));
        return out;
    });
    m.def("ensemble_kinds", [] {
        std::vector<std::string> names;
        for (auto k : all_ensemble_kinds()) names.emplace_back(to_string(k));
        return names;
    });
    m.def("bound_ids", [] {
        std::vector<std::string> ids;
        for (const auto& b : bound_catalog()) ids.emplace_back(b.id);
        return ids;
    });

    m.def(
        "evaluate",
        [](const std::string& bound, const CArray& s, std::optional<CArray> t, double tol_rel) {
            EvalSettings st;
            st.tol_rel = tol_rel;
            const ComplexMatrix sm = to_matrix(s);
            std::optional<ComplexMatrix> tm;
            if (t) tm = to_matrix(*t);
            return report_dict(cmd_eval(sm, tm, {parse_bound_selector(bound)}, st).reports.at(0));
        },
        py::arg("bound"), py::arg("s"), py::arg("t") = py::none(), py::arg("tol_rel") = 1e-7);
    m.def(
        "check_lemma",
        [](const std::string& id, const CArray& a, std::optional<CArray> b, std::optional<CArray> x,
           std::optional<CArray> y, std::optional<double> param) {
            LemmaInputs in;
            in.a = to_matrix(a);
            if (b) in.b = to_matrix(*b);
            if (x) in.x = to_vector(*x);
            if (y) in.y = to_vector(*y);
            in.param = param;
            return report_dict(check_lemma(id, in));
        },
        py::arg("lemma"), py::arg("a"), py::arg("b") = py::none(), py::arg("x") = py::none(),
        py::arg("y") = py::none(), py::arg("param") = py::none());
    m.def(
        "verify",
        [](const std::string& bounds, const std::string& ensemble, std::size_t dim_lo, std::size_t dim_hi,
           std::size_t trials, std::uint64_t seed, double tol_rel) {
            RunConfig cfg;
            cfg.bounds = parse_bound_list(bounds);
            cfg.ensemble = kind_of(ensemble);
            cfg.dim_lo = dim_lo;
            cfg.dim_hi = dim_hi;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.eval.tol_rel = tol_rel;
            py::gil_scoped_release release;
            return to_json(cmd_verify(cfg), false).dump();
        },
        py::arg("bounds"), py::arg("ensemble") = "ginibre", py::arg("dim_lo") = 2, py::arg("dim_hi") = 6,
        py::arg("trials") = 20, py::arg("seed") = 0, py::arg("tol_rel") = 1e-7);
    m.def("matrix_to_json", [](const CArray& s) { return matrix_to_json(to_matrix(s)).dump(); });
    m.def("matrix_from_json", [](const std::string& text) { return to_array(parse_matrix(text)); });
}
