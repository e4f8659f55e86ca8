#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nccover/algebra.hpp"
#include "nccover/circle.hpp"
#include "nccover/connections.hpp"
#include "nccover/dixmier.hpp"
#include "nccover/frames.hpp"
#include "nccover/io.hpp"
#include "nccover/torus.hpp"

namespace py = pybind11;
using namespace nccover;

namespace {

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

Rep restriction_rep(int dim) {
    return [dim](const Mat& x) -> Mat { return x.topLeftCorner(dim, dim); };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite noncommutative coverings";
    m.attr("__version__") = "0.1.0";

    // Subclass of RuntimeError carrying the error code name in .code
    static py::handle error = py::exception<Error>(m, "NccoverError", PyExc_RuntimeError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = error(e.what());
            exc.attr("code") = error_name(e.code());
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    // linalg
    m.def("op_norm", &op_norm);
    m.def("singular_values", &singular_values);
    m.def("numerical_rank", &numerical_rank, py::arg("m"), py::arg("rel_tol") = kRankTol);
    m.def("herm_eig", [](const Mat& x) {
        HermEig e = herm_eig(x);
        return py::make_tuple(e.values, e.vectors);
    });
    m.def("func_calc", &func_calc);
    m.def("polar", [](const Mat& x) {
        PolarParts p = polar(x);
        return py::make_tuple(p.isometry, p.absval);
    });
    m.def("range_proj", &range_proj);
    m.def("projection_defect", &projection_defect);
    m.def("proj_join", &proj_join);
    m.def("proj_meet", &proj_meet);
    m.def("proj_diff", &proj_diff);
    m.def("kron", &kron);
    m.def("random_unitary", [](int n, std::uint64_t seed) {
        auto rng = make_rng(seed);
        return random_unitary(n, rng);
    }, py::arg("n"), py::arg("seed") = 1);

    // algebra-action
    py::class_<StarAlgebra>(m, "StarAlgebra")
        .def_static("span_of", &StarAlgebra::span_of)
        .def_static("generated_by", &StarAlgebra::generated_by, py::arg("gens"), py::arg("ambient_dim"),
                    py::arg("with_unit") = false)
        .def_static("full_matrix", &StarAlgebra::full_matrix)
        .def_static("diagonal", &StarAlgebra::diagonal)
        .def_property_readonly("ambient_dim", &StarAlgebra::ambient_dim)
        .def_property_readonly("dim", &StarAlgebra::dim)
        .def_property_readonly("unital", &StarAlgebra::unital)
        .def("basis", &StarAlgebra::basis_list)
        .def("contains", &StarAlgebra::contains, py::arg("x"), py::arg("tol") = 1e-9)
        .def("membership_residual", &StarAlgebra::membership_residual)
        .def("closure_defect", &StarAlgebra::closure_defect)
        .def("unit", &StarAlgebra::unit)
        .def("__repr__", [](const StarAlgebra& a) {
            return "<StarAlgebra dim=" + std::to_string(a.dim()) + " in M_" + std::to_string(a.ambient_dim()) + ">";
        });

    py::class_<GroupAction>(m, "GroupAction")
        .def_readonly("table", &GroupAction::table)
        .def_readonly("identity", &GroupAction::identity)
        .def_readonly("maps", &GroupAction::maps)
        .def_property_readonly("order", &GroupAction::order)
        .def("apply", &GroupAction::apply);

    m.def("cyclic_table", &cyclic_table);
    m.def("product_table", &product_table);
    m.def("action_from_unitaries", &action_from_unitaries);
    m.def("validate_action", &validate_action, py::arg("algebra"), py::arg("action"), py::arg("tol") = 1e-9);
    m.def("fixed_point_algebra", &fixed_point_algebra);

    py::enum_<Verdict>(m, "Verdict")
        .value("Success", Verdict::Success)
        .value("Indeterminate", Verdict::Indeterminate)
        .value("Infeasible", Verdict::Infeasible);

    py::class_<GaloisSolution>(m, "GaloisSolution")
        .def_readonly("verdict", &GaloisSolution::verdict)
        .def_readonly("pairs", &GaloisSolution::pairs)
        .def_readonly("residual_unit", &GaloisSolution::residual_unit)
        .def_readonly("residual_orth", &GaloisSolution::residual_orth)
        .def_readonly("lsq_residual", &GaloisSolution::lsq_residual);
    m.def("solve_canonical", &solve_canonical);

    py::class_<CanonicalMapReport>(m, "CanonicalMapReport")
        .def_readonly("domain_dim", &CanonicalMapReport::domain_dim)
        .def_readonly("codomain_dim", &CanonicalMapReport::codomain_dim)
        .def_readonly("rank", &CanonicalMapReport::rank)
        .def_readonly("well_defined_residual", &CanonicalMapReport::well_defined_residual)
        .def_readonly("bijective", &CanonicalMapReport::bijective);
    m.def("canonical_map_matrix", &canonical_map_matrix);

    py::class_<BoringCover>(m, "BoringCover")
        .def_readonly("cover", &BoringCover::cover)
        .def_readonly("action", &BoringCover::action)
        .def_readonly("base_diagonal", &BoringCover::base_diagonal);
    m.def("boring_cover", &boring_cover, py::arg("algebra"), py::arg("table"), py::arg("identity") = 0);

    // circle-functions
    m.def("bump_value", &bump_value);
    m.def("bump_samples", [](int n) {
        BumpPair b = make_bumps(n);
        return py::make_tuple(b.b1.samples, b.b2.samples);
    });
    m.def("bump_partition_residual", [](int n) { return partition_residual(make_bumps(n)); });
    m.def("cover_partition_residual", &cover_partition_residual);
    m.def("line_partition_residual", [](int n, int window) { return check_line_partition(make_bumps(n), window); });

    // nc-torus
    py::class_<TorusElement>(m, "TorusElement")
        .def(py::init<double, int>())
        .def_static("unit", &TorusElement::unit, py::arg("theta"), py::arg("cutoff") = 0)
        .def_static("monomial", &TorusElement::monomial, py::arg("theta"), py::arg("r"), py::arg("s"),
                    py::arg("c") = cplx(1.0))
        .def_static("random", [](double theta, int cutoff, std::uint64_t seed) {
            auto rng = make_rng(seed);
            return TorusElement::random(theta, cutoff, rng);
        }, py::arg("theta"), py::arg("cutoff"), py::arg("seed") = 1)
        .def_property_readonly("theta", &TorusElement::theta)
        .def_property_readonly("cutoff", &TorusElement::cutoff)
        .def("coeff", &TorusElement::coeff)
        .def("set", &TorusElement::set)
        .def("adjoint", &TorusElement::adjoint)
        .def("max_abs", &TorusElement::max_abs)
        .def("__add__", &TorusElement::operator+)
        .def("__sub__", &TorusElement::operator-)
        .def("__mul__", [](const TorusElement& a, const TorusElement& b) { return normal_product(a, b); })
        .def("__mul__", [](const TorusElement& a, cplx c) { return a * c; })
        .def("__rmul__", [](const TorusElement& a, cplx c) { return a * c; });
    m.def("tau0", &tau0);
    m.def("derivations", &derivations);
    m.def("dirac_eigenvalues", [](cplx tau, int cutoff) { return dirac_spectrum(tau, cutoff).eigenvalues; });
    m.def("clock_shift", [](int q, int p) {
        ClockShiftRep r = clock_shift(q, p);
        return py::make_tuple(r.U, r.V);
    });
    m.def("evaluate", [](const TorusElement& x, int q, int p) { return evaluate(x, clock_shift(q, p)); });

    // galois-frames
    py::class_<RiggedFrameReport>(m, "RiggedFrameReport")
        .def_readonly("residual_1mb", &RiggedFrameReport::residual_1mb)
        .def_readonly("residual_1mkx", &RiggedFrameReport::residual_1mkx)
        .def_readonly("residual_eexx", &RiggedFrameReport::residual_eexx)
        .def_readonly("residual_gort", &RiggedFrameReport::residual_gort)
        .def_readonly("passed", &RiggedFrameReport::pass)
        .def("max_residual", &RiggedFrameReport::max_residual);

    py::class_<GaloisFrame>(m, "GaloisFrame")
        .def_readonly("ambient", &GaloisFrame::ambient)
        .def_readonly("e", &GaloisFrame::e)
        .def_readonly("xi", &GaloisFrame::xi)
        .def_readonly("group", &GaloisFrame::group)
        .def_property_readonly("order", &GaloisFrame::order)
        .def("inner", &GaloisFrame::inner);
    m.def("check_frame", &check_frame, py::arg("frame"), py::arg("tol") = 1e-8);
    m.def("check_line_frame", &check_line_frame, py::arg("grid"), py::arg("window"), py::arg("tol") = 1e-8);
    m.def("boring_frame", &boring_frame, py::arg("algebra"), py::arg("table"), py::arg("identity") = 0);
    m.def("circle_clock", &circle_clock);
    m.def("circle_dirac", &circle_dirac);

    py::class_<OrthogonalizedFamily>(m, "OrthogonalizedFamily")
        .def_readonly("u", &OrthogonalizedFamily::u)
        .def_readonly("residual_sum", &OrthogonalizedFamily::residual_sum)
        .def_readonly("residual_orth", &OrthogonalizedFamily::residual_orth)
        .def_readonly("residual_domination", &OrthogonalizedFamily::residual_domination);
    m.def("vn_orthogonalize", &vn_orthogonalize);
    m.def("random_commuting_partition", [](int dim, int count, std::uint64_t seed) {
        auto rng = make_rng(seed);
        return random_commuting_partition(dim, count, rng);
    }, py::arg("dim"), py::arg("count"), py::arg("seed") = 1);

    py::class_<RootExtension>(m, "RootExtension")
        .def_readonly("n", &RootExtension::n)
        .def_readonly("v", &RootExtension::v)
        .def_readonly("v_hat", &RootExtension::v_hat)
        .def_readonly("u_hat", &RootExtension::u_hat)
        .def_readonly("base", &RootExtension::base)
        .def_readonly("cover", &RootExtension::cover)
        .def_readonly("frame", &RootExtension::frame)
        .def_readonly("root_residual", &RootExtension::root_residual);
    m.def("principal_root", &principal_root);
    m.def("root_extension", &root_extension);

    py::enum_<TorusFrameKind>(m, "TorusFrameKind")
        .value("Hybrid", TorusFrameKind::Hybrid)
        .value("Spectral", TorusFrameKind::Spectral)
        .value("BumpProduct", TorusFrameKind::BumpProduct);
    py::class_<TorusCover>(m, "TorusCover")
        .def_readonly("theta", &TorusCover::theta)
        .def_readonly("theta_prime", &TorusCover::theta_prime)
        .def_readonly("u", &TorusCover::u)
        .def_readonly("v", &TorusCover::v)
        .def_readonly("frame", &TorusCover::frame)
        .def_readonly("fixed_dim", &TorusCover::fixed_dim)
        .def_readonly("base_dim", &TorusCover::base_dim)
        .def_readonly("combined_rank", &TorusCover::combined_rank)
        .def_readonly("relation_residual", &TorusCover::relation_residual)
        .def_readonly("action_residual", &TorusCover::action_residual);
    m.def("torus_cover", &torus_cover, py::arg("m"), py::arg("n"), py::arg("k"), py::arg("p"), py::arg("q"),
          py::arg("kind") = TorusFrameKind::Hybrid);

    py::class_<Su2Report>(m, "Su2Report")
        .def_readonly("subordinated_dim", &Su2Report::subordinated_dim)
        .def_readonly("central_blocks", &Su2Report::central_blocks)
        .def_readonly("labels", &Su2Report::labels)
        .def_readonly("label_groups", &Su2Report::label_groups)
        .def_readonly("frame_report", &Su2Report::frame_report)
        .def_readonly("passed", &Su2Report::pass);
    m.def("su2_disconnect", &su2_disconnect);

    // connections: representations restrict to the top-left rep_dim block
    py::class_<LiftedDirac>(m, "LiftedDirac")
        .def_readonly("projection", &LiftedDirac::projection)
        .def_readonly("restricted", &LiftedDirac::restricted)
        .def_readonly("spectrum", &LiftedDirac::spectrum)
        .def_readonly("equivariance", &LiftedDirac::equivariance)
        .def_readonly("max_commutator", &LiftedDirac::max_commutator);
    m.def("dirac_lift", [](const GaloisFrame& f, const Mat& dirac, int rep_dim) {
        return dirac_lift(f, dirac, restriction_rep(rep_dim), rep_dim);
    });
    m.def("leibniz_residual", [](int rank, const std::vector<Mat>& xi, const Mat& a, const Mat& dirac) {
        const int dim = static_cast<int>(dirac.rows());
        return leibniz_residual(free_module(rank, dim), xi, a, dirac, restriction_rep(dim));
    });

    // dixmier
    py::class_<SingularSeries>(m, "SingularSeries")
        .def(py::init<std::vector<double>, std::string, bool>(), py::arg("values"),
             py::arg("provenance") = "python", py::arg("exhaustive") = false)
        .def_property_readonly("values", &SingularSeries::values)
        .def_property_readonly("provenance", &SingularSeries::provenance)
        .def("cutoff_sum", &SingularSeries::cutoff_sum)
        .def("__len__", &SingularSeries::size);
    py::class_<DixmierEstimate>(m, "DixmierEstimate")
        .def_readonly("slope", &DixmierEstimate::slope)
        .def_readonly("stderr", &DixmierEstimate::stderr_)
        .def_readonly("intercept", &DixmierEstimate::intercept)
        .def_readonly("tau_final", &DixmierEstimate::tau_final)
        .def_readonly("tau_oscillation", &DixmierEstimate::tau_oscillation)
        .def_readonly("tau_curve", &DixmierEstimate::tau_curve);
    m.def("sigma", &sigma);
    m.def("tau", &tau);
    m.def("nc_integral", &nc_integral);
    m.def("lift_series", &lift_series);
    m.def("series_of_matrix", &series_of_matrix);
    m.def("circle_series", &circle_series);
    m.def("harmonic_series", &harmonic_series);
    m.def("torus_series", &torus_series, py::arg("tau"), py::arg("cutoff"), py::arg("power") = 2);

    // io
    m.def("torus_to_json", [](const TorusElement& x) { return torus_to_json(x).dump(); });
    m.def("torus_from_json", [](const std::string& s) { return torus_from_json(json::parse(s)); });
}
