#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riesz/constants.hpp"
#include "riesz/constructions.hpp"
#include "riesz/corpus.hpp"
#include "riesz/generators.hpp"
#include "riesz/geometry.hpp"
#include "riesz/oracles.hpp"
#include "riesz/serialize.hpp"
#include "riesz/spectral.hpp"

namespace py = pybind11;
using namespace riesz;

PYBIND11_MODULE(_riesz, m) {
  m.attr("__version__") = RIESZ_VERSION;

  auto base = py::register_exception<CertificationError>(m, "CertificationError", PyExc_RuntimeError);
  py::register_exception<MissingEntryError>(m, "MissingEntryError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  // ParameterError derives from std::invalid_argument and arrives as ValueError

  py::class_<BallPair>(m, "BallPair")
      .def(py::init(&make_ball_pair), py::arg("dim"), py::arg("R"), py::arg("Rb"), py::arg("delta"))
      .def_readonly("dim", &BallPair::dim)
      .def_readonly("R", &BallPair::radius_e)
      .def_readonly("Rb", &BallPair::radius_b)
      .def_readonly("delta", &BallPair::delta)
      .def_property_readonly("a", &BallPair::spectral_a)
      .def("admissible", &BallPair::admissible)
      .def("__repr__", [](const BallPair& p) {
        return "BallPair(dim=" + std::to_string(p.dim) + ", R=" + std::to_string(p.radius_e) +
               ", Rb=" + std::to_string(p.radius_b) + ", delta=" + std::to_string(p.delta) + ")";
      });
  m.def("pair_from_a", &pair_from_a, py::arg("dim"), py::arg("a"), py::arg("delta"));
  m.def("phi", &phi, py::arg("pair"), py::arg("r"));
  m.def("phi_derivative", &phi_derivative, py::arg("pair"), py::arg("r"));
  m.def("gamma_constant", &gamma_constant, py::arg("pair"));
  m.def("ball_interaction_exact", &ball_interaction_exact, py::arg("pair"));

  m.def("eigenvalue", [](int dim, double a, int ell) { return eigenvalue_closed_form({dim, a, std::max(ell, 1)}, ell); },
        py::arg("dim"), py::arg("a"), py::arg("ell"));
  m.def("harmonic_dimension", &harmonic_dimension, py::arg("dim"), py::arg("ell"));
  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("lambdas", &Spectrum::lambdas)
      .def_readonly("multiplicities", &Spectrum::multiplicities)
      .def_readonly("gap_A", &Spectrum::gap_A)
      .def_readonly("gap_argmax_ell", &Spectrum::gap_argmax_ell)
      .def_readonly("cutoff_n0", &Spectrum::cutoff_n0)
      .def_readonly("cutoff_ell", &Spectrum::cutoff_ell)
      .def_readonly("hs_total", &Spectrum::hs_total)
      .def_readonly("hs_residual", &Spectrum::hs_residual);
  m.def("gap_constant", [](int dim, double a, int ell_max) { return gap_constant({dim, a, ell_max}); },
        py::arg("dim"), py::arg("a"), py::arg("ell_max") = 200);

  py::class_<ConstantLedger>(m, "ConstantLedger")
      .def_property_readonly("dim", &ConstantLedger::dim)
      .def_property_readonly("delta", &ConstantLedger::delta)
      .def("__contains__", &ConstantLedger::contains)
      .def("__getitem__", [](const ConstantLedger& L, const std::string& name) { return static_cast<double>(L.value(name)); })
      .def("text", [](const ConstantLedger& L, const std::string& name) { return long_double_text(L.value(name)); },
           "21-digit decimal of the stored long double")
      .def("names", [](const ConstantLedger& L) {
        std::vector<std::string> out;
        for (const auto& e : L.entries()) out.push_back(e.name);
        return out;
      })
      .def("bound", [](const ConstantLedger& L, const std::string& name) { return std::string(to_string(L.at(name).kind)); })
      .def("to_json", [](const ConstantLedger& L) { return ledger_to_json(L).dump(); });
  m.def("constant_ledger", [](int dim, double delta) { return constant_ledger(dim, delta); }, py::arg("dim"),
        py::arg("delta"));
  m.def("ledger_from_json", [](const std::string& s) { return assemble(ledger_from_json(nlohmann::json::parse(s))); },
        py::arg("text"), "assemble the chain from an upstream ledger document");

  py::class_<Density>(m, "Density")
      .def_property_readonly("dim", &Density::dim)
      .def_property_readonly("mass", &Density::mass)
      .def_property_readonly("ray_count", &Density::ray_count)
      .def_property_readonly("equivalent_radius", &Density::equivalent_radius)
      .def_property_readonly("origin", &Density::origin)
      .def("centered", &Density::centered)
      .def("to_json", [](const Density& d) { return density_to_json(d).dump(); });
  m.def("density_from_json", [](const std::string& s) { return density_from_json(nlohmann::json::parse(s)); });
  m.def("ball_density", [](const BallPair& p) { return make_ball_density(p); }, py::arg("pair"));
  m.def("perturbed_ball", [](int dim, double r0, int ell, double eps) { return perturbed_ball(dim, r0, ell, eps); },
        py::arg("dim"), py::arg("r0"), py::arg("ell"), py::arg("eps"));
  m.def("translated_ball", [](int dim, double radius, std::vector<double> shift) {
        return translated_ball(dim, radius, std::move(shift));
      }, py::arg("dim"), py::arg("radius"), py::arg("shift"));
  m.def("translate", [](const Density& d, std::vector<double> a) { return translate(d, a); }, py::arg("rho"),
        py::arg("a"));

  m.def("deficit", [](const Density& rho, double kernel_ratio) {
        const double R = rho.equivalent_radius();
        const DeficitResult r = deficit(rho, make_ball_pair(rho.dim(), R, 2.0 * kernel_ratio * R,
                                                          std::min(kernel_ratio, 1.0 - kernel_ratio)));
        return py::dict(py::arg("deficit") = r.deficit, py::arg("eps_quad") = r.quadrature_tolerance,
                        py::arg("ball_interaction") = r.ball_interaction, py::arg("rho_interaction") = r.rho_interaction);
      }, py::arg("rho"), py::arg("kernel_ratio") = 0.5, "D[rho] with R~ = 2 q R for q = kernel_ratio");
  m.def("asymmetry", [](const Density& rho) {
        const AsymmetryResult r = asymmetry(rho);
        return py::dict(py::arg("A") = r.A, py::arg("shift") = r.shift, py::arg("converged") = r.converged);
      }, py::arg("rho"));

  py::class_<CompetitorResult>(m, "CompetitorResult")
      .def_readonly("rho_tilde", &CompetitorResult::rho_tilde)
      .def_readonly("m_inner", &CompetitorResult::m_inner)
      .def_readonly("m_outer", &CompetitorResult::m_outer)
      .def_readonly("r_in", &CompetitorResult::r_in)
      .def_readonly("r_out", &CompetitorResult::r_out)
      .def_property_readonly("branch", [](const CompetitorResult& r) {
        return r.branch == CompetitorBranch::inner ? "inner" : "outer";
      });
  m.def("competitor", &competitor, py::arg("rho"), py::arg("theta"));
  m.def("verify_competitor", [](const Density& rho, const CompetitorResult& res, double theta, double tol) {
        return verify_competitor(rho, res, theta, tol).all_ok();
      }, py::arg("rho"), py::arg("result"), py::arg("theta"), py::arg("tolerance"));
  m.def("center", [](const Density& rho) {
        const CenteringResult r = center(rho);
        return py::dict(py::arg("shift") = r.shift, py::arg("residual") = r.residual, py::arg("theta") = r.theta,
                        py::arg("theta_after") = r.theta_after);
      }, py::arg("rho"));

  py::class_<CorpusItem>(m, "CorpusItem")
      .def_readonly("index", &CorpusItem::index)
      .def_readonly("rho", &CorpusItem::rho)
      .def_readonly("pair", &CorpusItem::pair)
      .def_readonly("kernel_ratio", &CorpusItem::kernel_ratio)
      .def_readonly("description", &CorpusItem::description)
      .def_property_readonly("kind", [](const CorpusItem& c) { return std::string(to_string(c.kind)); });
  m.def("corpus_item", [](int dim, std::uint64_t seed, std::size_t index, double delta) {
        CorpusSpec spec;
        spec.dim = dim;
        spec.seed = seed;
        spec.delta = delta;
        return corpus_item(spec, index);
      }, py::arg("dim"), py::arg("seed"), py::arg("index"), py::arg("delta") = 0.05);
  m.def("audit_item", [](const CorpusItem& item) {
        BallInteractionCache cache;
        const AuditRecord r = audit_item(item, cache, audit_interaction_options(item.rho.dim()));
        return py::dict(py::arg("kind") = std::string(to_string(r.kind)), py::arg("mass") = r.mass,
                        py::arg("asymmetry") = r.asymmetry, py::arg("deficit") = r.deficit,
                        py::arg("eps_quad") = r.quadrature_tolerance, py::arg("ratio") = r.ratio());
      }, py::arg("item"));

  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("task"));
  m.def("mc_intersection_volume", [](const BallPair& p, double r, std::uint64_t samples, std::uint64_t seed) {
        const OracleEstimate e = mc_intersection_volume(p, r, samples, seed);
        return py::make_tuple(e.value, e.std_error);
      }, py::arg("pair"), py::arg("r"), py::arg("samples"), py::arg("seed"));
}
