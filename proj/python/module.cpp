#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tauttrack/cli.hpp"
#include "tauttrack/corpus.hpp"
#include "tauttrack/surgery.hpp"

namespace py = pybind11;
using namespace tauttrack;

namespace {

void bind_triangulation(py::module_& m) {
  py::class_<Violation>(m, "Violation")
      .def_readonly("kind", &Violation::kind)
      .def_readonly("location", &Violation::location)
      .def_readonly("detail", &Violation::detail)
      .def("__repr__", [](const Violation& v) { return "<Violation " + v.kind + " at " + v.location + ">"; });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("violations", &ValidationReport::violations)
      .def_readonly("orientable", &ValidationReport::orientable)
      .def("ok", &ValidationReport::ok);

  py::class_<Triangulation>(m, "Triangulation")
      .def("__len__", &Triangulation::size)
      .def("__str__", [](const Triangulation& t) { return serialize_triangulation(t); })
      .def_static("parse", [](const std::string& text) { return parse_triangulation(text); });

  m.def("parse_triangulation", [](const std::string& text) { return parse_triangulation(text); });
  m.def("serialize_triangulation", &serialize_triangulation);
  m.def("validate_triangulation", &validate_triangulation);
  m.def("is_orientable", &is_orientable);
  m.def("canonical_form", &canonical_form);
}

void bind_taut(py::module_& m) {
  py::class_<TautStructure>(m, "TautStructure")
      .def(py::init([](std::vector<int> pairs) { return TautStructure{std::move(pairs)}; }))
      .def_readonly("pi_pair", &TautStructure::pi_pair)
      .def("__eq__", [](const TautStructure& a, const TautStructure& b) { return a == b; })
      .def("__str__", [](const TautStructure& t) { return serialize_taut(t); });

  m.def("pi_pair_name", &pi_pair_name);
  m.def("enumerate_taut", &enumerate_taut);
  m.def("parse_taut", [](const std::string& text, int tets) { return parse_taut(text, tets); });
  m.def("serialize_taut", &serialize_taut);
  m.def(
      "verify_taut",
      [](const Triangulation& tri, const TautStructure& taut) {
        std::vector<std::pair<int, int>> out;
        for (const auto& f : verify_taut(tri, taut)) out.emplace_back(f.edge_class, f.pi_count);
        return out;
      },
      "(edge class, pi count) for every edge class without exactly two pi angles");

  py::class_<TautTriangulation>(m, "TautTriangulation")
      .def(py::init<Triangulation, TautStructure>())
      .def_property_readonly("tri", &TautTriangulation::tri)
      .def_property_readonly("taut", &TautTriangulation::taut)
      .def("__len__", &TautTriangulation::size);

  py::class_<Coorientation>(m, "Coorientation")
      .def_readonly("sign", &Coorientation::sign)
      .def("__eq__", [](const Coorientation& a, const Coorientation& b) { return a == b; });

  m.def("detect_transverse_taut", &detect_transverse_taut);
  m.def("solve_coorientation_parity", &solve_coorientation_parity);
  m.def("verify_coorientation", &verify_coorientation);
  m.def("parse_coorientation",
        [](const std::string& text, const TautTriangulation& tt) { return parse_coorientation(text, tt.comb()); });
  m.def("serialize_coorientation",
        [](const Coorientation& c, const TautTriangulation& tt) { return serialize_coorientation(c, tt.comb()); });

  py::class_<TransverseTaut>(m, "TransverseTaut")
      .def(py::init<TautTriangulation, Coorientation>())
      .def_property_readonly("tt", &TransverseTaut::tt)
      .def_property_readonly("coor", &TransverseTaut::coor)
      .def("bottom_edge", &TransverseTaut::bottom_edge)
      .def("is_lower", &TransverseTaut::is_lower);

  py::class_<CoverTriangulation>(m, "CoverTriangulation")
      .def_readonly("tri", &CoverTriangulation::tri)
      .def_readonly("taut", &CoverTriangulation::taut)
      .def_readonly("coor", &CoverTriangulation::coor)
      .def_readonly("base", &CoverTriangulation::base)
      .def_readonly("component_count", &CoverTriangulation::component_count);

  m.def("build_double_cover", [](const TautTriangulation& tt) { return build_double_cover(tt); });
}

void bind_loops(py::module_& m) {
  py::class_<DualLoop>(m, "DualLoop")
      .def("__len__", &DualLoop::size)
      .def("__str__", [](const DualLoop& l) { return serialize_loop(l); });
  py::class_<NormalLoop>(m, "NormalLoop")
      .def("__len__", &NormalLoop::size)
      .def("__str__", [](const NormalLoop& l) { return serialize_loop(l); });

  m.def("parse_dual_loop", [](const std::string& text) { return parse_dual_loop(text); });
  m.def("parse_normal_loop", [](const std::string& text) { return parse_normal_loop(text); });
  m.def("check_vertical", &check_vertical);
  m.def("check_normal", &check_normal);

  py::class_<RaisedArc>(m, "RaisedArc")
      .def_readonly("tet", &RaisedArc::tet)
      .def_readonly("entry_face", &RaisedArc::entry_face)
      .def_readonly("exit_face", &RaisedArc::exit_face)
      .def_property_readonly("type", [](const RaisedArc& a) { return raised_type_name(a.type); })
      .def_readonly("vertex_crossing", &RaisedArc::vertex_crossing)
      .def_readonly("lowering", &RaisedArc::lowering);
  py::class_<RaisedCurve>(m, "RaisedCurve").def_readonly("arcs", &RaisedCurve::arcs);

  m.def("raise_loop", &raise_loop);
  m.def("lift_normal_loop", [](const TautTriangulation& tt, const CoverTriangulation& cover, const NormalLoop& loop) {
    return lift_loop(tt, cover, loop);
  });
}

void bind_diagrams(py::module_& m) {
  py::class_<DiagramSpec>(m, "DiagramSpec")
      .def_readonly("stops", &DiagramSpec::stops)
      .def("__str__", [](const DiagramSpec& s) { return serialize_diagram(s); });
  m.def("parse_diagram", [](const std::string& text) { return parse_diagram(text); });

  py::class_<DiskDiagram>(m, "DiskDiagram")
      .def_static(
          "build", [](const DiagramSpec& spec, const TautTriangulation* tt) { return DiskDiagram::build(spec, tt); },
          py::arg("spec"), py::arg("tt") = nullptr)
      .def_property_readonly("spec", &DiskDiagram::spec)
      .def_property_readonly("stop_count", &DiskDiagram::stop_count)
      .def_property_readonly("switch_count", &DiskDiagram::switch_count)
      .def_property_readonly("branch_count", &DiskDiagram::branch_count)
      .def_property_readonly("region_count", &DiskDiagram::region_count)
      .def("region_name", &DiskDiagram::region_name);

  py::class_<RegionInfo>(m, "RegionInfo")
      .def_readonly("region", &RegionInfo::region)
      .def_readonly("euler", &RegionInfo::euler)
      .def_readonly("corners", &RegionInfo::corners)
      .def_readonly("cusps", &RegionInfo::cusps)
      .def_readonly("index", &RegionInfo::index, "quarter units")
      .def_property_readonly("kind", [](const RegionInfo& r) { return region_kind_name(r.kind); });

  m.def("region_census", &region_census);
  m.def("total_index", [](const DiskDiagram& dd) { return audit_total_index(dd).total; }, "quarter units");
  m.def("audit_minimality", &audit_minimality);
  m.def("index_string", &index_string);

  py::class_<MinBigonPush>(m, "MinBigonPush")
      .def_readonly("diagram", &MinBigonPush::diagram)
      .def_readonly("site", &MinBigonPush::site)
      .def_readonly("loop", &MinBigonPush::loop)
      .def_readonly("boundary_consistent", &MinBigonPush::boundary_consistent);
  m.def(
      "push_min_bigon",
      [](const DiskDiagram& dd, int region, const TransverseTaut& tv, const NormalLoop* gamma) {
        return push_min_bigon(dd, region, tv, gamma);
      },
      py::arg("diagram"), py::arg("region"), py::arg("tv"), py::arg("gamma") = nullptr);
  m.def("min_bigons", [](const DiskDiagram& dd, const TransverseTaut& tv) {
    std::vector<int> out;
    for (const auto& tag : pull_back_orientation(dd, tv).bigons)
      if (!tag.max) out.push_back(tag.region);
    return out;
  });

  py::class_<Refutation>(m, "Refutation")
      .def_property_readonly("kind", [](const Refutation& r) { return loop_kind_name(r.kind); })
      .def_property_readonly("verdict", [](const Refutation& r) { return verdict_name(r.verdict); })
      .def_readonly("stage", &Refutation::stage)
      .def_readonly("location", &Refutation::location)
      .def_readonly("reason", &Refutation::reason)
      .def_readonly("findings", &Refutation::findings)
      .def_readonly("transcript", &Refutation::transcript)
      .def_readonly("pushes", &Refutation::pushes);
  m.def(
      "refute_vertical",
      [](const DiskDiagram& dd, const TautTriangulation& tt, const DualLoop* loop) {
        return refute_certificate(dd, tt, loop);
      },
      py::arg("diagram"), py::arg("tt"), py::arg("loop") = nullptr);
  m.def("refute_normal", [](const DiskDiagram& dd, const TransverseTaut& tv, const NormalLoop& gamma) {
    return refute_certificate(dd, tv, gamma);
  });
}

void bind_corpus(py::module_& m) {
  m.def(
      "census",
      [](std::uint64_t seed, int max_tets) {
        CensusBounds b;
        b.max_tets = max_tets;
        b.exhaustive_tets = std::min(2, max_tets);
        std::vector<std::pair<std::string, Triangulation>> out;
        for (auto& e : census(seed, b)) out.emplace_back(std::move(e.name), std::move(e.tri));
        return out;
      },
      py::arg("seed") = 1, py::arg("max_tets") = 4, "(name, triangulation) pairs up to isomorphism");
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "tauttrack");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        auto res = cli::run(cli::parse_args(static_cast<int>(argv.size()), argv.data()));
        return py::make_tuple(res.status, res.report);
      },
      "Runs a driver command; returns (exit status, report).");
}

}  // namespace

PYBIND11_MODULE(_tauttrack, m) {
  m.doc() = "Taut ideal triangulations, train tracks and disk diagrams";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  bind_triangulation(m);
  bind_taut(m);
  bind_loops(m);
  bind_diagrams(m);
  bind_corpus(m);
}
