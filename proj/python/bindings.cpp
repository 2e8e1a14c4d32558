// Python bindings for the main library operations.
#include "projdim/assign.hpp"
#include "projdim/bounds.hpp"
#include "projdim/bp.hpp"
#include "projdim/formats.hpp"
#include "projdim/reconstruct.hpp"
#include "projdim/solve.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace projdim;

namespace {

py::int_ to_py(const gf::BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

std::vector<gf::Vector> basis_rows(const gf::Subspace& s) {
  std::vector<gf::Vector> rows;
  for (std::size_t r = 0; r < s.dim(); ++r) {
    const auto row = s.basis().row(r);
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

Family family_arg(const std::string& name) { return parse_family(name); }

SearchBudget budget(std::size_t d_max, std::uint64_t node_limit, double seconds) {
  SearchBudget b{d_max, node_limit, seconds};
  b.validate();
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Projective dimension toolkit";
  m.attr("__version__") = "0.1.0";

  py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_OverflowError);
  py::register_exception<formats::FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::enum_<Side>(m, "Side").value("left", Side::left).value("right", Side::right);

  py::class_<gf::Subspace>(m, "Subspace")
      .def(py::init<gf::Element, std::size_t>(), py::arg("q"), py::arg("ambient"))
      .def_static("span", &gf::Subspace::span, py::arg("q"), py::arg("ambient"), py::arg("vectors"))
      .def_static("full", &gf::Subspace::full, py::arg("q"), py::arg("ambient"))
      .def_property_readonly("q", &gf::Subspace::field)
      .def_property_readonly("ambient", &gf::Subspace::ambient)
      .def_property_readonly("dim", &gf::Subspace::dim)
      .def_property_readonly("basis", &basis_rows)
      .def("contains", [](const gf::Subspace& s, const gf::Vector& v) { return s.contains(v); })
      .def("__eq__", [](const gf::Subspace& a, const gf::Subspace& b) { return a == b; })
      .def("__repr__", &gf::Subspace::to_string);
  m.def("intersect", &gf::intersect);
  m.def("intersection_dim", &gf::intersection_dim);
  m.def("gaussian_coeff", [](std::uint64_t n, std::uint64_t k, std::uint64_t q) { return to_py(gf::gaussian_coeff(n, k, q)); });
  m.def("enumerate_subspaces", [](std::size_t d, gf::Element q) { return gf::enumerate_subspaces(d, q, std::nullopt); },
        py::arg("d"), py::arg("q") = 2);

  py::class_<BooleanFunction>(m, "BooleanFunction")
      .def_property_readonly("name", &BooleanFunction::name)
      .def_property_readonly("n", &BooleanFunction::n)
      .def("__call__", &BooleanFunction::operator(), py::arg("x"), py::arg("y"))
      .def("truth_table", &BooleanFunction::truth_table)
      .def_static("from_table", &BooleanFunction::from_table, py::arg("name"), py::arg("n"), py::arg("table"))
      .def("__or__", [](const BooleanFunction& a, const BooleanFunction& b) { return a | b; })
      .def("__and__", [](const BooleanFunction& a, const BooleanFunction& b) { return a & b; });
  m.def("make_named", [](const std::string& family, std::size_t n) { return make_named(family_arg(family), n); },
        py::arg("family"), py::arg("n"));
  m.def("make_si", &make_si, py::arg("d"));
  m.def("function_from_spec", &formats::function_from_spec, py::arg("spec"));

  py::class_<BipartiteGraph>(m, "BipartiteGraph")
      .def(py::init<std::size_t, std::size_t>(), py::arg("left"), py::arg("right"))
      .def_property_readonly("left_size", &BipartiteGraph::left_size)
      .def_property_readonly("right_size", &BipartiteGraph::right_size)
      .def("has_edge", &BipartiteGraph::has_edge)
      .def("set_edge", &BipartiteGraph::set_edge, py::arg("u"), py::arg("v"), py::arg("present") = true)
      .def("edge_count", &BipartiteGraph::edge_count)
      .def("edges", &BipartiteGraph::edges)
      .def("__eq__", [](const BipartiteGraph& a, const BipartiteGraph& b) { return a == b; });
  m.def("realization", &realization, py::arg("f"));
  m.def("make_pd_graph", &make_pd_graph, py::arg("d"), py::arg("q") = 2);

  py::class_<ProjectiveAssignment>(m, "ProjectiveAssignment")
      .def(py::init([](gf::Element q, std::size_t ambient, std::vector<gf::Subspace> left, std::vector<gf::Subspace> right) {
             ProjectiveAssignment phi{q, ambient, std::move(left), std::move(right)};
             phi.validate();
             return phi;
           }),
           py::arg("q"), py::arg("ambient"), py::arg("left"), py::arg("right"))
      .def_readonly("q", &ProjectiveAssignment::q)
      .def_readonly("ambient", &ProjectiveAssignment::ambient)
      .def_readonly("left", &ProjectiveAssignment::left)
      .def_readonly("right", &ProjectiveAssignment::right);
  m.def("verify_realizes", &verify_realizes, py::arg("phi"), py::arg("graph"));
  m.def("max_intersection_dim", &max_intersection_dim, py::arg("phi"), py::arg("graph"));
  m.def("realized_graph", py::overload_cast<const ProjectiveAssignment&>(&realized_graph));
  m.def("natural_pd_assignment", &natural_pd_assignment, py::arg("d"), py::arg("q") = 2);
  m.def("or_compose", &or_compose);
  m.def("and_compose", &and_compose);

  py::class_<BitwiseAssignment>(m, "BitwiseAssignment")
      .def(py::init<std::size_t, std::size_t>(), py::arg("n"), py::arg("ambient"))
      .def_property_readonly("n", &BitwiseAssignment::n)
      .def_property_readonly("ambient", &BitwiseAssignment::ambient)
      .def("literal", &BitwiseAssignment::literal, py::arg("side"), py::arg("index"), py::arg("value"))
      .def("set_literal", &BitwiseAssignment::set_literal, py::arg("side"), py::arg("index"), py::arg("value"),
           py::arg("space"))
      .def("induced", &BitwiseAssignment::induced);

  py::class_<BitpdimReport>(m, "BitpdimReport")
      .def_readonly("realizes", &BitpdimReport::realizes)
      .def_readonly("difference_spanned", &BitpdimReport::difference_spanned)
      .def_readonly("left_direct", &BitpdimReport::left_direct)
      .def_readonly("right_direct", &BitpdimReport::right_direct)
      .def_readonly("diagnostics", &BitpdimReport::diagnostics)
      .def("ok", &BitpdimReport::ok);
  m.def("verify_bitpdim", &verify_bitpdim, py::arg("assignment"), py::arg("f"));

  py::class_<BranchingProgram>(m, "BranchingProgram")
      .def_property_readonly("n", &BranchingProgram::n)
      .def_property_readonly("size", &BranchingProgram::size)
      .def("__call__", &BranchingProgram::evaluate, py::arg("x"), py::arg("y"));
  m.def("build_named", [](const std::string& family, std::size_t n) { return build_named(family_arg(family), n); },
        py::arg("family"), py::arg("n"));
  m.def("build_from_table", &build_from_table, py::arg("f"));
  m.def("read_program", &formats::read_program, py::arg("text"));
  m.def("write_program", &formats::write_program, py::arg("program"));
  m.def("pudlak_rodl_transform", &pudlak_rodl_transform, py::arg("program"), py::arg("q") = 2);
  m.def("subdivide_for_bitpdim", [](const BranchingProgram& bp) { return subdivide_for_bitpdim(bp).assignment; },
        py::arg("program"));

  m.def("evaluate_via_cycle", &evaluate_via_cycle, py::arg("assignment"), py::arg("x"), py::arg("y"));
  m.def("evaluate_via_intersection", &evaluate_via_intersection, py::arg("assignment"), py::arg("x"), py::arg("y"));

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("status", [](const SolveResult& r) { return status_name(r.status); })
      .def_readonly("value", &SolveResult::value)
      .def_property_readonly("nodes", [](const SolveResult& r) { return r.stats.nodes; })
      .def_property_readonly("refuted", [](const SolveResult& r) { return r.stats.refuted; })
      .def_property_readonly("assignment", [](const SolveResult& r) -> py::object {
        if (const auto* phi = std::get_if<ProjectiveAssignment>(&r.witness)) return py::cast(*phi);
        if (const auto* sa = std::get_if<StandardAssignment>(&r.witness)) return py::cast(sa->to_projective());
        return py::none();
      });
  m.def("exact_pd",
        [](const BipartiteGraph& g, gf::Element q, std::size_t d_max, std::uint64_t nodes, double seconds) {
          return exact_pd(g, q, budget(d_max, nodes, seconds));
        },
        py::arg("graph"), py::arg("q") = 2, py::arg("d_max") = 4, py::arg("node_limit") = 200'000'000,
        py::arg("time_limit") = 600.0);
  m.def("exact_upd",
        [](const BipartiteGraph& g, gf::Element q, std::size_t d_max, std::uint64_t nodes, double seconds) {
          return exact_upd(g, q, budget(d_max, nodes, seconds));
        },
        py::arg("graph"), py::arg("q") = 2, py::arg("d_max") = 4, py::arg("node_limit") = 200'000'000,
        py::arg("time_limit") = 600.0);
  m.def("exact_biclique", [](const BipartiteGraph& g, bool disjoint) { return exact_biclique(g, disjoint); },
        py::arg("graph"), py::arg("disjoint") = false);
  m.def("spd", [](const BipartiteGraph& g) { return spd(g); }, py::arg("graph"));
  m.def("uspd", [](const BipartiteGraph& g) { return uspd(g); }, py::arg("graph"));

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("kind", &BoundReport::kind)
      .def_readonly("target", &BoundReport::target)
      .def_readonly("value", &BoundReport::value)
      .def_property_readonly("quantities", [](const BoundReport& r) {
        py::dict d;
        for (const auto& [k, v] : r.quantities) d[py::str(k)] = v;
        return d;
      })
      .def_property_readonly("block_counts", [](const BoundReport& r) {
        std::vector<std::size_t> counts;
        for (const auto& b : r.blocks) counts.push_back(b.count);
        return counts;
      })
      .def_readonly("notes", &BoundReport::notes);
  m.def("upd_rank_bound", py::overload_cast<const BipartiteGraph&, gf::Element>(&upd_rank_bound), py::arg("graph"),
        py::arg("q") = 2);
  m.def("pd_count_bound", &pd_count_bound, py::arg("graph"), py::arg("q") = 2);
  m.def("nechiporuk_bitpdim_bound", &nechiporuk_bitpdim_bound, py::arg("f"), py::arg("blocks"));
  m.def("si_restriction_count", &si_restriction_count, py::arg("d"), py::arg("row"));
  m.def("pd_rank", [](std::size_t d) {
    const auto r = pd_rank_report(d);
    return py::make_tuple(r.vertices, r.rank, to_py(r.threshold));
  }, py::arg("d"));

  m.def("read_assignment", &formats::read_assignment, py::arg("text"));
  m.def("write_assignment", &formats::write_assignment, py::arg("phi"));
}
