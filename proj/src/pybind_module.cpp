/*
  This is pybind_module.cpp

  Python bindings for the library: matrices, groups, the
  canonical-basis table, cells, asymptotic rings, automorphisms, and
  centre reports, all reached through a Session that owns the tables
  and keeps them alive behind the references Python holds.
*/

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coxcells/session.hpp"

namespace py = pybind11;
using namespace coxcells;

namespace {

std::vector<bool> to_bools(const std::vector<char>& v) {
  return std::vector<bool>(v.begin(), v.end());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Cells, asymptotic rings, and twisted centres of finite Coxeter "
      "groups";

  py::register_exception<verdict_error>(m, "VerdictError",
                                        PyExc_RuntimeError);

  py::class_<CoxeterMatrix>(m, "CoxeterMatrix")
      .def(py::init<std::vector<std::vector<int>>>(), py::arg("entries"))
      .def_static("of_type", &CoxeterMatrix::of_type, py::arg("letter"),
                  py::arg("rank"), py::arg("bond") = 0)
      .def_property_readonly("rank", &CoxeterMatrix::rank)
      .def_property_readonly("entries", &CoxeterMatrix::entries)
      .def("m", &CoxeterMatrix::m, py::arg("s"), py::arg("t"))
      .def("key", &CoxeterMatrix::key)
      .def("known_order", &CoxeterMatrix::known_order)
      .def(py::self == py::self)
      .def("__repr__", &CoxeterMatrix::key);

  py::class_<LaurentPoly>(m, "LaurentPoly")
      .def(py::init<>())
      .def_static("constant", &LaurentPoly::constant, py::arg("n"))
      .def_static("monomial", &LaurentPoly::monomial, py::arg("coeff"),
                  py::arg("exp"))
      .def("is_zero", &LaurentPoly::is_zero)
      .def("min_deg", &LaurentPoly::min_deg)
      .def("max_deg", &LaurentPoly::max_deg)
      .def("coeff", &LaurentPoly::coeff, py::arg("exp"))
      .def("terms", &LaurentPoly::terms)
      .def("bar", &LaurentPoly::bar)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", &LaurentPoly::to_string)
      .def("__repr__", &LaurentPoly::to_string);

  py::class_<GroupTable>(m, "Group")
      .def_property_readonly("rank", &GroupTable::rank)
      .def("__len__", &GroupTable::size)
      .def_property_readonly("order", &GroupTable::size)
      .def_property_readonly("identity", &GroupTable::identity)
      .def_property_readonly("longest", &GroupTable::longest)
      .def_property_readonly("max_length", &GroupTable::max_length)
      .def("length", &GroupTable::length, py::arg("w"))
      .def("inverse", &GroupTable::inverse, py::arg("w"))
      .def("mul", &GroupTable::mul, py::arg("a"), py::arg("b"))
      .def("left", &GroupTable::left, py::arg("s"), py::arg("w"))
      .def("right", &GroupTable::right, py::arg("w"), py::arg("s"))
      .def("bruhat_leq", &GroupTable::bruhat_leq, py::arg("x"), py::arg("w"))
      .def("word", &GroupTable::word, py::arg("w"))
      .def("word_string", &GroupTable::word_string, py::arg("w"))
      .def("parse_word", &GroupTable::parse_word, py::arg("text"));

  py::class_<KLTable>(m, "KLTable")
      .def("p", &KLTable::p, py::arg("x"), py::arg("w"))
      .def("mu", &KLTable::mu, py::arg("x"), py::arg("w"))
      .def("t_mul", &KLTable::t_mul, py::arg("a"), py::arg("b"))
      .def("c_mul", &KLTable::c_mul, py::arg("x"), py::arg("y"))
      .def("h", &KLTable::h, py::arg("x"), py::arg("y"), py::arg("z"));

  py::class_<CellPartition>(m, "CellPartition")
      .def_readonly("left_of", &CellPartition::left_of)
      .def_readonly("right_of", &CellPartition::right_of)
      .def_readonly("lr_of", &CellPartition::lr_of)
      .def_readonly("left_cells", &CellPartition::left_cells)
      .def_readonly("right_cells", &CellPartition::right_cells)
      .def_readonly("lr_cells", &CellPartition::lr_cells)
      .def_property_readonly("lr_leq", [](const CellPartition& p) {
        std::vector<std::vector<bool>> rows;
        rows.reserve(p.lr_leq.size());
        for (const auto& row : p.lr_leq) rows.push_back(to_bools(row));
        return rows;
      });

  py::class_<CellInvariants>(m, "CellInvariants")
      .def_readonly("a", &CellInvariants::a)
      .def_readonly("delta", &CellInvariants::delta)
      .def_readonly("lead", &CellInvariants::lead)
      .def_property_readonly(
          "distinguished",
          [](const CellInvariants& i) { return to_bools(i.distinguished); })
      .def_readonly("a_of_lr", &CellInvariants::a_of_lr);

  py::class_<JRingTable>(m, "JRing")
      .def_property_readonly("cell", &JRingTable::cell_id)
      .def_property_readonly("a", &JRingTable::a_value)
      .def_property_readonly("members", &JRingTable::members)
      .def_property_readonly("distinguished", &JRingTable::distinguished)
      .def("rank", &JRingTable::rank, py::arg("w"))
      .def("jc", &JRingTable::jc, py::arg("x"), py::arg("y"), py::arg("z"))
      .def("gamma", &JRingTable::gamma, py::arg("x"), py::arg("y"),
           py::arg("z"))
      .def("product_terms", &JRingTable::product_terms, py::arg("x"),
           py::arg("y"))
      .def("unit", &JRingTable::unit)
      .def("mul", &JRingTable::j_mul, py::arg("a"), py::arg("b"))
      .def("tau", &JRingTable::tau, py::arg("a"))
      .def("nonzero_count", &JRingTable::nonzero_count)
      .def("constants", [](const JRingTable& j) {
        std::vector<std::tuple<Elt, Elt, Elt, long long>> out;
        j.for_each([&](Elt x, Elt y, Elt z, long long c) {
          out.emplace_back(x, y, z, c);
        });
        return out;
      });

  py::class_<OrdinaryAut>(m, "Automorphism")
      .def_readonly("name", &OrdinaryAut::name)
      .def_readonly("gen_map", &OrdinaryAut::gen_map)
      .def("__call__",
           [](const OrdinaryAut& a, Elt w) { return a(w); })
      .def("is_identity", &OrdinaryAut::is_identity)
      .def("__repr__",
           [](const OrdinaryAut& a) { return "Automorphism(" + a.name + ")"; });

  py::class_<CentreReport>(m, "CentreReport")
      .def_readonly("cell", &CentreReport::cell)
      .def_readonly("eps", &CentreReport::eps)
      .def_readonly("a", &CentreReport::a)
      .def_readonly("members", &CentreReport::members)
      .def_property_readonly(
          "in_boc0",
          [](const CentreReport& r) { return to_bools(r.in_boc0); })
      .def_readonly("dim_hom", &CentreReport::dim_hom)
      .def_readonly("psi", &CentreReport::psi)
      .def_readonly("total_dim", &CentreReport::total_dim)
      .def_readonly("verdicts", &CentreReport::verdicts)
      .def("all_verdicts_pass", &CentreReport::all_verdicts_pass);

  py::class_<Session>(m, "Session")
      .def(py::init([](const CoxeterMatrix& matrix, int threads,
                       long long cap, const std::string& cache_dir) {
             return new Session(SessionConfig{matrix, threads,
                                              static_cast<Elt>(cap),
                                              cache_dir});
           }),
           py::arg("matrix"), py::arg("threads") = 1,
           py::arg("cap") = 200000, py::arg("cache_dir") = "")
      .def_property_readonly("matrix", &Session::matrix)
      .def("group", &Session::group,
           py::return_value_policy::reference_internal)
      .def("kl", &Session::kl, py::return_value_policy::reference_internal)
      .def("cells", &Session::cells,
           py::return_value_policy::reference_internal)
      .def("invariants", &Session::invariants,
           py::return_value_policy::reference_internal)
      .def("jring", &Session::jring, py::arg("cell"),
           py::return_value_policy::reference_internal)
      .def("automorphisms",
           [](Session& s) { return s.automorphisms(); })
      .def("eps", [](Session& s, const std::string& name) { return s.eps(name); },
           py::arg("name"))
      .def("boc0",
           [](Session& s, int cell, const std::string& eps_name) {
             return boc0(s.group(), s.eps(eps_name), s.cells(), cell);
           },
           py::arg("cell"), py::arg("eps") = "id")
      .def("centre", &Session::centre, py::arg("cell"),
           py::arg("eps") = "id")
      .def("loaded_from_cache", &Session::loaded_from_cache,
           py::arg("kind"));
}
