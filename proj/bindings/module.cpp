#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "korovkin/analysis.hpp"
#include "korovkin/choquet.hpp"
#include "korovkin/cli.hpp"
#include "korovkin/parse.hpp"

namespace py = pybind11;
using namespace korovkin;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Choquet-type operator lab: grids, capacities, operators, checks";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Grid>(m, "Grid")
        .def(py::init<double, double, std::size_t>(), py::arg("a"), py::arg("b"), py::arg("m"))
        .def_readonly("a", &Grid::a)
        .def_readonly("b", &Grid::b)
        .def_readonly("m", &Grid::m)
        .def("width", &Grid::width)
        .def("midpoint", &Grid::midpoint)
        .def("__eq__", [](const Grid& g, const Grid& o) { return g == o; });

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init<Grid, std::vector<double>>(), py::arg("grid"), py::arg("values"))
        .def_readonly("grid", &GridFunction::grid)
        .def_readonly("values", &GridFunction::values)
        .def_property_readonly("mask",
                               [](const GridFunction& f) {
                                   std::vector<bool> out(f.mask.begin(), f.mask.end());
                                   return out;
                               })
        .def("__len__", &GridFunction::size);

    py::class_<FunctionSpec>(m, "FunctionSpec")
        .def_static("parse", &parse_function, py::arg("text"))
        .def("eval", py::overload_cast<double>(&FunctionSpec::eval, py::const_), py::arg("x"))
        .def("__str__", [](const FunctionSpec& f) { return to_string(f); });

    py::class_<Capacity>(m, "Capacity")
        .def_static("parse", &parse_capacity, py::arg("text"))
        .def("__call__", [](const Capacity& c, double t) { return c(t); })
        .def("__str__", [](const Capacity& c) { return to_string(c); });

    py::class_<OperatorSpec>(m, "OperatorSpec")
        .def_static("parse", &parse_operator, py::arg("text"))
        .def_readwrite("n", &OperatorSpec::n)
        .def_readwrite("allow_large_2d", &OperatorSpec::allow_large_2d)
        .def("__str__", [](const OperatorSpec& s) { return to_string(s); });

    py::class_<PropertyReport>(m, "PropertyReport")
        .def_readonly("property", &PropertyReport::property)
        .def_readonly("trials", &PropertyReport::trials)
        .def_readonly("worst_margin", &PropertyReport::worst_margin)
        .def_readonly("passed", &PropertyReport::pass)
        .def_readonly("witness", &PropertyReport::witness);

    py::class_<ConvergenceRow>(m, "ConvergenceRow")
        .def_readonly("n", &ConvergenceRow::n)
        .def_readonly("error", &ConvergenceRow::error);

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("family", &ConvergenceReport::family)
        .def_readonly("function_id", &ConvergenceReport::function_id)
        .def_readonly("rows", &ConvergenceReport::rows);

    py::class_<HarnessResult>(m, "HarnessResult")
        .def_property_readonly("verdict",
                               [](const HarnessResult& r) { return to_string(r.verdict); })
        .def_readonly("witness", &HarnessResult::witness)
        .def_readonly("stage1", &HarnessResult::stage1)
        .def_readonly("stage2", &HarnessResult::stage2);

    m.def("sample",
          [](const std::string& fn, const Grid& grid) { return sample(parse_function(fn), grid); },
          py::arg("fn"), py::arg("grid"));

    m.def("choquet_integral",
          [](const std::vector<double>& values, double cell_width, const std::string& cap) {
              return choquet_integral(CellBlock(values, cell_width), parse_capacity(cap));
          },
          py::arg("values"), py::arg("cell_width"), py::arg("cap") = "id");

    m.def("apply_operator",
          [](const std::string& op, const GridFunction& f) {
              return make_operator(parse_operator(op))(f);
          },
          py::arg("op"), py::arg("fn"));

    m.def("check_properties",
          [](const std::string& op, std::size_t cells, int trials, std::uint64_t seed,
             bool positive_cone) {
              OperatorSpec spec = parse_operator(op);
              Grid grid = spec.family == OperatorSpec::Family::Szasz ? Grid(0.0, spec.x_max, cells)
                                                                    : Grid(0.0, 1.0, cells);
              CheckOptions opt;
              opt.trials = trials;
              opt.seed = seed;
              opt.positive_cone = positive_cone;
              GridOperator T = make_operator(spec);
              return std::vector<PropertyReport>{
                  check_sublinearity(T, grid, opt),    check_translatability(T, grid, opt),
                  check_monotonicity(T, grid, opt),    check_comonotone_additivity(T, grid, opt),
                  check_order_lipschitz(T, grid, opt),
              };
          },
          py::arg("op"), py::arg("cells") = 50, py::arg("trials") = 200, py::arg("seed") = 1,
          py::arg("positive_cone") = false);

    m.def("korovkin_verdict",
          [](const std::string& op, const std::string& domain, const std::vector<int>& ns,
             const std::string& mode, std::size_t cells, const std::vector<std::string>& suite) {
              OperatorSpec spec = parse_operator(op);
              DomainKind kind = parse_domain_kind(domain);
              ScanConfig config;
              config.ns = ns;
              config.mode = parse_mode(mode);
              Grid grid = spec.family == OperatorSpec::Family::Szasz ? Grid(0.0, spec.x_max, cells)
                                                                    : Grid(0.0, 1.0, cells);
              std::vector<FunctionSpec> fns;
              for (const std::string& s : suite) fns.push_back(parse_function(s));
              if (fns.empty()) {
                  fns.push_back(FunctionSpec::step({0.5}, {0.0, 1.0}));
                  fns.push_back(FunctionSpec::monomial(3));
              }
              return korovkin_harness(spec, kind, grid, config, fns);
          },
          py::arg("op"), py::arg("domain") = "cube1",
          py::arg("ns") = std::vector<int>{10, 50, 200}, py::arg("mode") = "pointwise",
          py::arg("cells") = 20, py::arg("suite") = std::vector<std::string>{});

    m.def("run_cli", [](const std::vector<std::string>& args) { return korovkin::cli::run(args); },
          py::arg("args"));
}
