#include "cellcheck/cli.hpp"
#include "cellcheck/comparison.hpp"
#include "cellcheck/errors.hpp"
#include "cellcheck/evaluator.hpp"
#include "cellcheck/formula.hpp"
#include "cellcheck/io.hpp"
#include "cellcheck/report.hpp"
#include "cellcheck/rules.hpp"
#include "cellcheck/scenario.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace cellcheck;

namespace {

struct PyWorkbook {
    Workbook workbook;
    std::vector<std::string> warnings;
};

RuleConfig resolve_config(const std::string& preset, const std::optional<std::filesystem::path>& config_file) {
    if (config_file) return load_config(*config_file);
    auto config = RuleConfig::preset(preset);
    if (!config) throw py::value_error("unknown preset '" + preset + "'");
    return *config;
}

ReportFormat resolve_format(const std::string& name) {
    auto format = parse_report_format(name);
    if (!format) throw py::value_error("unknown report format '" + name + "'");
    return *format;
}

SheetCell sheet_cell(const std::string& text) {
    auto cell = parse_sheet_cell(text);
    if (!cell) throw py::value_error("malformed cell address '" + text + "'");
    return *cell;
}

CellAddress address_in(const Workbook& workbook, const std::string& text) {
    auto address = resolve(workbook, sheet_cell(text));
    if (!address) throw py::value_error("no such cell '" + text + "'");
    return *address;
}

py::object to_python(const CellValue& value) {
    if (value.is_number()) return py::float_(value.as_number());
    if (value.is_text()) return py::str(value.as_text());
    if (value.is_boolean()) return py::bool_(value.as_boolean());
    return py::str(value.as_error());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spreadsheet inspection: rules, scenarios and reports.";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<FormatError>(m, "FormatError", base);
    py::register_exception<IoError>(m, "IoError", base);

    m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;

    py::class_<PyWorkbook>(m, "Workbook")
        .def_property_readonly("sheet_names",
                               [](const PyWorkbook& w) {
                                   std::vector<std::string> names;
                                   for (const auto& sheet : w.workbook.worksheets()) names.push_back(sheet.name());
                                   return names;
                               })
        .def_property_readonly("cell_count", [](const PyWorkbook& w) { return non_empty_cell_count(w.workbook); })
        .def_property_readonly("formula_count", [](const PyWorkbook& w) { return formula_count(w.workbook); })
        .def_readonly("warnings", &PyWorkbook::warnings)
        .def("to_fixture", [](const PyWorkbook& w) { return write_fixture(w.workbook); })
        .def(
            "evaluate",
            [](const PyWorkbook& w, const std::string& cell) {
                return to_python(evaluate_cell(w.workbook, address_in(w.workbook, cell)));
            },
            py::arg("cell"), "Evaluate one cell, e.g. 'Summary!B1'. Errors come back as their code text.")
        .def("__repr__", [](const PyWorkbook& w) {
            return "<Workbook sheets=" + std::to_string(w.workbook.sheet_count()) +
                   " cells=" + std::to_string(non_empty_cell_count(w.workbook)) + ">";
        });

    m.def(
        "load",
        [](const std::filesystem::path& path) {
            PyWorkbook w;
            w.workbook = load_workbook(path, w.warnings);
            return w;
        },
        py::arg("path"), "Load an .xlsx package or a text fixture, chosen by extension.");
    m.def(
        "parse_fixture", [](const std::string& text) { return PyWorkbook{parse_fixture(text), {}}; }, py::arg("text"));

    m.def("presets", [] { return std::vector<std::string>{"config1", "config2"}; });

    m.def(
        "inspect",
        [](const PyWorkbook& w, const std::string& preset, const std::optional<std::filesystem::path>& config_file,
           const std::string& format) {
            return write_report(run_inspection(w.workbook, resolve_config(preset, config_file)),
                                resolve_format(format));
        },
        py::arg("workbook"), py::arg("preset") = "config1", py::arg("config_file") = py::none(),
        py::arg("format") = "json");

    m.def(
        "metrics",
        [](const PyWorkbook& w, const std::string& format) {
            return write_report(measure(w.workbook), resolve_format(format));
        },
        py::arg("workbook"), py::arg("format") = "json");

    m.def(
        "compare",
        [](const PyWorkbook& before, const PyWorkbook& after, const std::string& preset,
           const std::optional<std::filesystem::path>& config_file, const std::string& format) {
            return write_report(compare_workbooks(before.workbook, after.workbook, resolve_config(preset, config_file)),
                                resolve_format(format));
        },
        py::arg("before"), py::arg("after"), py::arg("preset") = "config1", py::arg("config_file") = py::none(),
        py::arg("format") = "json");

    m.def(
        "run_scenarios",
        [](const PyWorkbook& w, const std::string& scenarios, const std::string& format) {
            return write_report(run_all(w.workbook, parse_scenarios(scenarios)), resolve_format(format));
        },
        py::arg("workbook"), py::arg("scenarios"), py::arg("format") = "json",
        "Run scenarios given as scenario-file text.");

    m.def(
        "normalize_formula", [](const std::string& formula) { return serialize(parse_formula(formula)); },
        py::arg("formula"));
    m.def(
        "operation_count", [](const std::string& formula) { return operation_count(parse_formula(formula)); },
        py::arg("formula"));
    m.def(
        "nesting_depth", [](const std::string& formula) { return max_nesting_depth(parse_formula(formula)); },
        py::arg("formula"));
    m.def(
        "r1c1",
        [](const std::string& formula, const std::string& origin) {
            SheetCell cell = sheet_cell(origin);
            return normalize_r1c1(parse_formula(formula), CellAddress{0, cell.column, cell.row});
        },
        py::arg("formula"), py::arg("origin"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in process; returns (exit_code, stdout, stderr).");
}
