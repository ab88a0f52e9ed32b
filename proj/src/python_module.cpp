#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "cli.hpp"
#include "reflab/analysis.hpp"
#include "reflab/errors.hpp"
#include "reflab/io.hpp"
#include "reflab/projective.hpp"

namespace py = pybind11;
using namespace reflab;

namespace {

using SlicePtr = std::shared_ptr<RootSlice>;

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<std::string> coeff_strings(std::span<const Scalar> v) {
  std::vector<std::string> out;
  for (const Scalar& x : v) out.push_back(x.str());
  return out;
}

SlicePtr make_slice(const std::string& type, const std::string& file, int depth, const std::string& mode) {
  const auto m = cli::resolve_matrix(type, file, mode);
  return std::make_shared<RootSlice>(generate_slice(m.matrix, depth, m.mode, cli::cap_from_env()));
}

TruncatedOrder order_of(const SlicePtr& slice, const std::string& spec) {
  if (spec == "two-sided") {
    const auto model = AffineModel::from_matrix(slice->matrix(), slice->gram().mode());
    return two_sided_order(slice, default_two_sided_words(model));
  }
  return sort_truncation(slice, parse_order_spec(spec, slice->rank()));
}

}  // namespace

PYBIND11_MODULE(reflab, m) {
  m.doc() = "Root slices, reflection orders and certifiers for Coxeter groups";

  // Later registrations are tried first, so the base class goes first.
  py::register_exception<Error>(m, "ReflabError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SliceTooLarge>(m, "SliceTooLarge", PyExc_MemoryError);

  py::class_<RootSlice, SlicePtr>(m, "Slice")
      .def_static(
          "build",
          [](const std::string& type, int depth, const std::string& matrix_file, const std::string& mode) {
            return make_slice(type, matrix_file, depth, mode);
          },
          py::arg("type") = "universal3", py::arg("depth") = 3, py::arg("matrix_file") = "", py::arg("mode") = "",
          "Positive roots of depth <= depth for a built-in type or a matrix file.")
      .def("__len__", &RootSlice::size)
      .def_property_readonly("rank", &RootSlice::rank)
      .def_property_readonly("depth_bound", &RootSlice::depth_bound)
      .def("depth", &RootSlice::depth, py::arg("id"))
      .def(
          "coeffs", [](const RootSlice& s, RootId id) { return coeff_strings(s.coeffs(id)); }, py::arg("id"),
          "Coefficients as exact strings (\"p/q\").")
      .def(
          "lookup",
          [](const RootSlice& s, const std::vector<std::string>& v) -> std::optional<RootId> {
            Coeffs c;
            for (const auto& x : v) c.push_back(Scalar::parse(x, s.gram().mode()));
            return s.lookup(c);
          },
          py::arg("coeffs"))
      .def("roots_csv", [](const RootSlice& s) {
        std::ostringstream out;
        write_roots_csv(out, s);
        return out.str();
      });

  m.def(
      "order", [](const SlicePtr& slice, const std::string& spec) { return order_of(slice, spec).sequence(); },
      py::arg("slice"), py::arg("spec") = "lex:1,2,3", "Slice ids in order; spec as on the command line.");

  m.def(
      "verify_order",
      [](const SlicePtr& slice, const std::string& spec) {
        const auto rep = verify_reflection_order(order_of(slice, spec));
        py::dict d;
        d["roots"] = rep.roots;
        d["planes_checked"] = rep.planes_checked;
        d["violations"] = rep.violation_count();
        return d;
      },
      py::arg("slice"), py::arg("spec") = "lex:1,2,3");

  m.def(
      "render_svg",
      [](const RootSlice& slice, const std::vector<std::pair<int, std::string>>& fibers) {
        SvgOptions opts;
        for (const auto& [axis, c] : fibers) opts.fibers.push_back({axis - 1, Scalar::parse(c)});
        return render_svg(slice, opts);
      },
      py::arg("slice"), py::arg("fibers") = std::vector<std::pair<int, std::string>>{},
      "SVG picture; fibers are (axis, c) with 1-based axis and c as \"p/q\".");

  m.def(
      "certify",
      [](const std::string& lemma, int d, int D, const std::string& type) {
        const auto src = cli::resolve_matrix(type, "", "");
        const std::size_t cap = cli::cap_from_env();
        if (lemma == "c-range") return to_python(cli::lemma_c_range(src, D, cap));
        if (lemma == "density") return to_python(cli::lemma_density(src, d, D, cap));
        if (lemma == "blocks") return to_python(cli::lemma_blocks(src, d, D, cap));
        if (lemma == "stability") return to_python(cli::lemma_stability(src, d, D, cap));
        if (lemma == "char3") return to_python(cli::lemma_char3(src, d, D, cap));
        if (lemma == "two-sided") return to_python(cli::lemma_two_sided(src, D, cap));
        throw ParseError("unknown lemma " + lemma);
      },
      py::arg("lemma"), py::arg("d"), py::arg("D"), py::arg("type") = "universal3");

  m.def(
      "certify_all", [](const std::string& config) {
        return to_python(cli::certify_all(config.empty() ? cli::RunConfig{} : cli::load_config(config)));
      },
      py::arg("config") = "", "Every certifier; returns the summary dict.");
}
