#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ringlab/builder.hpp"
#include "ringlab/errors.hpp"
#include "ringlab/labcli.hpp"

namespace py = pybind11;
using namespace ringlab;

namespace {

Limits make_limits(u64 module_cutoff, u64 hom_cutoff, u64 lattice_cutoff) {
  Limits lim = Limits::from_env();
  if (module_cutoff) lim.module_cutoff = module_cutoff;
  if (hom_cutoff) lim.hom_cutoff = hom_cutoff;
  if (lattice_cutoff) lim.lattice_cutoff = lattice_cutoff;
  return lim;
}

py::object to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(to_py(item));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = to_py(value);
      return out;
    }
    default:
      return py::none();
  }
}

Corpus corpus_from_arg(const std::optional<std::vector<std::string>>& specs) {
  if (!specs) return default_corpus();
  Corpus corpus;
  for (const std::string& spec : *specs) {
    corpus.rings.push_back(build_ring(spec));
    corpus.specs.push_back(spec);
  }
  if (corpus.rings.empty()) fail(ErrorKind::ParseError, "corpus is empty");
  return corpus;
}

i64 millis_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               t0)
      .count();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact computations with finite rings, their modules, and the torsion theory "
            "generated by the small modules.";
  m.attr("__version__") = "0.1.0";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::ParseError:
        case ErrorKind::UnknownSuite:
          PyErr_SetString(PyExc_ValueError, e.what());
          break;
        case ErrorKind::IoError:
          PyErr_SetString(PyExc_OSError, e.what());
          break;
        default:
          PyErr_SetString(PyExc_RuntimeError, e.what());
      }
    }
  });

  m.def("default_corpus", [] { return default_corpus().specs; },
        "Ring specs of the built-in corpus, in order.");

  m.def("suite_ids", &all_suite_ids, "Identifiers of the theorem suites, in order.");

  m.def("predicate_names", &predicate_names, "Names usable in scan predicates.");

  m.def("additive_description", [](const Vec& orders) { return additive_desc(orders); },
        py::arg("orders"), "Cyclic decomposition of the additive group with the given orders.");

  m.def(
      "analyze",
      [](const std::string& spec, u64 module_cutoff, u64 hom_cutoff, u64 lattice_cutoff) {
        auto t0 = std::chrono::steady_clock::now();
        RingReport rep = analyze_ring(spec, make_limits(module_cutoff, hom_cutoff, lattice_cutoff));
        return to_py(nlohmann::json::parse(report_json(rep, millis_since(t0))));
      },
      py::arg("spec"), py::arg("module_cutoff") = 0, py::arg("hom_cutoff") = 0,
      py::arg("lattice_cutoff") = 0,
      "Classify one ring and report its torsion-theory verdict as a dict.");

  m.def(
      "check",
      [](std::optional<std::vector<std::string>> suites,
         std::optional<std::vector<std::string>> corpus, u64 module_cutoff, u64 hom_cutoff,
         u64 lattice_cutoff) {
        Corpus rings = corpus_from_arg(corpus);
        std::vector<std::string> ids = suites ? *suites : all_suite_ids();
        CheckRun run =
            run_suites(rings, ids, make_limits(module_cutoff, hom_cutoff, lattice_cutoff));
        return to_py(nlohmann::json::parse(check_json(run)));
      },
      py::arg("suites") = std::nullopt, py::arg("corpus") = std::nullopt,
      py::arg("module_cutoff") = 0, py::arg("hom_cutoff") = 0, py::arg("lattice_cutoff") = 0,
      "Run theorem suites over a corpus of ring specs and report the results as a dict.");

  m.def(
      "scan",
      [](const std::string& predicate, std::optional<std::vector<std::string>> corpus,
         u64 module_cutoff, u64 hom_cutoff, u64 lattice_cutoff) {
        Corpus rings = corpus_from_arg(corpus);
        Limits lim = make_limits(module_cutoff, hom_cutoff, lattice_cutoff);
        RingReport probe;
        eval_predicate(probe, predicate);
        std::vector<std::string> hits;
        for (size_t i = 0; i < rings.rings.size(); ++i) {
          TorsionAnalysis ctx(rings.rings[i], lim);
          if (eval_predicate(ctx.classify(), predicate)) hits.push_back(rings.specs[i]);
        }
        return hits;
      },
      py::arg("predicate"), py::arg("corpus") = std::nullopt, py::arg("module_cutoff") = 0,
      py::arg("hom_cutoff") = 0, py::arg("lattice_cutoff") = 0,
      "Ring specs in the corpus whose classification satisfies the predicate.");

  m.def(
      "hull",
      [](const std::string& spec, const std::string& module, u64 module_cutoff, u64 hom_cutoff,
         u64 lattice_cutoff) {
        TorsionAnalysis ctx(build_ring(spec),
                            make_limits(module_cutoff, hom_cutoff, lattice_cutoff));
        FinModule mod = build_module(ctx, module);
        HullResult h = ctx.homological().injective_hull(mod);
        Submodule rad = ctx.homological().radical_of(h.hull);
        py::dict mod_info;
        mod_info["spec"] = module;
        mod_info["size"] = mod.size;
        mod_info["additive"] = additive_desc(mod.orders);
        mod_info["small"] = ctx.is_small_module(mod);
        py::dict hull_info;
        hull_info["size"] = h.hull.size;
        hull_info["additive"] = additive_desc(h.hull.orders);
        hull_info["radical_size"] = rad.size();
        py::dict out;
        out["ring"] = ctx.ring()->name;
        out["module"] = mod_info;
        out["hull"] = hull_info;
        return out;
      },
      py::arg("spec"), py::arg("module"), py::arg("module_cutoff") = 0, py::arg("hom_cutoff") = 0,
      py::arg("lattice_cutoff") = 0,
      "Injective hull of a module given by a module spec over the given ring.");
}
