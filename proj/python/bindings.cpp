// Copyright 2026 The icbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "icbound/error.hpp"
#include "icbound/ic_bounds.hpp"
#include "icbound/io.hpp"
#include "icbound/oracle.hpp"
#include "icbound/protocol.hpp"

namespace py = pybind11;
using namespace icb;

namespace {

JointPMF pmf_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_pmf(in);
}

FunctionSpec function_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_function(in);
}

ProtocolSpec protocol_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_protocol(in);
}

py::dict sup_dict(const SupResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["kind"] = to_string(r.kind);
  d["marginal_residual"] = r.residuals.marginal;
  d["markov_residual"] = r.residuals.markov;
  d["budget_exhausted"] = r.budget_exhausted;
  if (r.witness) {
    std::ostringstream out;
    write_witness(out, *r.witness);
    d["witness"] = out.str();
  } else {
    d["witness"] = py::none();
  }
  return d;
}

py::dict report_dict(const BoundReport& b) {
  py::dict d;
  d["ic_lower"] = b.ic_lower;
  d["route"] = to_string(b.route);
  d["sup_upper"] = b.sup_upper;
  d["sup_achieved"] = b.sup_achieved ? py::cast(*b.sup_achieved) : py::none();
  d["ic_upper"] = b.ic_upper ? py::cast(*b.ic_upper) : py::none();
  d["gap"] = b.gap ? py::cast(*b.gap) : py::none();
  d["h_x_given_y"] = b.h_x_given_y;
  d["h_y_given_x"] = b.h_y_given_x;
  d["sup_kind"] = to_string(b.provenance.sup_kind);
  return d;
}

SearchConfig search_config(std::uint64_t seed, std::size_t restarts, std::size_t workers) {
  SearchConfig c;
  c.seed = seed;
  c.restarts = restarts;
  c.workers = workers;
  return c;
}

}  // namespace

PYBIND11_MODULE(_icbound, m) {
  m.doc() = "Information-complexity lower bounds via Wyner common information";

  static py::exception<Error> base(m, "IcboundError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::setattr(base, "kind", py::str(e.kind()));
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  py::class_<JointPMF>(m, "JointPMF")
      .def(py::init([](const std::vector<std::pair<std::string, std::vector<std::string>>>& variables,
                       const std::vector<double>& mass) {
             std::vector<Alphabet> vars;
             for (const auto& [name, symbols] : variables) vars.emplace_back(name, symbols);
             return validate(JointPMF(std::move(vars), mass));
           }),
           py::arg("variables"), py::arg("mass"))
      .def_static("parse", &pmf_from_text, py::arg("text"))
      .def_property_readonly("names", [](const JointPMF& p) {
        std::vector<std::string> out;
        for (const auto& v : p.variables()) out.push_back(v.name());
        return out;
      })
      .def_property_readonly("symbols", [](const JointPMF& p) {
        std::vector<std::vector<std::string>> out;
        for (const auto& v : p.variables()) out.push_back(v.symbols());
        return out;
      })
      .def_property_readonly("mass", [](const JointPMF& p) { return std::vector<double>(p.mass().begin(), p.mass().end()); })
      .def("entropy", [](const JointPMF& p, const VarSet& v) { return entropy(p, v); })
      .def("conditional_entropy", [](const JointPMF& p, const VarSet& t, const VarSet& g) {
        return conditional_entropy(p, t, g);
      })
      .def("mutual_information", [](const JointPMF& p, const VarSet& a, const VarSet& b) {
        return mutual_information(p, a, b);
      })
      .def("conditional_mutual_information", [](const JointPMF& p, const VarSet& a, const VarSet& b,
                                                const VarSet& g) { return conditional_mutual_information(p, a, b, g); })
      .def("__str__", [](const JointPMF& p) {
        std::ostringstream out;
        write_pmf(out, p);
        return out.str();
      });

  py::class_<FunctionSpec>(m, "FunctionSpec")
      .def_static("parse", &function_from_text, py::arg("text"))
      .def_static("eq", &eq_function, py::arg("k"))
      .def_property_readonly("name", &FunctionSpec::name);

  m.def("uniform_inputs", &uniform_inputs, py::arg("k"));
  m.def("lift_to_uv", &lift_to_uv, py::arg("pmf_xy"), py::arg("f"));

  m.def("bicliques", [](const JointPMF& uv) {
    const auto dec = maximal_bicliques(build_graph(uv));
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
    for (const auto& c : dec.classes) {
      std::vector<std::string> l, r;
      for (auto u : c.left_set) l.push_back(dec.graph.left().symbol(u));
      for (auto v : c.right_set) r.push_back(dec.graph.right().symbol(v));
      out.emplace_back(std::move(l), std::move(r));
    }
    return out;
  }, py::arg("uv"));

  m.def("sup_relax", [](const JointPMF& uv) {
    return sup_dict(relaxed_sup_upper_bound(uv, maximal_bicliques(build_graph(uv))));
  }, py::arg("uv"));
  m.def("sup_search", [](const JointPMF& uv, std::uint64_t seed, std::size_t restarts, std::size_t workers) {
    SupResult r;
    {
      py::gil_scoped_release release;
      r = achievability_search(uv, maximal_bicliques(build_graph(uv)), search_config(seed, restarts, workers));
    }
    return sup_dict(r);
  }, py::arg("uv"), py::arg("seed") = 1, py::arg("restarts") = 32, py::arg("workers") = 1);
  m.def("sup_oracle", [](const JointPMF& uv) { return sup_dict(brute_force_oracle(uv)); }, py::arg("uv"));
  m.def("eq_sup_closed_form", &eq_sup_closed_form, py::arg("k"));

  m.def("ic_bound_eq", [](int k) { return report_dict(ic_lower_bound_eq(k)); }, py::arg("k"));
  m.def("ic_bound", [](const JointPMF& xy, const FunctionSpec& f) {
    const auto uv = lift_to_uv(xy, f);
    return report_dict(ic_lower_bound(xy, f, relaxed_sup_upper_bound(uv, maximal_bicliques(build_graph(uv)))));
  }, py::arg("pmf_xy"), py::arg("f"));

  py::class_<ProtocolSpec>(m, "ProtocolSpec")
      .def_static("parse", &protocol_from_text, py::arg("text"))
      .def_static("builtin", &builtin, py::arg("name"))
      .def_readonly("name", &ProtocolSpec::name)
      .def_property_readonly("rounds", [](const ProtocolSpec& p) { return p.rounds.size(); })
      .def("__str__", [](const ProtocolSpec& p) {
        std::ostringstream out;
        write_protocol(out, p);
        return out.str();
      });

  m.def("protocol_cost", [](const ProtocolSpec& p, const JointPMF& xy, const FunctionSpec& f) {
    const auto td = transcript_distribution(p, xy, f);
    const auto parts = cost_breakdown(td);
    const auto chain = hm_chain_check(td);
    const auto [ha, hb] = verify_correctness(td);
    py::dict d;
    d["cost"] = parts.total();
    d["i_x_m_given_y"] = parts.x_given_y;
    d["i_y_m_given_x"] = parts.y_given_x;
    d["h_m"] = chain.h_m;
    d["chain_holds"] = chain.holds;
    d["round_markov"] = verify_round_markov(td);
    d["monotonicity"] = verify_monotonicity(td);
    d["h_z_given_xm"] = ha;
    d["h_z_given_ym"] = hb;
    return d;
  }, py::arg("protocol"), py::arg("pmf_xy"), py::arg("f"));
  m.def("builtin_protocols", &builtin_names);
}
