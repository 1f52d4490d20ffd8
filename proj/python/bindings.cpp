#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "community_forge/equilibrium.hpp"
#include "community_forge/filtering.hpp"
#include "community_forge/io.hpp"
#include "community_forge/supply.hpp"

namespace py = pybind11;
using namespace community_forge;

namespace {

py::dict checks_dict(const PropertyReport& r) {
  py::dict out;
  for (const auto& c : r.checks) out[py::str(c.name)] = py::make_tuple(c.passed, c.measured, c.bound);
  return out;
}

GlobalParams params_from(double L, double c, double E_p, double E_q, const KernelSpec& f, const KernelSpec& g) {
  GlobalParams p;
  p.L = L;
  p.c = c;
  p.E_p = E_p;
  p.E_q = E_q;
  p.f = f;
  p.g = g;
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Covering equilibria of interval information communities";

  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_RuntimeError);
  py::register_exception<KernelValidationError>(m, "KernelValidationError", PyExc_ValueError);
  py::register_exception<BalanceIntegrityError>(m, "BalanceIntegrityError", PyExc_RuntimeError);

  py::enum_<KernelFamily>(m, "KernelFamily")
      .value("gaussian", KernelFamily::gaussian)
      .value("raised_cosine", KernelFamily::raised_cosine)
      .value("quadratic_bump", KernelFamily::quadratic_bump)
      .value("cosine_bump", KernelFamily::cosine_bump)
      .value("constant", KernelFamily::constant);

  py::class_<KernelSpec>(m, "KernelSpec")
      .def(py::init([](const std::string& family, double amplitude, double width) {
             return KernelSpec::make(parse_kernel_family(family), amplitude, width);
           }),
           py::arg("family"), py::arg("amplitude"), py::arg("width"))
      .def_readonly("family", &KernelSpec::family)
      .def_readonly("amplitude", &KernelSpec::amplitude)
      .def_readonly("width", &KernelSpec::width)
      .def("__call__", [](const KernelSpec& k, double d, double L) { return kernel_eval(k, d, L); },
           py::arg("d"), py::arg("L") = 1.0)
      .def("__repr__", [](const KernelSpec& k) {
        return "KernelSpec('" + std::string(to_string(k.family)) + "', " + std::to_string(k.amplitude) + ", " +
               std::to_string(k.width) + ")";
      });

  py::class_<Arc>(m, "Arc")
      .def(py::init([](double start, double length, double L) { return Arc::make(start, length, L); }),
           py::arg("start"), py::arg("length"), py::arg("L") = 1.0)
      .def_readonly("start", &Arc::start)
      .def_readonly("length", &Arc::length)
      .def("contains", &Arc::contains, py::arg("x"), py::arg("L") = 1.0)
      .def("mid", [](const Arc& a, double L) { return arc_mid(a, L); }, py::arg("L") = 1.0);

  m.def("torus_distance", &torus_distance, py::arg("x"), py::arg("y"), py::arg("L") = 1.0);
  m.def("partition_ring", &partition_ring, py::arg("K"), py::arg("L") = 1.0);

  py::class_<NumericsConfig>(m, "NumericsConfig")
      .def(py::init<>())
      .def_readwrite("ring_grid_n", &NumericsConfig::ring_grid_n)
      .def_readwrite("y_grid_n", &NumericsConfig::y_grid_n)
      .def_readwrite("x_grid_n", &NumericsConfig::x_grid_n)
      .def_readwrite("quadrature_order", &NumericsConfig::quadrature_order)
      .def_readwrite("nash_agents", &NumericsConfig::nash_agents)
      .def_readwrite("nash_tol", &NumericsConfig::nash_tol);

  py::class_<GlobalParams>(m, "GlobalParams")
      .def(py::init(&params_from), py::arg("L"), py::arg("c"), py::arg("E_p"), py::arg("E_q"), py::arg("f"),
           py::arg("g"))
      .def_readonly("L", &GlobalParams::L)
      .def_readonly("c", &GlobalParams::c)
      .def_readonly("E_p", &GlobalParams::E_p)
      .def_readonly("E_q", &GlobalParams::E_q)
      .def_readonly("f", &GlobalParams::f)
      .def_readonly("g", &GlobalParams::g);

  m.def("demand_at",
        [](const Arc& arc, double E_p, const KernelSpec& f, double x, double L) {
          return demand_at(arc, E_p, f, x, L);
        },
        py::arg("arc"), py::arg("E_p"), py::arg("f"), py::arg("x"), py::arg("L") = 1.0);
  m.def("max_interval_length", [](const GlobalParams& p) { return max_interval_length(p); }, py::arg("params"));
  m.def("feasibility_check",
        [](double length, const GlobalParams& p) {
          const auto r = feasibility_check(length, p);
          return py::dict(py::arg("feasible") = r.feasible, py::arg("margin") = r.margin,
                          py::arg("support_warning") = r.support_warning);
        },
        py::arg("arc_length"), py::arg("params"));

  py::class_<CommunityState>(m, "Community")
      .def_property_readonly("arc", [](const CommunityState& c) { return c.arc; })
      .def_readonly("alpha", &CommunityState::alpha)
      .def_property_readonly("mid", [](const CommunityState& c) { return c.production.mid(); })
      .def_property_readonly("demand",
                             [](const CommunityState& c) {
                               std::vector<double> xs;
                               for (std::size_t i = 0; i < c.demand.values.size(); ++i) xs.push_back(c.demand.values.coord(i));
                               return py::make_tuple(xs, c.demand.values.values);
                             })
      .def_property_readonly("production",
                             [](const CommunityState& c) {
                               std::vector<double> y, x, b, gate;
                               for (const auto& t : c.production.targets) {
                                 y.push_back(t.y);
                                 x.push_back(t.x_star);
                                 b.push_back(t.objective);
                                 gate.push_back(t.gate_rate);
                               }
                               return py::dict(py::arg("y") = y, py::arg("x_star") = x, py::arg("objective") = b,
                                               py::arg("gate_rate") = gate);
                             })
      .def_property_readonly("totals",
                             [](const CommunityState& c) {
                               return py::dict(py::arg("consumer") = c.utility.total_consumer,
                                               py::arg("producer") = c.utility.total_producer,
                                               py::arg("formula") = c.utility.total_formula);
                             })
      .def("checks", [](const CommunityState& c) {
        const auto rep = supply_density(c.production, 256);
        py::dict out;
        out["demand"] = checks_dict(demand_properties_check(c.demand));
        out["production"] = checks_dict(production_map_check(c.production));
        out["supply"] = checks_dict(supply_properties_check(rep));
        out["utility"] = checks_dict(utility_peak_check(c.utility));
        return out;
      });

  py::class_<CommunityStructure>(m, "CommunityStructure")
      .def_readonly("params", &CommunityStructure::params)
      .def_readonly("communities", &CommunityStructure::communities)
      .def_property_readonly("K", [](const CommunityStructure& s) { return s.communities.size(); })
      .def("to_json", [](const CommunityStructure& s) { return structure_to_json(s).dump(); });

  m.def("construct_covering",
        [](const GlobalParams& p, std::optional<NumericsConfig> n, std::optional<int> K) {
          return construct_covering(p, n.value_or(NumericsConfig{}), K);
        },
        py::arg("params"), py::arg("numerics") = py::none(), py::arg("K") = py::none(),
        py::call_guard<py::gil_scoped_release>());
  m.def("build_structure",
        [](const GlobalParams& p, const std::vector<Arc>& arcs, std::optional<NumericsConfig> n) {
          return build_structure(p, arcs, n.value_or(NumericsConfig{}));
        },
        py::arg("params"), py::arg("arcs"), py::arg("numerics") = py::none());

  m.def("verify_nash",
        [](const CommunityStructure& s, int n_agents, double tol, std::uint64_t seed) {
          NashReport r;
          {
            py::gil_scoped_release release;
            r = verify_nash(s, n_agents, tol, seed);
          }
          return py::dict(py::arg("max_consumption_gain") = r.max_consumption_gain,
                          py::arg("max_production_gain") = r.max_production_gain,
                          py::arg("worst_agent") = r.worst_agent, py::arg("pass") = r.pass);
        },
        py::arg("structure"), py::arg("n_agents") = 200, py::arg("tol") = 1e-4, py::arg("seed") = 0);

  m.def("optimal_filter_agent",
        [](const CommunityState& c, const KernelSpec& h, const GlobalParams& p, int n) {
          const auto r = optimal_filter_agent(c, h, p, n);
          return py::make_tuple(r.agent, r.agent_offset, r.totals.step);
        },
        py::arg("community"), py::arg("h"), py::arg("params"), py::arg("y_grid_n") = 257);
  m.def("threshold_filter_totals",
        [](const CommunityState& c, const GlobalParams& p) {
          const auto f = make_threshold_filter(c, p);
          return py::dict(py::arg("t0") = f.threshold, py::arg("threshold") = filtered_total_utility(c, f, p),
                          py::arg("all_pass") = filtered_total_utility(c, FilterSpec::pass_all(), p));
        },
        py::arg("community"), py::arg("params"));
  m.def("expert_routing_plan",
        [](const CommunityState& c, const GlobalParams& p) {
          const auto plan = expert_routing_plan(c, p);
          std::vector<double> gains;
          for (const auto& g : plan.gains) gains.push_back(g.gain);
          return py::dict(py::arg("t_C") = plan.t_C, py::arg("delta_total") = plan.delta_total,
                          py::arg("benefiting_fraction") = plan.benefiting_fraction,
                          py::arg("threshold_violations") = plan.threshold_violations, py::arg("gains") = gains);
        },
        py::arg("community"), py::arg("params"));
}
