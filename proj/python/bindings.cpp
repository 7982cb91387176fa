// SPDX-License-Identifier: Apache-2.0
//
// Python bindings. Coalitions are lists of 1-based player indices and
// structures are lists of coalitions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coopvanet/analytic.hpp"
#include "coopvanet/cli.hpp"
#include "coopvanet/config_io.hpp"
#include "coopvanet/game.hpp"
#include "coopvanet/geo_sim.hpp"
#include "coopvanet/identities.hpp"
#include "coopvanet/partition.hpp"
#include "coopvanet/slot_sim.hpp"

namespace py = pybind11;
using namespace coopvanet;

namespace {

using IndexList = std::vector<int>;
using StructureList = std::vector<IndexList>;

Coalition to_coalition(const IndexList& members) {
    std::vector<PlayerId> ids;
    ids.reserve(members.size());
    for (int i : members) ids.emplace_back(i);
    return Coalition(std::move(ids));
}

IndexList from_coalition(const Coalition& c) {
    IndexList out;
    for (auto id : c.members()) out.push_back(id.index());
    return out;
}

CoalitionStructure to_structure(const StructureList& blocks, int n_players) {
    std::vector<Coalition> cs;
    for (const auto& b : blocks) cs.push_back(to_coalition(b));
    return CoalitionStructure(std::move(cs), n_players);
}

StructureList from_structure(const CoalitionStructure& cs) {
    StructureList out;
    for (const auto& c : cs.coalitions()) out.push_back(from_coalition(c));
    return out;
}

py::dict report_dict(const PayoffReport& r) {
    py::list vehicles;
    for (const auto& v : r.vehicles) {
        py::dict d;
        d["player"] = v.id.index();
        d["share"] = v.share;
        d["zeta"] = v.zeta;
        d["chi"] = v.chi;
        d["throughput"] = v.throughput;
        d["payment"] = v.payment;
        d["payoff"] = v.payoff;
        vehicles.append(d);
    }
    py::list rsus;
    for (const auto& j : r.rsus) {
        py::dict d;
        d["player"] = j.id.index();
        d["eta"] = j.eta;
        d["revenue"] = j.revenue;
        d["cost"] = j.cost;
        d["payoff"] = j.payoff;
        rsus.append(d);
    }
    py::dict out;
    out["coalition"] = from_coalition(r.coalition);
    out["vehicles"] = vehicles;
    out["rsus"] = rsus;
    out["sum_payoff"] = r.sum_payoff;
    return out;
}

py::object witness_dict(const std::optional<ConditionWitness>& w) {
    if (!w) return py::none();
    py::dict d;
    d["player"] = w->player.index();
    d["coalition"] = w->coalition ? py::cast(from_coalition(*w->coalition)) : py::none();
    d["detail"] = w->detail;
    return d;
}

py::dict estimate_dict(const Estimate& e) {
    py::dict d;
    d["mean"] = e.mean;
    d["std_error"] = e.std_error;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coalitional game analysis of cooperative vehicle/RSU transmission";
    m.attr("__version__") = COOPVANET_VERSION;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<GameConfig>(m, "GameConfig")
        .def(py::init<>())
        .def_readwrite("K", &GameConfig::K)
        .def_readwrite("M", &GameConfig::M)
        .def_readwrite("p", &GameConfig::p)
        .def_readwrite("enc", &GameConfig::enc)
        .def_readwrite("delta", &GameConfig::delta)
        .def_readwrite("price", &GameConfig::price)
        .def_readwrite("cost_fwd", &GameConfig::cost_fwd)
        .def_readwrite("cost_rcv", &GameConfig::cost_rcv)
        .def_readwrite("alpha", &GameConfig::alpha)
        .def_readwrite("beta", &GameConfig::beta)
        .def_readwrite("gamma", &GameConfig::gamma)
        .def_readwrite("mu", &GameConfig::mu)
        .def_property_readonly("num_players", &GameConfig::num_players)
        .def("__repr__", [](const GameConfig& c) {
            std::ostringstream os;
            os << "GameConfig(K=" << c.K << ", M=" << c.M << ")";
            return os.str();
        });

    m.def("reference_config", &reference_config, py::arg("enc"),
          "Two vehicles, two RSUs, reference parameter values, every encounter probability = enc.");
    m.def("uniform_config", &uniform_config, py::arg("K"), py::arg("M"), py::arg("p"),
          py::arg("enc"), py::arg("delta"), py::arg("price"), py::arg("cost_fwd"),
          py::arg("cost_rcv"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("mu"));
    m.def("validate_config", &validate_config, py::arg("cfg"));
    m.def("parse_config", [](const std::string& text) { return parse_config(text).game; },
          py::arg("json_text"), "Game parameters from a JSON document.");
    m.def("load_config", [](const std::string& path) { return load_config_file(path).game; },
          py::arg("path"));
    m.def("default_config", [] { return default_project_config().game; });

    m.def("enumerate_partitions",
          [](int n) {
              std::vector<StructureList> out;
              for (const auto& cs : enumerate_partitions(n)) out.push_back(from_structure(cs));
              return out;
          },
          py::arg("n_players"));
    m.def("bell_number", &bell_number, py::arg("n"));
    m.def("partition_rank",
          [](const StructureList& cs, int n) { return partition_rank(to_structure(cs, n)); },
          py::arg("structure"), py::arg("n_players"));
    m.def("normalize_structure",
          [](const StructureList& cs, const GameConfig& cfg) {
              return from_structure(normalize_structure(to_structure(cs, cfg.num_players()), cfg));
          },
          py::arg("structure"), py::arg("cfg"));
    m.def("table_label",
          [](const StructureList& cs) { return table_label(to_structure(cs, 4)); },
          py::arg("structure"));

    m.def("transmission_share",
          [](const IndexList& S, int vehicle, const GameConfig& cfg) {
              return transmission_share(to_coalition(S), PlayerId{vehicle}, cfg);
          },
          py::arg("coalition"), py::arg("vehicle"), py::arg("cfg"));
    m.def("relay_usage_prob",
          [](const IndexList& S, int vehicle, int rsu, const GameConfig& cfg) {
              return relay_usage_prob(to_coalition(S), PlayerId{vehicle}, PlayerId{rsu}, cfg);
          },
          py::arg("coalition"), py::arg("vehicle"), py::arg("rsu"), py::arg("cfg"));
    m.def("relay_weighted_mean",
          [](const IndexList& S, int vehicle, const std::vector<double>& w, const GameConfig& cfg) {
              return relay_weighted_mean(to_coalition(S), PlayerId{vehicle}, w, cfg);
          },
          py::arg("coalition"), py::arg("vehicle"), py::arg("weights"), py::arg("cfg"));
    m.def("oracle_relay_mean",
          [](const IndexList& S, int vehicle, const std::vector<double>& w, const GameConfig& cfg) {
              const auto r = oracle_relay_mean(to_coalition(S), PlayerId{vehicle}, w, cfg);
              return py::make_tuple(r.mean, r.eta);
          },
          py::arg("coalition"), py::arg("vehicle"), py::arg("weights"), py::arg("cfg"),
          "(mean, eta row) by enumeration of every encounter set.");
    m.def("player_payoffs",
          [](const IndexList& S, const GameConfig& cfg) {
              return report_dict(player_payoffs(to_coalition(S), cfg));
          },
          py::arg("coalition"), py::arg("cfg"));
    m.def("structure_payoffs",
          [](const StructureList& cs, const GameConfig& cfg) {
              return structure_payoffs(to_structure(cs, cfg.num_players()), cfg);
          },
          py::arg("structure"), py::arg("cfg"), "Payoff of every player, indexed by player - 1.");

    m.def("vehicle_coalition_profitability",
          [](const IndexList& S, const GameConfig& cfg) {
              py::list out;
              for (const auto& v : vehicle_coalition_profitability(to_coalition(S), cfg)) {
                  py::dict d;
                  d["player"] = v.player.index();
                  d["ratio"] = v.ratio;
                  d["profitable"] = v.profitable;
                  d["strict"] = v.strict;
                  out.append(d);
              }
              return out;
          },
          py::arg("coalition"), py::arg("cfg"));
    m.def("pricing_cancellation_check",
          [](const IndexList& S, const GameConfig& cfg, double tol) {
              const auto c = pricing_cancellation_check(to_coalition(S), cfg, tol);
              py::dict d;
              d["applicable"] = c.applicable;
              d["holds"] = c.holds;
              d["residual"] = c.residual;
              d["message"] = c.message;
              return d;
          },
          py::arg("coalition"), py::arg("cfg"), py::arg("tolerance") = 1e-12);
    m.def("analyze_stability",
          [](const GameConfig& cfg) {
              const auto v = analyze_stability(cfg);
              py::dict d;
              d["weights_positive"] = v.conditions.weights_positive;
              d["members_profit"] = v.conditions.members_profit;
              d["grand_dominates"] = v.conditions.grand_dominates;
              d["weights_witness"] = witness_dict(v.conditions.weights_witness);
              d["profit_witness"] = witness_dict(v.conditions.profit_witness);
              d["dominance_witness"] = witness_dict(v.conditions.dominance_witness);
              d["in_core"] = v.membership.in_core;
              d["blocking"] = v.membership.blocking
                                  ? py::cast(from_coalition(*v.membership.blocking))
                                  : py::none();
              d["grand_payoffs"] = v.grand_payoffs;
              return d;
          },
          py::arg("cfg"));
    m.def("core_membership",
          [](const std::vector<double>& x, const GameConfig& cfg) {
              const auto c = core_membership(x, cfg);
              py::dict d;
              d["in_core"] = c.in_core;
              d["blocking"] = c.blocking ? py::cast(from_coalition(*c.blocking)) : py::none();
              d["blocking_payoffs"] = c.blocking_payoffs;
              return d;
          },
          py::arg("x"), py::arg("cfg"));

    m.def("analytic_pair_encounter", &analytic_pair_encounter, py::arg("d"), py::arg("side") = 1.0);
    m.def("estimate_encounter_matrix",
          [](const std::vector<double>& range_km, int M, std::uint64_t n_slots, std::uint64_t seed,
             double side_km, const std::string& placement, int grid_cells) {
              GeometryConfig geo;
              geo.range_km = range_km;
              geo.n_slots = n_slots;
              geo.seed = seed;
              geo.side_km = side_km;
              geo.placement = parse_placement(placement);
              geo.grid_cells = grid_cells;
              const auto est =
                  estimate_encounter_matrix(geo, static_cast<int>(range_km.size()), M);
              py::dict d;
              d["probability"] = est.probability;
              d["std_error"] = est.std_error;
              d["n_slots"] = est.n_slots;
              return d;
          },
          py::arg("range_km"), py::arg("M"), py::arg("n_slots") = 1'000'000, py::arg("seed") = 1,
          py::arg("side_km") = 1.0, py::arg("placement") = "continuous", py::arg("grid_cells") = 10,
          "M x K encounter estimates; one range per vehicle.");

    m.def("simulate_slots",
          [](const StructureList& cs, const GameConfig& cfg, std::uint64_t n_slots,
             std::uint64_t seed) {
              EmpiricalReport rep;
              {
                  py::gil_scoped_release release;
                  rep = simulate_slots(to_structure(cs, cfg.num_players()), cfg, n_slots, seed);
              }
              py::list vehicles;
              for (const auto& v : rep.vehicles) {
                  py::dict d;
                  d["player"] = v.id.index();
                  d["throughput"] = estimate_dict(v.throughput);
                  d["payment"] = estimate_dict(v.payment);
                  d["payoff"] = estimate_dict(v.payoff);
                  d["scheduled"] = v.scheduled;
                  d["collided"] = v.collided;
                  d["relayed"] = v.relayed;
                  vehicles.append(d);
              }
              py::list rsus;
              for (const auto& r : rep.rsus) {
                  py::dict d;
                  d["player"] = r.id.index();
                  d["revenue"] = estimate_dict(r.revenue);
                  d["cost"] = estimate_dict(r.cost);
                  d["payoff"] = estimate_dict(r.payoff);
                  d["encountered"] = r.encountered;
                  d["selected"] = r.selected;
                  rsus.append(d);
              }
              py::dict out;
              out["n_slots"] = rep.n_slots;
              out["seed"] = rep.seed;
              out["vehicles"] = vehicles;
              out["rsus"] = rsus;
              out["balance_violations"] = rep.balance_violations;
              out["schedule_violations"] = rep.schedule_violations;
              out["collision_violations"] = rep.collision_violations;
              return out;
          },
          py::arg("structure"), py::arg("cfg"), py::arg("n_slots"), py::arg("seed") = 1);

    m.def("run_identity_suite",
          [](const GameConfig& cfg, double tol) {
              py::list out;
              for (const auto& r : run_identity_suite(cfg, tol)) {
                  out.append(py::make_tuple(r.name, to_string(r.status), r.max_residual, r.detail));
              }
              return out;
          },
          py::arg("cfg"), py::arg("tolerance") = 1e-12,
          "List of (name, PASS|FAIL|SKIP, max_residual, detail).");

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out;
              std::ostringstream err;
              const int code = run_cli(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs the command-line tool in-process: (exit code, stdout, stderr).");
}
