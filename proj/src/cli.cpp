// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/cli.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "coopvanet/analytic.hpp"
#include "coopvanet/config_io.hpp"
#include "coopvanet/csv.hpp"
#include "coopvanet/game.hpp"
#include "coopvanet/geo_sim.hpp"
#include "coopvanet/identities.hpp"
#include "coopvanet/partition.hpp"
#include "coopvanet/slot_sim.hpp"

namespace coopvanet {

namespace {

constexpr const char* kBuiltinConfig = "<built-in default>";

struct InvariantBreach : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> slots;
    std::string out;
    std::string structure;
    std::vector<double> d_sweep;
    std::string placement;
    std::string encounter_json;
    bool end_to_end{false};
};

ProjectConfig load(const Options& opt) {
    return opt.config.empty() ? default_project_config() : load_config_file(opt.config);
}

// Writes to --out (plus manifest) or to the console stream.
class Sink {
public:
    Sink(const Options& opt, std::string command, std::ostream& console)
        : opt_(opt), command_(std::move(command)), console_(console) {
        if (!opt_.out.empty()) {
            file_ = std::make_unique<std::ofstream>(opt_.out, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open output file '" + opt_.out + "'");
        }
    }

    std::ostream& stream() { return file_ ? *file_ : console_; }

    void finish() {
        if (!file_) return;
        file_->close();
        RunManifest m;
        m.command = command_;
        m.config_path = opt_.config.empty() ? kBuiltinConfig : opt_.config;
        m.seed = opt_.seed;
        m.output_path = opt_.out;
        m.tool_version = COOPVANET_VERSION;
        m.timestamp = utc_timestamp();
        std::ofstream manifest(opt_.out + ".manifest.json", std::ios::binary);
        if (!manifest) throw std::runtime_error("cannot write manifest for '" + opt_.out + "'");
        manifest << manifest_json(m);
    }

private:
    const Options& opt_;
    std::string command_;
    std::ostream& console_;
    std::unique_ptr<std::ofstream> file_;
};

CoalitionStructure resolve_structure(const std::string& text, int n_players) {
    if (text.empty()) return partition_unrank(n_players, 1);
    if (text.find_first_not_of("0123456789") == std::string::npos) {
        return partition_unrank(n_players, std::stoull(text));
    }
    if (text[0] == 'C' || text[0] == 'c') {
        if (n_players != 4) {
            throw std::invalid_argument("table labels C1..C15 need exactly 4 players");
        }
        if (auto cs = structure_for_label(text)) return *cs;
        throw std::invalid_argument("unknown structure label '" + text + "'");
    }
    return parse_structure(text, n_players);
}

std::string label_or_empty(const CoalitionStructure& cs) {
    return table_label(cs).value_or("");
}

std::string pair_name(int rsu, int vehicle) {
    return "rsu" + std::to_string(rsu) + "-vehicle" + std::to_string(vehicle);
}

std::vector<double> default_sweep() { return {0.1, 0.2, 0.3, 0.4, 0.5}; }

// --- encounter ----------------------------------------------------------

int cmd_encounter(const Options& opt, std::ostream& out) {
    const auto project = load(opt);
    const auto& cfg = project.game;
    GeometryConfig geo = project.geometry.value_or(GeometryConfig{});
    if (opt.slots) geo.n_slots = *opt.slots;
    if (opt.seed) geo.seed = *opt.seed;
    if (!opt.placement.empty()) geo.placement = parse_placement(opt.placement);
    auto sweep = opt.d_sweep.empty() ? default_sweep() : opt.d_sweep;

    if (!opt.encounter_json.empty() && sweep.size() != 1) {
        throw std::invalid_argument("--encounter-json needs a single --d-sweep value");
    }

    Sink sink(opt, "encounter", out);
    CsvWriter csv(sink.stream());
    csv.row({"d_km", "pair", "estimate", "stderr", "analytic"});
    for (double d : sweep) {
        geo.range_km.assign(static_cast<std::size_t>(cfg.K), d);
        if (auto errors = validate_geometry(geo, cfg.K); !errors.empty()) throw ConfigError(errors);
        const auto est = estimate_encounter_matrix(geo, cfg.K, cfg.M);
        std::string analytic;
        if (geo.placement == Placement::continuous && d <= geo.side_km) {
            analytic = format_double(analytic_pair_encounter(d, geo.side_km));
        }
        for (int j = 0; j < cfg.M; ++j) {
            for (int i = 0; i < cfg.K; ++i) {
                const auto js = static_cast<std::size_t>(j);
                const auto is = static_cast<std::size_t>(i);
                csv.row({format_double(d), pair_name(cfg.K + j + 1, i + 1),
                         format_double(est.probability[js][is]),
                         format_double(est.std_error[js][is]), analytic});
            }
        }
        if (!opt.encounter_json.empty()) {
            std::ofstream js(opt.encounter_json, std::ios::binary);
            if (!js) throw std::runtime_error("cannot write '" + opt.encounter_json + "'");
            js << encounter_section_json(est.probability) << "\n";
        }
    }
    sink.finish();
    return kExitOk;
}

// --- payoffs ------------------------------------------------------------

void payoff_rows(CsvWriter& csv, const std::string& d_label, const CoalitionStructure& cs,
                 const GameConfig& cfg) {
    const auto id = std::to_string(partition_rank(cs));
    const auto label = label_or_empty(cs);
    const auto text = cs.to_string();
    for (const auto& S : cs.coalitions()) {
        const auto report = player_payoffs(S, cfg);
        for (const auto& v : report.vehicles) {
            csv.row({d_label, id, label, text, std::to_string(v.id.index()), "vehicle",
                     format_double(v.share), format_double(v.zeta), format_double(v.chi),
                     format_double(v.throughput), format_double(v.payment), "", "",
                     format_double(v.payoff)});
        }
        for (const auto& r : report.rsus) {
            csv.row({d_label, id, label, text, std::to_string(r.id.index()), "rsu", "", "", "",
                     "", "", format_double(r.revenue), format_double(r.cost),
                     format_double(r.payoff)});
        }
    }
}

int cmd_payoffs(const Options& opt, std::ostream& out) {
    const auto project = load(opt);
    auto cfg = project.game;
    const int n = cfg.num_players();

    std::vector<CoalitionStructure> structures;
    if (opt.structure.empty()) {
        structures = enumerate_partitions(n);
    } else {
        structures.push_back(resolve_structure(opt.structure, n));
    }

    Sink sink(opt, "payoffs", out);
    CsvWriter csv(sink.stream());
    csv.row({"d_km", "structure_id", "table_label", "structure", "player", "role", "share",
             "zeta", "chi", "throughput", "payment", "revenue", "cost", "payoff"});
    if (opt.d_sweep.empty()) {
        for (const auto& cs : structures) payoff_rows(csv, "", cs, cfg);
    } else {
        const double side = project.geometry ? project.geometry->side_km : 1.0;
        for (double d : opt.d_sweep) {
            const double q = analytic_pair_encounter(d, side);
            for (auto& row : cfg.enc) std::fill(row.begin(), row.end(), q);
            for (const auto& cs : structures) payoff_rows(csv, format_double(d), cs, cfg);
        }
    }
    sink.finish();
    return kExitOk;
}

// --- enumerate ----------------------------------------------------------

int cmd_enumerate(const Options& opt, std::ostream& out) {
    const auto project = load(opt);
    const auto& cfg = project.game;
    Sink sink(opt, "enumerate", out);
    CsvWriter csv(sink.stream());
    csv.row({"structure_id", "table_label", "structure", "normalized", "normalized_id"});
    for (const auto& cs : enumerate_partitions(cfg.num_players())) {
        const auto norm = normalize_structure(cs, cfg);
        csv.row({std::to_string(partition_rank(cs)), label_or_empty(cs), cs.to_string(),
                 norm.to_string(), std::to_string(partition_rank(norm))});
    }
    sink.finish();
    return kExitOk;
}

// --- core ---------------------------------------------------------------

std::string witness_text(const std::optional<ConditionWitness>& w) {
    if (!w) return "";
    std::string s = "player " + std::to_string(w->player.index());
    if (w->coalition) s += " in " + w->coalition->to_string();
    return s + ": " + w->detail;
}

int cmd_core(const Options& opt, std::ostream& out) {
    const auto project = load(opt);
    const auto verdict = analyze_stability(project.game);
    const auto& c = verdict.conditions;

    Sink sink(opt, "core", out);
    auto& os = sink.stream();
    auto line = [&](const char* name, bool ok, const std::optional<ConditionWitness>& w) {
        os << name << ": " << (ok ? "holds" : "fails");
        if (!ok) os << " (" << witness_text(w) << ")";
        os << "\n";
    };
    line("condition 1 (positive weights)", c.weights_positive, c.weights_witness);
    line("condition 2 (members profit in every coalition with a vehicle)", c.members_profit,
         c.profit_witness);
    line("condition 3 (grand coalition strictly better for every member)", c.grand_dominates,
         c.dominance_witness);
    os << "grand vector:";
    for (double x : verdict.grand_payoffs) os << " " << format_double(x);
    os << "\n";
    if (verdict.membership.blocking) {
        os << "blocking coalition: " << verdict.membership.blocking->to_string() << "\n";
    }
    os << (c.all_hold() ? "sufficient conditions hold" : "sufficient conditions fail") << "; "
       << (verdict.membership.in_core ? "grand vector in core" : "grand vector blocked") << "\n";
    sink.finish();
    return kExitOk;
}

// --- simulate -----------------------------------------------------------

int cmd_simulate(const Options& opt, std::ostream& out) {
    const auto project = load(opt);
    const auto& cfg = project.game;
    const auto cs = resolve_structure(opt.structure, cfg.num_players());
    const std::uint64_t slots = opt.slots.value_or(1'000'000);
    const std::uint64_t seed = opt.seed.value_or(1);

    SlotSimOptions sim_opt;
    if (opt.end_to_end) {
        if (!project.geometry) throw ConfigError({"--end-to-end needs a geometry section"});
        sim_opt.encounter_mode = EncounterMode::geometry;
        sim_opt.geometry = project.geometry;
        if (!opt.placement.empty()) sim_opt.geometry->placement = parse_placement(opt.placement);
    }
    const auto report = simulate_slots(cs, cfg, slots, seed, sim_opt);
    if (report.balance_violations || report.schedule_violations || report.collision_violations) {
        throw InvariantBreach("slot simulation accounting violated");
    }

    Sink sink(opt, "simulate", out);
    CsvWriter csv(sink.stream());
    csv.row({"player", "quantity", "estimate", "stderr", "n_slots", "seed", "analytic",
             "z_score"});
    const auto n_text = std::to_string(slots);
    const auto seed_text = std::to_string(seed);
    auto emit = [&](PlayerId id, const char* quantity, const Estimate& e, double analytic) {
        std::string z;
        if (e.std_error > 0.0) z = format_double((e.mean - analytic) / e.std_error);
        csv.row({std::to_string(id.index()), quantity, format_double(e.mean),
                 format_double(e.std_error), n_text, seed_text, format_double(analytic), z});
    };
    for (const auto& v : report.vehicles) {
        const auto& S = cs.coalition_of(v.id);
        const auto analytic = player_payoffs(S, cfg);
        for (const auto& t : analytic.vehicles) {
            if (t.id != v.id) continue;
            emit(v.id, "throughput", v.throughput, t.throughput);
            emit(v.id, "payment", v.payment, t.payment);
            emit(v.id, "payoff", v.payoff, t.payoff);
        }
    }
    for (const auto& r : report.rsus) {
        const auto& S = cs.coalition_of(r.id);
        const auto analytic = player_payoffs(S, cfg);
        for (const auto& t : analytic.rsus) {
            if (t.id != r.id) continue;
            emit(r.id, "revenue", r.revenue, t.revenue);
            emit(r.id, "cost", r.cost, t.cost);
            emit(r.id, "payoff", r.payoff, t.payoff);
        }
    }
    sink.finish();
    return kExitOk;
}

// --- check --------------------------------------------------------------

int cmd_check(const Options& opt, std::ostream& out) {
    const auto project = load(opt);
    const auto results = run_identity_suite(project.game);
    Sink sink(opt, "check", out);
    auto& os = sink.stream();
    bool failed = false;
    for (const auto& r : results) {
        os << to_string(r.status) << " " << r.name << " max_residual=" << format_double(r.max_residual);
        if (!r.detail.empty()) os << " " << r.detail;
        os << "\n";
        failed = failed || r.status == CheckStatus::fail;
    }
    sink.finish();
    return failed ? kExitInvariantBreach : kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coalitional game analysis of cooperative vehicle/RSU transmission", "coopvanet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(COOPVANET_VERSION));

    Options opt;
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "JSON parameter file (default: built-in)");
        sub->add_option("--out", opt.out, "Output path (default: stdout); a manifest is written next to it");
    };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "RNG seed");
        sub->add_option("--slots", opt.slots, "Number of simulated slots");
    };

    auto* encounter = app.add_subcommand("encounter", "Estimate encounter probabilities over a range sweep");
    add_config(encounter);
    add_seed(encounter);
    encounter->add_option("--d-sweep", opt.d_sweep, "Transmission ranges in km")->delimiter(',');
    encounter->add_option("--placement", opt.placement, "continuous or grid");
    encounter->add_option("--encounter-json", opt.encounter_json,
                          "Also write the estimated matrix as an encounter section");

    auto* payoffs = app.add_subcommand("payoffs", "Analytic payoffs per structure");
    add_config(payoffs);
    payoffs->add_option("--structure", opt.structure, "Structure id, table label (C1..C15) or spec like {1,2},{3},{4}");
    payoffs->add_option("--d-sweep", opt.d_sweep,
                        "Ranges in km; encounter probabilities from the uniform-square formula")
        ->delimiter(',');

    auto* enumerate = app.add_subcommand("enumerate", "List all coalition structures");
    add_config(enumerate);

    auto* core = app.add_subcommand("core", "Core stability of the grand coalition");
    add_config(core);

    auto* simulate = app.add_subcommand("simulate", "Slot simulation against analytic values");
    add_config(simulate);
    add_seed(simulate);
    simulate->add_option("--structure", opt.structure, "Structure id, table label or spec (default: grand coalition)");
    simulate->add_option("--placement", opt.placement, "continuous or grid (with --end-to-end)");
    simulate->add_flag("--end-to-end", opt.end_to_end, "Draw encounters from per-slot positions");

    auto* check = app.add_subcommand("check", "Run the identity suite on a config");
    add_config(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << COOPVANET_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        if (encounter->parsed()) return cmd_encounter(opt, out);
        if (payoffs->parsed()) return cmd_payoffs(opt, out);
        if (enumerate->parsed()) return cmd_enumerate(opt, out);
        if (core->parsed()) return cmd_core(opt, out);
        if (simulate->parsed()) return cmd_simulate(opt, out);
        if (check->parsed()) return cmd_check(opt, out);
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const InvariantBreach& e) {
        err << "invariant breach: " << e.what() << "\n";
        return kExitInvariantBreach;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("coopvanet");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    argv.push_back(nullptr);
    return run_cli(static_cast<int>(storage.size()), argv.data(), out, err);
}

}  // namespace coopvanet
