// Command-line front end: parsing, simulation, rewriting, derivations and the session server.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "cliffrw/algorithms.hpp"
#include "cliffrw/error.hpp"
#include "cliffrw/render.hpp"
#include "cliffrw/rewrite/normalize.hpp"
#include "cliffrw/service/json.hpp"
#include "cliffrw/sim/identities.hpp"
#include "cliffrw/sim/sample.hpp"
#include "cliffrw/sim/statevector.hpp"
#include "cliffrw/taxonomy.hpp"
#include "cliffrw/service/http.hpp"

using namespace cliffrw;
using service::Json;

namespace {

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

std::string read_source(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Circuit load(const std::string& path) { return parse_circuit(read_source(path)); }

sim::Backend backend_from(const std::string& name) {
    if (name == "auto") return sim::Backend::Auto;
    if (name == "statevector") return sim::Backend::StateVector;
    return sim::Backend::Tableau;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string format_phase(std::complex<double> z) {
    std::ostringstream ss;
    ss.precision(6);
    ss << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return ss.str();
}

/// Prints each milestone of a scripted derivation, optionally verified and traced.
int print_derivation(rewrite::Derivation& d, const std::vector<std::string>& stages, bool verify, bool trace,
                     bool json) {
    bool ok = true;
    if (verify) ok = d.verify();
    const auto snaps = algorithms::stage_snapshots(d, stages);
    if (json) {
        Json bundle{{"stages", Json::array()}, {"derivation", service::derivation_json(d)}};
        for (std::size_t k = 0; k < stages.size(); ++k) {
            bundle["stages"].push_back({{"name", stages[k]}, {"circuit", service::circuit_json(snaps[k])}});
        }
        if (verify) bundle["all_verified"] = ok;
        if (trace) bundle["trace"] = rewrite::serialize(d);
        print_json(bundle);
    } else {
        for (std::size_t k = 0; k < stages.size(); ++k) {
            std::cout << "== snapshot " << k + 1 << ": " << stages[k] << "\n" << emit_circuit(snaps[k]) << "\n";
        }
        std::cout << "steps: " << d.size() << "\n";
        if (verify) {
            if (ok) {
                std::cout << "all steps equivalent\n";
            } else {
                for (std::size_t k = 0; k < d.size(); ++k) {
                    const auto& s = d.steps()[k];
                    if (s.check != rewrite::StepCheck::Verified) {
                        std::cout << "step " << k + 1 << " " << rewrite::describe(s.match) << ": " << to_string(s.check)
                                  << "\n";
                    }
                }
            }
        }
        if (trace) std::cout << rewrite::serialize(d);
    }
    return ok ? 0 : 1;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const auto v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw ValidationError("'" + item + "' is not an index");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clifford-circuit rewriting and verification"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Emit JSON instead of text");

    std::string file = "-";
    auto add_file = [&file](CLI::App* sub) {
        sub->add_option("-f,--file", file, "CQC source, '-' for standard input")->capture_default_str();
    };

    auto* parse = app.add_subcommand("parse", "Parse and print the canonical CQC text");
    add_file(parse);

    auto* render_cmd = app.add_subcommand("render", "Draw a circuit");
    add_file(render_cmd);
    std::string format = "ascii";
    render_cmd->add_option("--format", format, "ascii or svg")
        ->check(CLI::IsMember({"ascii", "svg"}))
        ->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Exact outcome distribution or final state");
    add_file(simulate);
    std::string backend = "auto";
    simulate->add_option("--backend", backend)->check(CLI::IsMember({"auto", "statevector", "tableau"}));
    std::string input;
    bool show_state = false;
    simulate->add_option("--input", input, "Basis input, highest qubit leftmost");
    simulate->add_flag("--state", show_state, "Print the final statevector instead");

    auto* sample_cmd = app.add_subcommand("sample", "Seeded measurement sampling");
    add_file(sample_cmd);
    std::uint64_t shots = 1024, seed = 1;
    sample_cmd->add_option("--shots", shots)->capture_default_str();
    sample_cmd->add_option("--seed", seed)->capture_default_str();
    sample_cmd->add_option("--backend", backend)->check(CLI::IsMember({"auto", "statevector", "tableau"}));

    auto* equiv = app.add_subcommand("verify-equiv", "Compare two circuits up to global phase");
    std::string file_a, file_b;
    double tol = sim::kEquivalenceTolerance;
    equiv->add_option("a", file_a, "First circuit")->required();
    equiv->add_option("b", file_b, "Second circuit")->required();
    equiv->add_option("--tol", tol)->capture_default_str();

    auto* classify = app.add_subcommand("classify", "Family I/II/III classification with witness");
    add_file(classify);

    auto* rules = app.add_subcommand("rules", "Rule catalogue");
    rules->require_subcommand(1);
    rules->add_subcommand("list", "List every rule");

    auto* apply = app.add_subcommand("apply", "Apply one rule at one site");
    add_file(apply);
    std::string rule_name, at_text, wires_text, direction = "forward", policy = "opaque";
    std::optional<std::size_t> position;
    bool list_only = false;
    apply->add_option("--rule", rule_name)->required();
    apply->add_option("--at", at_text, "Gate indices, comma separated");
    apply->add_option("--wires", wires_text, "Wire list, comma separated");
    apply->add_option("--position", position, "Insertion position");
    apply->add_option("--direction", direction)->check(CLI::IsMember({"forward", "backward"}));
    apply->add_option("--policy", policy)->check(CLI::IsMember({"opaque", "transparent"}));
    apply->add_flag("--list", list_only, "List the matches instead of applying");

    auto* normalize = app.add_subcommand("normalize", "Run a rewrite strategy to its fixpoint");
    add_file(normalize);
    std::string strategy = "full";
    std::optional<std::size_t> budget;
    bool trace = false;
    normalize->add_option("--strategy", strategy)->check(CLI::IsMember({"cancel-only", "push-left", "full"}));
    normalize->add_option("--policy", policy)->check(CLI::IsMember({"opaque", "transparent"}));
    normalize->add_option("--budget", budget);
    normalize->add_flag("--trace", trace, "Print the derivation trace");

    auto* derive = app.add_subcommand("derive", "Scripted BV and DJ derivations");
    derive->require_subcommand(1);
    bool verify = false;
    auto* bv = derive->add_subcommand("bv", "Classical BV circuit to the canonical form");
    std::string secret;
    bv->add_option("--secret", secret)->required();
    auto* dj = derive->add_subcommand("dj", "DJ quadratic oracle to its irreducible phase form");
    for (auto* sub : {bv, dj}) {
        sub->add_flag("--verify", verify, "Check every step up to global phase");
        sub->add_flag("--trace", trace, "Append the derivation trace");
    }

    auto* replay = app.add_subcommand("replay", "Re-run and re-verify a derivation trace");
    add_file(replay);

    auto* identities = app.add_subcommand("identities", "Matrix checks of the basis-rotation identities");

    auto* serve = app.add_subcommand("serve", "Run the session service");
    std::string host = "127.0.0.1";
    int port = 8080;
    serve->add_option("--host", host)->capture_default_str();
    serve->add_option("--port", port)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*parse) {
            const Circuit c = load(file);
            if (json) {
                print_json(service::circuit_json(c));
            } else {
                std::cout << emit_circuit(c) << "\n";
            }
        } else if (*render_cmd) {
            const auto d = render(load(file), format == "svg" ? DiagramFormat::Svg : DiagramFormat::Ascii);
            if (json) {
                print_json({{"format", format}, {"payload", d.payload}});
            } else {
                std::cout << d.payload << (d.payload.ends_with('\n') ? "" : "\n");
            }
        } else if (*simulate) {
            const Circuit c = load(file);
            if (show_state) {
                const auto sv = sim::statevector_run(c, input);
                Json amps = Json::object();
                for (std::uint64_t i = 0; i < sv.amplitudes().size(); ++i) {
                    const auto a = sv[i];
                    if (std::norm(a) < 1e-14) continue;
                    amps[sim::format_bits(i, c.num_qubits())] = {a.real(), a.imag()};
                }
                if (json) {
                    print_json({{"amplitudes", amps}});
                } else {
                    for (const auto& [k, v] : amps.items()) std::cout << k << " " << v[0] << " " << v[1] << "\n";
                }
            } else {
                if (!input.empty()) throw ValidationError("--input needs --state");
                const auto dist = sim::exact_distribution(c, backend_from(backend));
                if (json) {
                    print_json(Json(dist));
                } else {
                    for (const auto& [k, p] : dist) std::cout << k << " " << p << "\n";
                }
            }
        } else if (*sample_cmd) {
            const auto counts = sim::sample(load(file), shots, seed, backend_from(backend));
            if (json) {
                print_json(Json(counts));
            } else {
                for (const auto& [k, n] : counts) std::cout << k << " " << n << "\n";
            }
        } else if (*equiv) {
            const auto r = sim::equivalent_up_to_phase(load(file_a).without_measurements(),
                                                       load(file_b).without_measurements(), tol);
            if (json) {
                print_json(service::equivalence_json(r));
            } else if (r.equivalent) {
                std::cout << "equivalent, global phase " << format_phase(r.global_phase) << "\n";
            } else {
                std::cout << "not equivalent, max deviation " << r.max_deviation << "\n";
            }
        } else if (*classify) {
            const auto v = taxonomy::classify(load(file));
            if (json) {
                print_json(service::verdict_json(v));
            } else {
                std::cout << "family " << v.label() << "\n";
                if (v.frame) std::cout << "frame " << taxonomy::to_string(*v.frame) << "\n";
                if (v.reduced) std::cout << "reduced:\n" << emit_circuit(*v.reduced) << "\n";
                if (!v.cut.empty()) {
                    std::cout << "witness: input " << v.input << ", cut {";
                    for (std::size_t k = 0; k < v.cut.size(); ++k) std::cout << (k ? "," : "") << "q" << v.cut[k];
                    std::cout << "}, rank " << v.rank << "\n";
                }
                for (const auto& n : v.notes) std::cout << "note: " << n << "\n";
            }
        } else if (*rules) {
            Json all = Json::array();
            for (auto r : rewrite::all_rules()) all.push_back(service::rule_json(r));
            if (json) {
                print_json(all);
            } else {
                for (const auto& r : all) {
                    std::cout << r["name"].get<std::string>() << ": " << r["pattern"].get<std::string>() << " => "
                              << r["replacement"].get<std::string>()
                              << (r["state_dependent"].get<bool>() ? "  [state-dependent]" : "") << "\n";
                }
            }
        } else if (*apply) {
            const Circuit c = load(file);
            Json req{{"rule", rule_name}, {"direction", direction}, {"policy", policy}};
            if (!at_text.empty()) req["at"] = parse_indices(at_text);
            if (!wires_text.empty()) req["wires"] = parse_indices(wires_text);
            if (position) req["position"] = *position;
            const auto want = service::match_from_json(req);
            const auto found = rewrite::find_matches(c, want.rule, want.policy, want.direction);
            if (list_only) {
                Json ms = Json::array();
                for (const auto& m : found) ms.push_back(service::match_json(m));
                if (json) {
                    print_json(ms);
                } else {
                    for (const auto& m : found) std::cout << rewrite::describe(m) << "\n";
                }
                return 0;
            }
            auto it = std::find_if(found.begin(), found.end(), [&](const rewrite::Match& m) {
                return (at_text.empty() || m.gate_indices == want.gate_indices) &&
                       (wires_text.empty() || m.wires == want.wires) && (!position || m.position == want.position);
            });
            if (it == found.end()) throw Error(rule_name + " does not match at the requested site");
            rewrite::Derivation d(c);
            d.apply(*it);
            d.verify();
            const auto& step = d.steps().back();
            if (json) {
                print_json({{"circuit", service::circuit_json(d.current())}, {"step", service::step_json(step, 1)}});
            } else {
                std::cout << emit_circuit(d.current()) << "\n# " << service::badge(step.check) << "\n";
            }
            if (step.check == rewrite::StepCheck::Failed) return 1;
        } else if (*normalize) {
            rewrite::NormalizeOptions opts;
            opts.policy = *rewrite::policy_from_string(policy);
            opts.budget = budget;
            auto r = rewrite::normalize(load(file), *rewrite::strategy_from_string(strategy), opts);
            if (json) {
                Json out{{"circuit", service::circuit_json(r.circuit)}, {"steps", r.derivation.size()}};
                if (trace) out["trace"] = rewrite::serialize(r.derivation);
                print_json(out);
            } else {
                std::cout << emit_circuit(r.circuit) << "\n";
                if (trace) std::cout << rewrite::serialize(r.derivation);
            }
        } else if (*derive) {
            if (*bv) {
                auto d = algorithms::derive_bv_chain(secret);
                return print_derivation(d, algorithms::bv_stage_names(), verify, trace, json);
            }
            auto d = algorithms::derive_dj_reduction();
            const int rc = print_derivation(d, algorithms::dj_stage_names(), verify, trace, json);
            if (!json) {
                std::cout << "phase oracle:\n" << emit_circuit(algorithms::extract_phase_oracle(d.current(), 3)) << "\n";
            }
            return rc;
        } else if (*replay) {
            auto d = rewrite::parse_derivation(read_source(file));
            const auto bad = rewrite::replay_mismatch(d);
            const bool ok = bad == 0 && d.verify();
            if (json) {
                print_json({{"replay_mismatch", bad}, {"all_verified", ok}, {"derivation", service::derivation_json(d)}});
            } else if (bad != 0) {
                std::cout << "step " << bad << " does not reproduce its snapshot\n";
            } else {
                std::cout << d.size() << " steps replayed, " << (ok ? "all steps equivalent" : "verification failed")
                          << "\n";
            }
            return ok ? 0 : 1;
        } else if (*identities) {
            const auto checks = sim::check_parity_identities();
            const auto rxx = sim::derive_rxx_factorization();
            bool ok = rxx.found;
            Json out = Json::array();
            for (const auto& c : checks) {
                ok = ok && c.holds;
                out.push_back(service::identity_json(c));
            }
            if (json) {
                print_json({{"identities", out},
                            {"rxx", {{"found", rxx.found},
                                     {"rxx_angle", rxx.rxx_angle},
                                     {"rx0_angle", rxx.rx0_angle},
                                     {"rx1_angle", rxx.rx1_angle},
                                     {"deviation", rxx.deviation}}},
                            {"all_pass", ok}});
            } else {
                for (const auto& c : checks) {
                    std::cout << (c.holds ? "pass " : "FAIL ") << c.name << " (deviation " << c.deviation << ")\n";
                }
                std::cout << (rxx.found ? "pass " : "FAIL ") << "RXX factorization: rxx=" << rxx.rxx_angle
                          << " rx0=" << rxx.rx0_angle << " rx1=" << rxx.rx1_angle << " phase "
                          << format_phase(rxx.global_phase) << "\n";
            }
            return ok ? 0 : 1;
        } else if (*serve) {
            service::SessionService svc;
            service::HttpServer server(svc);
            const int bound = server.bind(host, port);
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::atomic<bool> done{false};
            std::thread watcher([&] {
                while (!g_stop && !done) std::this_thread::sleep_for(std::chrono::milliseconds(100));
                server.stop();
            });
            std::cerr << "listening on " << host << ":" << bound << "\n";
            server.listen();
            done = true;
            watcher.join();
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
