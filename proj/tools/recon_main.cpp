#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "recon/alist.hpp"
#include "recon/channel.hpp"
#include "recon/degree_distribution.hpp"
#include "recon/metrics.hpp"
#include "recon/peg.hpp"
#include "recon/prng.hpp"
#include "recon/protocol.hpp"
#include "recon/sweep.hpp"

#include "net.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitToolError = 1;
constexpr int kExitProtocolFailure = 2;

struct CodeOptions {
    std::string code_path;
    std::size_t n = 2000;
    std::string dist = "default";
    std::uint64_t code_seed = 1;
};

void add_code_options(CLI::App* cmd, CodeOptions& opts) {
    cmd->add_option("--code", opts.code_path, "Load the parity-check matrix from an alist file");
    cmd->add_option("--n", opts.n, "Code length when building a code")->capture_default_str();
    cmd->add_option("--dist", opts.dist,
                    "Degree distribution: builtin name or file path")
        ->capture_default_str();
    cmd->add_option("--code-seed", opts.code_seed, "Construction seed when building a code")
        ->capture_default_str();
}

recon::ParityCheckMatrix resolve_code(const CodeOptions& opts) {
    if (!opts.code_path.empty()) {
        return recon::load_alist_file(opts.code_path);
    }
    return recon::build_peg_code(opts.n, recon::distribution_by_name(opts.dist), opts.code_seed);
}

double realized_rate(const recon::ParityCheckMatrix& code) {
    return 1.0 - static_cast<double>(code.m()) / static_cast<double>(code.n);
}

recon::Bits read_bits_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    recon::Bits bits;
    char c = 0;
    while (in.get(c)) {
        if (c == '0' || c == '1') {
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw std::runtime_error(path + ": expected only 0/1 characters");
        }
    }
    return bits;
}

void write_bits_file(const std::string& path, const recon::Bits& bits) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    for (const auto bit : bits) {
        out.put(bit ? '1' : '0');
    }
    out.put('\n');
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::map<std::size_t, std::size_t> degree_histogram(
    const std::vector<std::vector<std::uint32_t>>& adjacency) {
    std::map<std::size_t, std::size_t> histogram;
    for (const auto& node : adjacency) {
        ++histogram[node.size()];
    }
    return histogram;
}

std::string histogram_line(const std::map<std::size_t, std::size_t>& histogram) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [degree, count] : histogram) {
        if (!first) {
            out << ", ";
        }
        out << count << " x degree " << degree;
        first = false;
    }
    return out.str();
}

struct SessionOptions {
    CodeOptions code;
    double delta = 0.1;
    unsigned rounds = 6;
    double e0 = 0.062;
    double e1 = 0.092;
    std::size_t max_iters = 100;
    std::optional<double> assumed_crossover;
};

recon::ProtocolConfig make_protocol_config(const recon::ParityCheckMatrix& code,
                                           const SessionOptions& opts) {
    recon::ProtocolConfig config;
    config.params =
        recon::make_modulation_params(code.n, realized_rate(code), opts.delta, opts.rounds);
    config.e0 = opts.e0;
    config.e1 = opts.e1;
    config.max_iters = opts.max_iters;
    config.assumed_crossover = opts.assumed_crossover;
    return config;
}

void print_session_result(const recon::SessionResult& result, double crossover,
                          const recon::ProtocolConfig& config) {
    std::printf("status %s\n", result.success ? "success" : "failure");
    std::printf("rounds %u\n", result.rounds_used);
    std::printf("final_p %zu\nfinal_s %zu\n", result.final_punctured, result.final_shortened);
    std::printf("final_pi %.6f\nfinal_sigma %.6f\nfinal_rate %.6f\n", result.final_pi,
                result.final_sigma, result.final_rate);
    std::printf("disclosed_bits %zu\n", result.disclosed_bits);
    if (result.success && crossover > 0.0) {
        std::printf("efficiency %.5f\n",
                    recon::execution_efficiency(config.params.r0, config.params.delta,
                                                result.final_pi, crossover));
    }
    if (result.residual_errors) {
        std::printf("residual_errors %zu\n", *result.residual_errors);
    }
    if (!result.abort_reason.empty()) {
        std::printf("abort_reason %s\n", result.abort_reason.c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind rate-adaptive reconciliation over LDPC syndrome coding"};
    app.require_subcommand(1);
    int exit_code = kExitOk;

    // build-code
    struct {
        CodeOptions code;
        std::string out = "code.alist";
    } build_opts;
    auto* build = app.add_subcommand("build-code", "Construct a code and write it as alist");
    build->set_config("--config");
    add_code_options(build, build_opts.code);
    build->add_option("--out", build_opts.out, "Output alist path")->capture_default_str();
    build->callback([&]() {
        const auto dist = recon::distribution_by_name(build_opts.code.dist);
        const auto code =
            recon::build_peg_code(build_opts.code.n, dist, build_opts.code.code_seed);
        recon::save_alist_file(code, build_opts.out);
        std::printf("n %zu\nm %zu\nedges %zu\nrate %.6f\n", code.n, code.m(), code.edge_count(),
                    realized_rate(code));
        std::printf("column degrees: %s\n",
                    histogram_line(degree_histogram(recon::column_adjacency(code))).c_str());
        std::printf("row degrees: %s\n", histogram_line(degree_histogram(code.rows)).c_str());
        std::printf("wrote %s\n", build_opts.out.c_str());
    });

    // schedule
    struct {
        std::size_t n = 2000;
        double r0 = 0.6;
        double delta = 0.1;
        unsigned rounds = 6;
        bool csv = false;
    } sched_opts;
    auto* sched = app.add_subcommand("schedule", "Print the per-round modulation schedule");
    sched->set_config("--config");
    sched->add_option("--n", sched_opts.n, "Mother-code length")->capture_default_str();
    sched->add_option("--r0", sched_opts.r0, "Design rate")->capture_default_str();
    sched->add_option("--delta", sched_opts.delta, "Modulation fraction")->capture_default_str();
    sched->add_option("--rounds", sched_opts.rounds, "Maximum extra rounds Q")
        ->capture_default_str();
    sched->add_flag("--csv", sched_opts.csv, "Emit CSV instead of an aligned table");
    sched->callback([&]() {
        const auto params = recon::make_modulation_params(sched_opts.n, sched_opts.r0,
                                                          sched_opts.delta, sched_opts.rounds);
        const auto schedule = recon::build_schedule(params);
        const auto reserved = static_cast<double>(params.reserved_count());
        if (sched_opts.csv) {
            std::printf("round,delta,pi_star,sigma_star,p,s,R0,R\n");
        } else {
            std::printf("%5s %8s %8s %8s %10s %10s %6s %10s\n", "round", "delta", "pi*", "sigma*",
                        "p", "s", "R0", "R");
        }
        for (const auto& row : schedule.rows) {
            const double pi_star =
                reserved > 0 ? static_cast<double>(row.punctured) / reserved : 0.0;
            const double sigma_star =
                reserved > 0 ? static_cast<double>(row.shortened) / reserved : 0.0;
            if (sched_opts.csv) {
                std::printf("%u,%g,%.6f,%.6f,%zu,%zu,%g,%.6f\n", row.round, params.delta,
                            pi_star, sigma_star, row.punctured, row.shortened, params.r0,
                            row.rate);
            } else {
                std::printf("%5u %8g %8.2f %8.2f %10zu %10zu %6g %10.6f\n", row.round,
                            params.delta, pi_star, sigma_star, row.punctured, row.shortened,
                            params.r0, row.rate);
            }
        }
    });

    // run
    struct {
        SessionOptions session;
        double crossover = 0.065;
        std::uint64_t seed = 1;
        std::string emit_pair;
    } run_opts;
    auto* run = app.add_subcommand("run", "Run one seeded in-process session");
    run->set_config("--config");
    add_code_options(run, run_opts.session.code);
    run->add_option("--delta", run_opts.session.delta, "Modulation fraction")
        ->capture_default_str();
    run->add_option("--rounds", run_opts.session.rounds, "Maximum extra rounds Q")
        ->capture_default_str();
    run->add_option("--e0", run_opts.session.e0, "Design range lower crossover")
        ->capture_default_str();
    run->add_option("--e1", run_opts.session.e1, "Design range upper crossover")
        ->capture_default_str();
    run->add_option("--max-iters", run_opts.session.max_iters, "Decoder iteration cap")
        ->capture_default_str();
    run->add_option("--assumed-crossover", run_opts.session.assumed_crossover,
                    "Fixed decoder crossover (default: capacity-matched per round)");
    run->add_option("--crossover", run_opts.crossover, "True channel crossover")
        ->capture_default_str();
    run->add_option("--seed", run_opts.seed, "Trial seed")->capture_default_str();
    run->add_option("--emit-pair", run_opts.emit_pair,
                    "Write the key pair to PREFIX.alice and PREFIX.bob");
    run->callback([&]() {
        const auto code = resolve_code(run_opts.session.code);
        const auto config = make_protocol_config(code, run_opts.session);
        const auto [alice_key, bob_observed] = recon::generate_key_pair(
            config.params.key_length(),
            {run_opts.crossover, recon::derive_seed(run_opts.seed, 0)});
        if (!run_opts.emit_pair.empty()) {
            write_bits_file(run_opts.emit_pair + ".alice", alice_key);
            write_bits_file(run_opts.emit_pair + ".bob", bob_observed);
        }
        const auto result = recon::run_session(alice_key, bob_observed, code, config,
                                               recon::derive_seed(run_opts.seed, 1));
        std::printf("crossover %g\n", run_opts.crossover);
        print_session_result(result, run_opts.crossover, config);
        if (!result.success) {
            exit_code = kExitProtocolFailure;
        }
    });

    // sweep
    struct {
        SessionOptions session;
        std::vector<double> grid = {0.055, 0.060, 0.065, 0.070, 0.075, 0.080};
        std::size_t trials = 200;
        std::uint64_t seed = 1;
        unsigned threads = 0;
        std::string out = "-";
    } sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over a crossover grid");
    sweep->set_config("--config");
    add_code_options(sweep, sweep_opts.session.code);
    sweep->add_option("--delta", sweep_opts.session.delta, "Modulation fraction")
        ->capture_default_str();
    sweep->add_option("--rounds", sweep_opts.session.rounds, "Maximum extra rounds Q")
        ->capture_default_str();
    sweep->add_option("--e0", sweep_opts.session.e0, "Design range lower crossover")
        ->capture_default_str();
    sweep->add_option("--e1", sweep_opts.session.e1, "Design range upper crossover")
        ->capture_default_str();
    sweep->add_option("--max-iters", sweep_opts.session.max_iters, "Decoder iteration cap")
        ->capture_default_str();
    sweep->add_option("--assumed-crossover", sweep_opts.session.assumed_crossover,
                      "Fixed decoder crossover (default: capacity-matched per round)");
    sweep->add_option("--grid", sweep_opts.grid, "Comma-separated crossover grid")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--trials", sweep_opts.trials, "Sessions per grid point")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_opts.seed, "Master seed")->capture_default_str();
    sweep->add_option("--threads", sweep_opts.threads, "Worker threads (0 = hardware)")
        ->capture_default_str();
    sweep->add_option("--out", sweep_opts.out, "CSV output path, - for stdout")
        ->capture_default_str();
    sweep->callback([&]() {
        const auto code = resolve_code(sweep_opts.session.code);
        recon::SweepConfig config;
        config.protocol = make_protocol_config(code, sweep_opts.session);
        config.grid = sweep_opts.grid;
        config.trials = sweep_opts.trials;
        config.master_seed = sweep_opts.seed;
        config.threads = sweep_opts.threads;
        const auto points = recon::run_sweep(code, config);
        write_text_file(sweep_opts.out, recon::sweep_csv(points));
    });

    // serve
    struct {
        std::string code_path;
        std::string key_file;
        std::uint16_t port = 0;
        double e0 = 0.062;
        double e1 = 0.092;
        std::size_t max_iters = 100;
        std::optional<double> assumed_crossover;
    } serve_opts;
    auto* serve = app.add_subcommand("serve", "Answer one reconciliation session over TCP");
    serve->set_config("--config");
    serve->add_option("--code", serve_opts.code_path, "Alist file with the shared code")
        ->required();
    serve->add_option("--key-file", serve_opts.key_file, "File with the observed key bits")
        ->required();
    serve->add_option("--port", serve_opts.port, "Listen port, 0 for ephemeral")
        ->capture_default_str();
    serve->add_option("--e0", serve_opts.e0, "Design range lower crossover")
        ->capture_default_str();
    serve->add_option("--e1", serve_opts.e1, "Design range upper crossover")
        ->capture_default_str();
    serve->add_option("--max-iters", serve_opts.max_iters, "Decoder iteration cap")
        ->capture_default_str();
    serve->add_option("--assumed-crossover", serve_opts.assumed_crossover,
                      "Fixed decoder crossover (default: capacity-matched per round)");
    serve->callback([&]() {
        const auto code = recon::load_alist_file(serve_opts.code_path);
        recon::ProtocolConfig config;
        config.e0 = serve_opts.e0;
        config.e1 = serve_opts.e1;
        config.max_iters = serve_opts.max_iters;
        config.assumed_crossover = serve_opts.assumed_crossover;
        recon::BobSession bob(code, config, read_bits_file(serve_opts.key_file));

        std::uint16_t port = 0;
        const auto listener = recon::net::listen_on(serve_opts.port, port);
        std::printf("listening on %u\n", port);
        std::fflush(stdout);
        const auto peer = recon::net::accept_one(listener);
        while (bob.status() == recon::TerminalStatus::Running) {
            const auto msg = recon::net::recv_message(peer);
            const auto reply = bob.on_message(msg);
            if (reply) {
                recon::net::send_message(peer, *reply);
            }
        }
        std::printf("status %s\n",
                    bob.status() == recon::TerminalStatus::Success ? "success" : "failure");
        std::printf("rounds %u\n", bob.round());
        std::printf("disclosed_bits %zu\n", bob.disclosed_bits());
        if (!bob.abort_reason().empty()) {
            std::printf("abort_reason %s\n", bob.abort_reason().c_str());
        }
        if (bob.status() != recon::TerminalStatus::Success) {
            exit_code = kExitProtocolFailure;
        }
    });

    // connect
    struct {
        std::string code_path;
        std::string key_file;
        std::string host = "127.0.0.1";
        std::uint16_t port = 0;
        double delta = 0.1;
        unsigned rounds = 6;
        double e0 = 0.062;
        double e1 = 0.092;
        std::uint64_t seed = 1;
    } connect_opts;
    auto* connect = app.add_subcommand("connect", "Open a reconciliation session over TCP");
    connect->set_config("--config");
    connect->add_option("--code", connect_opts.code_path, "Alist file with the shared code")
        ->required();
    connect->add_option("--key-file", connect_opts.key_file, "File with the key bits")
        ->required();
    connect->add_option("--host", connect_opts.host, "Peer host")->capture_default_str();
    connect->add_option("--port", connect_opts.port, "Peer port")->required();
    connect->add_option("--delta", connect_opts.delta, "Modulation fraction")
        ->capture_default_str();
    connect->add_option("--rounds", connect_opts.rounds, "Maximum extra rounds Q")
        ->capture_default_str();
    connect->add_option("--e0", connect_opts.e0, "Design range lower crossover")
        ->capture_default_str();
    connect->add_option("--e1", connect_opts.e1, "Design range upper crossover")
        ->capture_default_str();
    connect->add_option("--seed", connect_opts.seed,
                        "Trial seed; matches `run --seed` on the same key pair")
        ->capture_default_str();
    connect->callback([&]() {
        const auto code = recon::load_alist_file(connect_opts.code_path);
        recon::ProtocolConfig config;
        config.params = recon::make_modulation_params(code.n, realized_rate(code),
                                                      connect_opts.delta, connect_opts.rounds);
        config.e0 = connect_opts.e0;
        config.e1 = connect_opts.e1;
        recon::AliceSession alice(code, config, read_bits_file(connect_opts.key_file),
                                  recon::derive_seed(connect_opts.seed, 1));
        const auto peer = recon::net::connect_to(connect_opts.host, connect_opts.port);
        recon::net::send_message(peer, alice.start());
        while (alice.status() == recon::TerminalStatus::Running) {
            const auto msg = recon::net::recv_message(peer);
            const auto reply = alice.on_message(msg);
            if (reply) {
                recon::net::send_message(peer, *reply);
            }
        }
        std::printf("status %s\n",
                    alice.status() == recon::TerminalStatus::Success ? "success" : "failure");
        std::printf("rounds %u\n", alice.round());
        std::printf("disclosed_bits %zu\n", alice.disclosed_bits());
        if (alice.status() != recon::TerminalStatus::Success) {
            exit_code = kExitProtocolFailure;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitToolError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitToolError;
    }
    return exit_code;
}
