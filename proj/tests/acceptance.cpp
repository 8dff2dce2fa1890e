// Acceptance gate: one pass/fail line per criterion, exit code = failures.
// argv[1] is the path to the CLI binary (used by the schedule and sweep
// criteria); everything else runs in-process against the library.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "recon/bits.hpp"
#include "recon/channel.hpp"
#include "recon/decoder.hpp"
#include "recon/degree_distribution.hpp"
#include "recon/messages.hpp"
#include "recon/metrics.hpp"
#include "recon/parity_check_matrix.hpp"
#include "recon/peg.hpp"
#include "recon/prng.hpp"
#include "recon/protocol.hpp"
#include "recon/rate_adapt.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CommandResult {
    int status = -1;
    std::string output;
};

CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        return result;
    }
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        result.output.append(buf, got);
    }
    const int raw = pclose(pipe);
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return result;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> fields;
    std::string current;
    for (const char c : text) {
        if (c == sep) {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Criterion {
    bool pass = false;
    std::string detail;
};

// 1. The schedule command reproduces the reference table at n = 2e5.
Criterion schedule_golden(const std::string& cli) {
    const auto t0 = Clock::now();
    const auto run = run_command(cli + " schedule --n 200000 --r0 0.6 --delta 0.1"
                                       " --rounds 6 --csv");
    const double elapsed = seconds_since(t0);
    if (run.status != 0) {
        return {false, "schedule command exited with status " + std::to_string(run.status)};
    }
    std::istringstream lines(run.output);
    std::string line;
    if (!std::getline(lines, line) || line != "round,delta,pi_star,sigma_star,p,s,R0,R") {
        return {false, "unexpected CSV header: " + line};
    }
    const long expected_s[7] = {0, 3334, 6668, 10001, 13334, 16667, 20000};
    const int expected_rate_pct[7] = {67, 65, 63, 61, 59, 57, 56};
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 8 || rows >= 7) {
            return {false, "malformed CSV row: " + line};
        }
        const long p = std::strtol(fields[4].c_str(), nullptr, 10);
        const long s = std::strtol(fields[5].c_str(), nullptr, 10);
        const double rate = std::strtod(fields[7].c_str(), nullptr);
        if (p + s != 20000) {
            return {false, "row " + std::to_string(rows) + ": p + s != 20000"};
        }
        if (std::labs(s - expected_s[rows]) > 2) {
            return {false, "row " + std::to_string(rows) + ": s = " + std::to_string(s) +
                               " not within 2 of " + std::to_string(expected_s[rows])};
        }
        if (std::lround(rate * 100.0) != expected_rate_pct[rows]) {
            return {false, "row " + std::to_string(rows) + ": rate " + fields[7] +
                               " rounds away from the reference"};
        }
        ++rows;
    }
    if (rows != 7) {
        return {false, "expected 7 schedule rows, got " + std::to_string(rows)};
    }
    if (elapsed >= 1.0) {
        return {false, "took " + std::to_string(elapsed) + " s (budget 1 s)"};
    }
    return {true, ""};
}

// 2. execution_efficiency reproduces the reference efficiencies.
Criterion efficiency_golden() {
    const auto t0 = Clock::now();
    const struct {
        double e;
        double pi;
        double f;
    } rows[] = {
        {0.055, 0.0995, 1.08664}, {0.060, 0.0813, 1.08144}, {0.065, 0.0607, 1.08651},
        {0.070, 0.0480, 1.06883}, {0.075, 0.0270, 1.07841}, {0.080, 0.0167, 1.05895},
    };
    for (const auto& row : rows) {
        const double f = recon::execution_efficiency(0.6, 0.1, row.pi, row.e);
        if (std::fabs(f - row.f) > 5e-4) {
            char msg[128];
            std::snprintf(msg, sizeof msg, "e=%.3f: f=%.6f vs reference %.5f", row.e, f,
                          row.f);
            return {false, msg};
        }
    }
    if (seconds_since(t0) >= 1.0) {
        return {false, "efficiency evaluation exceeded 1 s"};
    }
    return {true, ""};
}

// 3. The per-round efficiency line agrees with the closed form.
Criterion round_line_consistency() {
    const double q_step = 0.1 / 6.0;
    for (const double e : {0.06, 0.07, 0.08}) {
        const auto line = recon::round_efficiency_params(0.6, 0.1, q_step, e);
        for (unsigned j = 0; j <= 6; ++j) {
            const double pi = 0.1 - static_cast<double>(j) * q_step;
            const double direct = recon::execution_efficiency(0.6, 0.1, pi, e);
            const double from_line = line.f0 + static_cast<double>(j) * line.epsilon;
            if (std::fabs(direct - from_line) > 1e-12) {
                char msg[128];
                std::snprintf(msg, sizeof msg, "e=%.2f j=%u: |%.17g - %.17g| > 1e-12", e, j,
                              from_line, direct);
                return {false, msg};
            }
        }
    }
    return {true, ""};
}

// 4. Exact rate bounds, plus capacity crossings inside the quoted brackets.
Criterion rate_bounds_brackets() {
    const auto [r_min, r_max] = recon::rate_bounds(0.6, 0.1);
    if (std::fabs(r_min - 5.0 / 9.0) > 1e-12 || std::fabs(r_max - 2.0 / 3.0) > 1e-12) {
        return {false, "rate_bounds(0.6, 0.1) is not (5/9, 2/3)"};
    }
    const double e_max_cross = recon::binary_entropy_inverse(1.0 - r_max);
    const double e_min_cross = recon::binary_entropy_inverse(1.0 - r_min);
    std::string detail;
    bool pass = true;
    if (!(e_max_cross > 0.060 && e_max_cross < 0.063)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "R_max crossing %.6f outside (0.060, 0.063)",
                      e_max_cross);
        detail = msg;
        pass = false;
    }
    if (!(e_min_cross > 0.093 && e_min_cross < 0.096)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "R_min crossing measured at %.6f, outside the"
                                       " quoted (0.093, 0.096)",
                      e_min_cross);
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += msg;
        pass = false;
    }
    return {pass, detail};
}

// 5. Exhaustive weight <= 1 decoding on a hand-built code.
Criterion decoder_oracle() {
    const auto t0 = Clock::now();
    // Point-line incidence of the affine plane of order 3: 12 columns, 9 rows,
    // girth 6, full rank, so all 13 weight <= 1 syndromes are distinct.
    const int lines[12][3] = {
        {0, 3, 6}, {1, 4, 7}, {2, 5, 8}, {0, 1, 2}, {3, 4, 5}, {6, 7, 8},
        {0, 4, 8}, {2, 3, 7}, {1, 5, 6}, {0, 5, 7}, {1, 3, 8}, {2, 4, 6},
    };
    recon::ParityCheckMatrix h;
    h.n = 12;
    h.rows.resize(9);
    for (std::uint32_t line = 0; line < 12; ++line) {
        for (const int point : lines[line]) {
            h.rows[static_cast<std::size_t>(point)].push_back(line);
        }
    }
    for (auto& row : h.rows) {
        std::sort(row.begin(), row.end());
    }
    recon::validate(h);

    // Confirm syndrome uniqueness over all weight <= 1 patterns.
    std::set<recon::Bits> syndromes;
    for (int flip = -1; flip < static_cast<int>(h.n); ++flip) {
        recon::Bits pattern(h.n, 0);
        if (flip >= 0) {
            pattern[static_cast<std::size_t>(flip)] = 1;
        }
        if (!syndromes.insert(recon::syndrome(h, pattern).bits).second) {
            return {false, "weight <= 1 syndromes are not unique on the hand-built code"};
        }
    }

    recon::Xoshiro256StarStar rng(5);
    for (const bool zero_word : {true, false}) {
        recon::Bits truth(h.n, 0);
        if (!zero_word) {
            truth = recon::random_bits(h.n, rng);
        }
        const auto target = recon::syndrome(h, truth);
        for (int flip = -1; flip < static_cast<int>(h.n); ++flip) {
            recon::Bits observed = truth;
            if (flip >= 0) {
                observed[static_cast<std::size_t>(flip)] ^= 1U;
            }
            const auto llrs = recon::init_llrs(observed, 0.05, {}, {});
            const auto result = recon::decode_syndrome(h, llrs, target);
            if (result.outcome != recon::DecodeOutcome::Converged || result.word != truth) {
                char msg[96];
                std::snprintf(msg, sizeof msg, "flip %d (%s word) did not decode to truth",
                              flip, zero_word ? "zero" : "random");
                return {false, msg};
            }
        }
    }
    if (seconds_since(t0) >= 10.0) {
        return {false, "exhaustive decoding exceeded 10 s"};
    }
    return {true, ""};
}

// Shared state between criteria 6 and 7.
struct PointSummary {
    double crossover = 0.0;
    std::size_t successes = 0;
    std::size_t zero_residual = 0;
    double mean_rounds = 0.0;
    double rounds_variance = 0.0; // sample variance
    std::vector<double> success_pi;
};

struct SessionBatch {
    bool accounting_ok = true;
    std::string first_violation;
    std::array<PointSummary, 3> points;
};

// 6. Run 200 sessions per crossover, checking the per-success invariants.
SessionBatch run_session_batch() {
    SessionBatch batch;
    const auto code = recon::build_peg_code(2000, recon::default_distribution(), 1);
    recon::ProtocolConfig cfg;
    cfg.params = recon::make_modulation_params(2000, 0.6, 0.1, 6);
    cfg.e0 = 0.062;
    cfg.e1 = 0.092;
    const auto schedule = recon::build_schedule(cfg.params);
    const double crossovers[3] = {0.055, 0.065, 0.075};
    const std::size_t trials = 200;
    const std::uint64_t master_seed = 1;

    auto note_violation = [&batch](const std::string& what) {
        batch.accounting_ok = false;
        if (batch.first_violation.empty()) {
            batch.first_violation = what;
        }
    };

    for (std::size_t point = 0; point < 3; ++point) {
        auto& summary = batch.points[point];
        summary.crossover = crossovers[point];
        const std::uint64_t point_seed = recon::derive_seed(master_seed, point);
        std::vector<double> rounds_used;
        rounds_used.reserve(trials);
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const std::uint64_t trial_seed = recon::derive_seed(point_seed, trial);
            const auto [alice_key, bob_observed] = recon::generate_key_pair(
                cfg.params.key_length(),
                {crossovers[point], recon::derive_seed(trial_seed, 0)});
            recon::AliceSession alice(code, cfg, alice_key,
                                      recon::derive_seed(trial_seed, 1));
            recon::BobSession bob(code, cfg, bob_observed);
            std::optional<recon::ProtocolMessage> outbound = alice.start();
            const auto start = std::get<recon::StartMessage>(*outbound);
            while (outbound) {
                const auto reply = bob.on_message(*outbound);
                if (!reply) {
                    break;
                }
                outbound = alice.on_message(*reply);
            }
            rounds_used.push_back(static_cast<double>(bob.round()));

            const bool success = alice.status() == recon::TerminalStatus::Success &&
                                 bob.status() == recon::TerminalStatus::Success;
            if (!success) {
                continue;
            }
            ++summary.successes;
            const auto& row = schedule.rows[alice.round()];
            // (a) independent syndrome verification and exact disclosure count.
            if (recon::syndrome(code, bob.decoded_word()).bits != start.syndrome) {
                note_violation("success without a matching syndrome");
            }
            const std::size_t expected_disclosed = 800 + row.shortened; // n(1 - R0) = 800
            if (alice.disclosed_bits() != expected_disclosed ||
                bob.disclosed_bits() != expected_disclosed) {
                note_violation("disclosed bits differ from m + s_final");
            }
            // (b) ground-truth residual errors.
            if (recon::hamming_distance(bob.decoded_key(), alice_key) == 0) {
                ++summary.zero_residual;
            }
            summary.success_pi.push_back(static_cast<double>(row.punctured) / 2000.0);
        }
        double sum = 0.0;
        for (const double r : rounds_used) {
            sum += r;
        }
        summary.mean_rounds = sum / static_cast<double>(rounds_used.size());
        double ss = 0.0;
        for (const double r : rounds_used) {
            ss += (r - summary.mean_rounds) * (r - summary.mean_rounds);
        }
        summary.rounds_variance = ss / static_cast<double>(rounds_used.size() - 1);
    }
    return batch;
}

Criterion protocol_properties(const SessionBatch& batch, double elapsed) {
    if (!batch.accounting_ok) {
        return {false, batch.first_violation};
    }
    std::size_t successes = 0;
    std::size_t zero_residual = 0;
    for (const auto& point : batch.points) {
        successes += point.successes;
        zero_residual += point.zero_residual;
    }
    if (successes == 0) {
        return {false, "no successful session in 600 trials"};
    }
    if (static_cast<double>(zero_residual) < 0.99 * static_cast<double>(successes)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "only %zu of %zu successes were residual-free",
                      zero_residual, successes);
        return {false, msg};
    }
    // (c) mean rounds must not decrease with the crossover; tolerate one
    // inversion within two standard errors of the difference.
    int inversions = 0;
    for (std::size_t i = 0; i + 1 < batch.points.size(); ++i) {
        const auto& a = batch.points[i];
        const auto& b = batch.points[i + 1];
        if (b.mean_rounds >= a.mean_rounds) {
            continue;
        }
        ++inversions;
        const double sigma = std::sqrt(a.rounds_variance / 200.0 + b.rounds_variance / 200.0);
        if (inversions > 1 || a.mean_rounds - b.mean_rounds > 2.0 * sigma) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "mean rounds %.4f @ e=%.3f vs %.4f @ e=%.3f breaks monotonicity",
                          a.mean_rounds, a.crossover, b.mean_rounds, b.crossover);
            return {false, msg};
        }
    }
    if (elapsed >= 600.0) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "session batch took %.1f s (budget 600 s)", elapsed);
        return {false, msg};
    }
    char msg[160];
    std::snprintf(msg, sizeof msg, "N_hat = %.3f / %.3f / %.3f, %zu/%zu residual-free",
                  batch.points[0].mean_rounds, batch.points[1].mean_rounds,
                  batch.points[2].mean_rounds, zero_residual, successes);
    return {true, msg};
}

// 7. Interactive efficiency beats the static minimum-rate configuration.
Criterion interactive_vs_static(const SessionBatch& batch) {
    const auto& point = batch.points[1]; // e = 0.065
    if (point.success_pi.empty()) {
        return {false, "no successful session at e = 0.065"};
    }
    double sum_f = 0.0;
    for (const double pi : point.success_pi) {
        sum_f += recon::execution_efficiency(0.6, 0.1, pi, 0.065);
    }
    const double mean_f = sum_f / static_cast<double>(point.success_pi.size());
    const auto [r_min, r_max] = recon::rate_bounds(0.6, 0.1);
    (void)r_max;
    const double static_f = (1.0 - r_min) / recon::binary_entropy(0.065);
    char msg[128];
    std::snprintf(msg, sizeof msg, "interactive %.6f vs static %.6f", mean_f, static_f);
    return {mean_f < static_f, msg};
}

// 8. Sweep determinism: identical CSV across reruns and thread counts.
Criterion sweep_determinism(const std::string& cli) {
    const std::string dir = "/tmp";
    const std::string prefix =
        dir + "/recon_accept_" + std::to_string(static_cast<long>(getpid()));
    const std::string base = cli + " sweep --n 2000 --code-seed 1 --delta 0.1 --rounds 6"
                                   " --e0 0.062 --e1 0.092 --grid 0.065,0.075"
                                   " --trials 30 --seed 9";
    const std::string file_a = prefix + "_a.csv";
    const std::string file_b = prefix + "_b.csv";
    const std::string file_c = prefix + "_c.csv";
    const auto run_a = run_command(base + " --threads 1 --out " + file_a);
    const auto run_b = run_command(base + " --threads 1 --out " + file_b);
    const auto run_c = run_command(base + " --threads 4 --out " + file_c);
    const std::string a = read_file(file_a);
    const std::string b = read_file(file_b);
    const std::string c = read_file(file_c);
    std::remove(file_a.c_str());
    std::remove(file_b.c_str());
    std::remove(file_c.c_str());
    if (run_a.status != 0 || run_b.status != 0 || run_c.status != 0) {
        return {false, "a sweep command exited with a nonzero status"};
    }
    if (a.empty() || a.find("e,M,N_hat") != 0) {
        return {false, "sweep CSV is empty or malformed"};
    }
    if (a != b) {
        return {false, "two identical serial sweeps produced different CSV bytes"};
    }
    if (a != c) {
        return {false, "serial and parallel sweeps produced different CSV bytes"};
    }
    return {true, ""};
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s /path/to/cli\n", argv[0]);
        return 64;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";

    int failures = 0;
    auto report = [&failures](int index, const char* name, const Criterion& c) {
        if (c.pass) {
            std::printf("PASS criterion %d: %s%s%s\n", index, name,
                        c.detail.empty() ? "" : " - ", c.detail.c_str());
        } else {
            ++failures;
            std::printf("FAIL criterion %d: %s - %s\n", index, name, c.detail.c_str());
        }
        std::fflush(stdout);
    };

    report(1, "schedule golden values", schedule_golden(cli));
    report(2, "efficiency formula golden values", efficiency_golden());
    report(3, "per-round efficiency line consistency", round_line_consistency());
    report(4, "rate bounds and capacity crossings", rate_bounds_brackets());
    report(5, "exhaustive decoder oracle", decoder_oracle());

    const auto batch_start = Clock::now();
    const auto batch = run_session_batch();
    const double batch_elapsed = seconds_since(batch_start);
    report(6, "protocol correctness properties", protocol_properties(batch, batch_elapsed));
    report(7, "interactive vs static efficiency", interactive_vs_static(batch));
    report(8, "sweep determinism", sweep_determinism(cli));

    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures;
}
