#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recon/bits.hpp"
#include "recon/messages.hpp"
#include "recon/parity_check_matrix.hpp"
#include "recon/rate_adapt.hpp"

namespace recon {

/// Session configuration shared by both roles. Alice uses the modulation
/// parameters and checks the design range; Bob adopts the parameters from
/// the Start message and uses the decoder knobs.
struct ProtocolConfig {
    ModulationParams params;
    double e0 = 0.0; // design crossover range [e0, e1]
    double e1 = 0.0;
    std::size_t max_iters = 100;
    /// Fixed decoder crossover; when absent each round decodes with the
    /// capacity-matched value for its rate, clamped to [e0, e1].
    std::optional<double> assumed_crossover;
};

enum class TerminalStatus { Running, Success, Failure };

/// Alice holds the key, reserves and punctures delta*n positions, sends the
/// syndrome, and converts punctured symbols to shortened after each Nack.
class AliceSession {
public:
    /// Requires key length n - floor(delta*n) and, when delta > 0, that
    /// [e0, e1] lies inside the achievable rate range.
    AliceSession(const ParityCheckMatrix& code, const ProtocolConfig& config, Bits key,
                 std::uint64_t session_seed);

    /// The opening Start message. Call once.
    ProtocolMessage start();

    /// Feeds Bob's reply; returns the next message to send, if any.
    std::optional<ProtocolMessage> on_message(const ProtocolMessage& msg);

    /// Reveal for the next round, or Abort when the rate is exhausted.
    ProtocolMessage on_nack();
    void on_ack();

    TerminalStatus status() const { return status_; }
    unsigned round() const { return round_; }
    std::size_t disclosed_bits() const { return disclosed_; }
    const Frame& frame() const { return frame_; }
    const RoundSchedule& schedule() const { return schedule_; }

private:
    ProtocolMessage abort_failure(const std::string& reason);

    const ParityCheckMatrix& code_;
    ProtocolConfig config_;
    Bits key_;
    std::uint64_t session_seed_;
    RoundSchedule schedule_;
    Frame frame_;
    unsigned round_ = 0;
    std::size_t disclosed_ = 0;
    bool started_ = false;
    TerminalStatus status_ = TerminalStatus::Running;
};

/// Bob holds the correlated observation, decodes after Start and after each
/// Reveal, and feeds back Ack or Nack. Everything he needs beyond his own
/// observation arrives in the messages.
class BobSession {
public:
    /// observed holds Bob's side of the correlated key (length n - floor(delta*n)).
    BobSession(const ParityCheckMatrix& code, const ProtocolConfig& config, Bits observed);

    /// Handles Start, Reveal, or Abort. Returns Ack, Nack, or Abort; no
    /// reply to a peer Abort. Peer violations produce an Abort reply, not an
    /// exception.
    std::optional<ProtocolMessage> on_message(const ProtocolMessage& msg);

    TerminalStatus status() const { return status_; }
    unsigned round() const { return round_; }
    std::size_t disclosed_bits() const { return disclosed_; }
    const Bits& decoded_key() const { return decoded_key_; }
    /// Full length-n word of the successful decode, for external syndrome checks.
    const Bits& decoded_word() const { return decoded_word_; }
    const std::string& abort_reason() const { return abort_reason_; }

private:
    ProtocolMessage decode_and_reply();
    ProtocolMessage abort_failure(const std::string& reason);

    const ParityCheckMatrix& code_;
    ProtocolConfig config_;
    Bits observed_;
    ModulationParams params_;
    RoundSchedule schedule_;
    Frame frame_;
    Bits target_syndrome_;
    Bits decoded_key_;
    Bits decoded_word_;
    std::string abort_reason_;
    unsigned round_ = 0;
    std::size_t disclosed_ = 0;
    bool started_ = false;
    TerminalStatus status_ = TerminalStatus::Running;
};

struct SessionResult {
    bool success = false;
    unsigned rounds_used = 0;
    std::size_t final_punctured = 0;
    std::size_t final_shortened = 0;
    double final_pi = 0.0;
    double final_sigma = 0.0;
    double final_rate = 0.0;
    std::size_t disclosed_bits = 0;
    std::optional<Bits> decoded_key;
    /// Ground-truth errors of the decoded key; simulator-only.
    std::optional<std::size_t> residual_errors;
    std::string abort_reason;
};

/// Drives both state machines over an in-process transport until terminal.
/// When transcript is non-null every exchanged message is appended to it.
SessionResult run_session(const Bits& alice_key, const Bits& bob_observed,
                          const ParityCheckMatrix& code, const ProtocolConfig& config,
                          std::uint64_t session_seed,
                          std::vector<ProtocolMessage>* transcript = nullptr);

} // namespace recon
