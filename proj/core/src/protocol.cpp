#include "recon/protocol.hpp"

#include <stdexcept>

#include "recon/decoder.hpp"
#include "recon/prng.hpp"

namespace recon {

namespace {

// Session-seed streams.
constexpr std::uint64_t kPositionStream = 0;
constexpr std::uint64_t kPunctureFillStream = 1;
constexpr std::uint64_t kConvertStreamBase = 2;

void check_design_range(const ProtocolConfig& config) {
    if (!(config.e0 >= 0.0 && config.e0 <= config.e1 && config.e1 < 0.5)) {
        throw std::invalid_argument("protocol config: need 0 <= e0 <= e1 < 0.5");
    }
    if (config.params.delta > 0.0 &&
        !range_check(config.params.r0, config.params.delta, config.e0, config.e1)) {
        throw std::invalid_argument(
            "protocol config: modulated rates cannot cover [e0, e1]");
    }
}

} // namespace

AliceSession::AliceSession(const ParityCheckMatrix& code, const ProtocolConfig& config,
                           Bits key, std::uint64_t session_seed)
    : code_(code), config_(config), key_(std::move(key)), session_seed_(session_seed) {
    if (code_.n != config_.params.n) {
        throw std::invalid_argument("alice: code length does not match params");
    }
    check_design_range(config_);
    if (key_.size() != config_.params.key_length()) {
        throw std::invalid_argument("alice: key length must be n - floor(delta*n)");
    }
    schedule_ = build_schedule(config_.params);
}

ProtocolMessage AliceSession::start() {
    if (started_) {
        throw std::logic_error("alice: start called twice");
    }
    started_ = true;
    const std::uint64_t position_seed = derive_seed(session_seed_, kPositionStream);
    const auto reserved = draw_reserved_positions(code_.n, config_.params.reserved_count(),
                                                  position_seed);
    frame_ = assemble_frame(key_, reserved, {}, derive_seed(session_seed_, kPunctureFillStream));
    const auto z = syndrome(code_, frame_.values);
    disclosed_ = z.bits.size();

    StartMessage msg;
    msg.n = static_cast<std::uint32_t>(code_.n);
    msg.m = static_cast<std::uint32_t>(code_.m());
    msg.r0 = config_.params.r0;
    msg.delta = config_.params.delta;
    msg.q_rounds = static_cast<std::uint16_t>(config_.params.q_rounds);
    msg.position_seed = position_seed;
    msg.syndrome = z.bits;
    return msg;
}

ProtocolMessage AliceSession::abort_failure(const std::string& reason) {
    status_ = TerminalStatus::Failure;
    return AbortMessage{reason};
}

ProtocolMessage AliceSession::on_nack() {
    if (!started_ || status_ != TerminalStatus::Running) {
        throw std::logic_error("alice: nack outside a running session");
    }
    if (round_ >= config_.params.q_rounds) {
        return abort_failure("rate exhausted");
    }
    const std::size_t step =
        schedule_.rows[round_ + 1].shortened - schedule_.rows[round_].shortened;
    auto [converted, reveal] = convert_to_shortened(
        frame_, step, derive_seed(session_seed_, kConvertStreamBase + round_));
    frame_ = std::move(converted);
    ++round_;
    disclosed_ += reveal.size();

    RevealMessage msg;
    msg.round = static_cast<std::uint16_t>(round_);
    msg.entries = std::move(reveal);
    return msg;
}

void AliceSession::on_ack() {
    if (!started_ || status_ != TerminalStatus::Running) {
        throw std::logic_error("alice: ack outside a running session");
    }
    status_ = TerminalStatus::Success;
}

std::optional<ProtocolMessage> AliceSession::on_message(const ProtocolMessage& msg) {
    switch (message_type(msg)) {
    case MessageType::Ack:
        on_ack();
        return std::nullopt;
    case MessageType::Nack:
        return on_nack();
    case MessageType::Abort:
        status_ = TerminalStatus::Failure;
        return std::nullopt;
    default:
        return abort_failure("unexpected message type");
    }
}

BobSession::BobSession(const ParityCheckMatrix& code, const ProtocolConfig& config,
                       Bits observed)
    : code_(code), config_(config), observed_(std::move(observed)) {
    if (!(config_.e0 >= 0.0 && config_.e0 <= config_.e1 && config_.e1 < 0.5)) {
        throw std::invalid_argument("bob: need 0 <= e0 <= e1 < 0.5");
    }
    if (config_.assumed_crossover &&
        !(*config_.assumed_crossover > 0.0 && *config_.assumed_crossover < 0.5)) {
        throw std::invalid_argument("bob: assumed crossover outside (0, 0.5)");
    }
}

ProtocolMessage BobSession::abort_failure(const std::string& reason) {
    status_ = TerminalStatus::Failure;
    abort_reason_ = reason;
    return AbortMessage{reason};
}

ProtocolMessage BobSession::decode_and_reply() {
    const double rate = schedule_.rows[round_].rate;
    const double assumed = config_.assumed_crossover
                               ? *config_.assumed_crossover
                               : capacity_matched_crossover(rate, config_.e0, config_.e1);
    const auto llrs = init_llrs(frame_.values, assumed, punctured_positions(frame_),
                                shortened_entries(frame_));
    const auto result =
        decode_syndrome(code_, llrs, Syndrome{target_syndrome_}, config_.max_iters);
    if (result.syndrome_matched) {
        decoded_word_ = result.word;
        Frame decoded = frame_;
        decoded.values = decoded_word_;
        decoded_key_ = extract_key(decoded);
        status_ = TerminalStatus::Success;
        return AckMessage{};
    }
    if (round_ < params_.q_rounds) {
        return NackMessage{};
    }
    return abort_failure("rate exhausted");
}

std::optional<ProtocolMessage> BobSession::on_message(const ProtocolMessage& msg) {
    if (status_ != TerminalStatus::Running) {
        return abort_failure("message after terminal state");
    }
    switch (message_type(msg)) {
    case MessageType::Start: {
        if (started_) {
            return abort_failure("duplicate start");
        }
        const auto& start = std::get<StartMessage>(msg);
        if (start.n != code_.n || start.m != code_.m()) {
            return abort_failure("start dimensions do not match the code");
        }
        ModulationParams params;
        try {
            params = make_modulation_params(start.n, start.r0, start.delta, start.q_rounds);
        } catch (const std::invalid_argument&) {
            return abort_failure("unusable modulation parameters");
        }
        if (observed_.size() != params.key_length()) {
            return abort_failure("observation length does not match parameters");
        }
        started_ = true;
        params_ = params;
        schedule_ = build_schedule(params_);
        const auto reserved =
            draw_reserved_positions(code_.n, params_.reserved_count(), start.position_seed);
        frame_ = assemble_frame(observed_, reserved, Bits(reserved.size(), 0), 0);
        target_syndrome_ = start.syndrome;
        disclosed_ = target_syndrome_.size();
        return decode_and_reply();
    }
    case MessageType::Reveal: {
        if (!started_) {
            return abort_failure("reveal before start");
        }
        const auto& reveal = std::get<RevealMessage>(msg);
        if (reveal.round != round_ + 1 || reveal.round > params_.q_rounds) {
            return abort_failure("reveal for an unexpected round");
        }
        const std::size_t expected = schedule_.rows[reveal.round].shortened -
                                     schedule_.rows[round_].shortened;
        if (reveal.entries.size() != expected) {
            return abort_failure("reveal entry count mismatch");
        }
        try {
            apply_reveal(frame_, reveal.entries);
        } catch (const std::invalid_argument&) {
            return abort_failure("reveal touches a non-punctured position");
        }
        ++round_;
        disclosed_ += reveal.entries.size();
        return decode_and_reply();
    }
    case MessageType::Abort:
        status_ = TerminalStatus::Failure;
        abort_reason_ = std::get<AbortMessage>(msg).reason;
        return std::nullopt;
    default:
        return abort_failure("unexpected message type");
    }
}

SessionResult run_session(const Bits& alice_key, const Bits& bob_observed,
                          const ParityCheckMatrix& code, const ProtocolConfig& config,
                          std::uint64_t session_seed,
                          std::vector<ProtocolMessage>* transcript) {
    AliceSession alice(code, config, alice_key, session_seed);
    BobSession bob(code, config, bob_observed);

    auto record = [transcript](const ProtocolMessage& msg) {
        if (transcript) {
            transcript->push_back(msg);
        }
    };

    std::optional<ProtocolMessage> outbound = alice.start();
    record(*outbound);
    // Start, then at most (Ack|Nack + Reveal) per round, plus a terminal reply.
    const std::size_t message_cap = 2 * (static_cast<std::size_t>(config.params.q_rounds) + 1) + 1;
    std::size_t messages = 1;
    while (outbound) {
        auto reply = bob.on_message(*outbound);
        if (!reply) {
            break;
        }
        record(*reply);
        outbound = alice.on_message(*reply);
        if (outbound) {
            record(*outbound);
        }
        messages += 2;
        if (messages > message_cap) {
            throw std::logic_error("run_session: message cap exceeded");
        }
    }

    SessionResult result;
    result.success = alice.status() == TerminalStatus::Success &&
                     bob.status() == TerminalStatus::Success;
    result.rounds_used = bob.round();
    const auto& row = alice.schedule().rows[alice.round()];
    result.final_punctured = row.punctured;
    result.final_shortened = row.shortened;
    const auto n = static_cast<double>(code.n);
    result.final_pi = static_cast<double>(row.punctured) / n;
    result.final_sigma = static_cast<double>(row.shortened) / n;
    result.final_rate = row.rate;
    result.disclosed_bits = alice.disclosed_bits();
    result.abort_reason = bob.abort_reason();
    if (result.success) {
        result.decoded_key = bob.decoded_key();
        result.residual_errors = hamming_distance(bob.decoded_key(), alice_key);
    }
    return result;
}

} // namespace recon
