#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "recon/bits.hpp"

namespace recon {

enum class MessageType : std::uint8_t {
    Start = 0,
    Reveal = 1,
    Ack = 2,
    Nack = 3,
    Abort = 4,
};

/// Session opener: code dimensions, modulation parameters, the seed both
/// parties use to derive the reserved positions, and the full syndrome.
struct StartMessage {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    double r0 = 0.0;
    double delta = 0.0;
    std::uint16_t q_rounds = 0;
    std::uint64_t position_seed = 0;
    Bits syndrome;
};

/// Values of punctured symbols converted to shortened when entering `round`.
/// Entries are (position, bit), strictly ascending by position.
struct RevealMessage {
    std::uint16_t round = 0;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> entries;
};

struct AckMessage {};

struct NackMessage {};

struct AbortMessage {
    std::string reason;
};

using ProtocolMessage =
    std::variant<StartMessage, RevealMessage, AckMessage, NackMessage, AbortMessage>;

MessageType message_type(const ProtocolMessage& msg);

/// Body bytes: type tag, then the payload. Integers are big-endian; doubles
/// are IEEE 754 bit patterns, big-endian; the syndrome is bit-packed
/// MSB-first with a zero-padded final byte.
std::vector<std::uint8_t> encode_message(const ProtocolMessage& msg);

/// Inverse of encode_message. Throws std::invalid_argument on unknown tags,
/// truncated or oversized payloads, unsorted or duplicate reveal positions,
/// or out-of-range fields.
ProtocolMessage decode_message(const std::uint8_t* data, std::size_t size);
ProtocolMessage decode_message(const std::vector<std::uint8_t>& body);

/// Wire frame: big-endian u32 payload length (tag excluded), the tag, then
/// the payload.
std::vector<std::uint8_t> frame_message(const ProtocolMessage& msg);

} // namespace recon
