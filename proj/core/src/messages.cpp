#include "recon/messages.hpp"

#include <bit>
#include <stdexcept>

namespace recon {

namespace {

constexpr std::uint32_t kMaxCodeLength = 100000000;

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) {
    out.push_back(v);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

class Reader {
public:
    Reader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

    std::uint8_t u8() { return data_[need(1)]; }

    std::uint16_t u16() {
        const std::size_t at = need(2);
        return static_cast<std::uint16_t>((data_[at] << 8) | data_[at + 1]);
    }

    std::uint32_t u32() {
        const std::size_t at = need(4);
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            v = (v << 8) | data_[at + i];
        }
        return v;
    }

    std::uint64_t u64() {
        const std::size_t at = need(8);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            v = (v << 8) | data_[at + i];
        }
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    std::vector<std::uint8_t> bytes(std::size_t count) {
        const std::size_t at = need(count);
        return {data_ + at, data_ + at + count};
    }

    std::size_t remaining() const { return size_ - pos_; }

private:
    std::size_t need(std::size_t count) {
        if (size_ - pos_ < count) {
            throw std::invalid_argument("message: truncated payload");
        }
        const std::size_t at = pos_;
        pos_ += count;
        return at;
    }

    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

} // namespace

MessageType message_type(const ProtocolMessage& msg) {
    return static_cast<MessageType>(msg.index());
}

std::vector<std::uint8_t> encode_message(const ProtocolMessage& msg) {
    std::vector<std::uint8_t> out;
    put_u8(out, static_cast<std::uint8_t>(message_type(msg)));
    if (const auto* start = std::get_if<StartMessage>(&msg)) {
        if (start->syndrome.size() != start->m) {
            throw std::invalid_argument("message: syndrome length must equal m");
        }
        put_u32(out, start->n);
        put_u32(out, start->m);
        put_f64(out, start->r0);
        put_f64(out, start->delta);
        put_u16(out, start->q_rounds);
        put_u64(out, start->position_seed);
        const auto packed = pack_bits(start->syndrome);
        out.insert(out.end(), packed.begin(), packed.end());
    } else if (const auto* reveal = std::get_if<RevealMessage>(&msg)) {
        put_u16(out, reveal->round);
        put_u32(out, static_cast<std::uint32_t>(reveal->entries.size()));
        for (const auto& [pos, bit] : reveal->entries) {
            put_u32(out, pos);
            put_u8(out, bit & 1U);
        }
    } else if (const auto* abort = std::get_if<AbortMessage>(&msg)) {
        out.insert(out.end(), abort->reason.begin(), abort->reason.end());
    }
    return out;
}

ProtocolMessage decode_message(const std::uint8_t* data, std::size_t size) {
    if (size == 0) {
        throw std::invalid_argument("message: empty body");
    }
    Reader in(data + 1, size - 1);
    switch (data[0]) {
    case static_cast<std::uint8_t>(MessageType::Start): {
        StartMessage start;
        start.n = in.u32();
        start.m = in.u32();
        start.r0 = in.f64();
        start.delta = in.f64();
        start.q_rounds = in.u16();
        start.position_seed = in.u64();
        if (start.n == 0 || start.n > kMaxCodeLength || start.m == 0 || start.m >= start.n) {
            throw std::invalid_argument("message: start dimensions out of range");
        }
        const std::size_t packed = (static_cast<std::size_t>(start.m) + 7) / 8;
        if (in.remaining() != packed) {
            throw std::invalid_argument("message: syndrome byte count mismatch");
        }
        start.syndrome = unpack_bits(in.bytes(packed), start.m);
        return start;
    }
    case static_cast<std::uint8_t>(MessageType::Reveal): {
        RevealMessage reveal;
        reveal.round = in.u16();
        const std::uint32_t count = in.u32();
        if (in.remaining() != static_cast<std::size_t>(count) * 5) {
            throw std::invalid_argument("message: reveal entry bytes mismatch");
        }
        reveal.entries.reserve(count);
        for (std::uint32_t i = 0; i < count; ++i) {
            const std::uint32_t pos = in.u32();
            const std::uint8_t bit = in.u8();
            if (bit > 1) {
                throw std::invalid_argument("message: reveal bit out of range");
            }
            if (!reveal.entries.empty() && reveal.entries.back().first >= pos) {
                throw std::invalid_argument("message: reveal positions not strictly ascending");
            }
            reveal.entries.push_back({pos, bit});
        }
        return reveal;
    }
    case static_cast<std::uint8_t>(MessageType::Ack):
        if (in.remaining() != 0) {
            throw std::invalid_argument("message: ack carries no payload");
        }
        return AckMessage{};
    case static_cast<std::uint8_t>(MessageType::Nack):
        if (in.remaining() != 0) {
            throw std::invalid_argument("message: nack carries no payload");
        }
        return NackMessage{};
    case static_cast<std::uint8_t>(MessageType::Abort): {
        const auto bytes = in.bytes(in.remaining());
        return AbortMessage{std::string(bytes.begin(), bytes.end())};
    }
    default:
        throw std::invalid_argument("message: unknown type tag");
    }
}

ProtocolMessage decode_message(const std::vector<std::uint8_t>& body) {
    return decode_message(body.data(), body.size());
}

std::vector<std::uint8_t> frame_message(const ProtocolMessage& msg) {
    const auto body = encode_message(msg);
    std::vector<std::uint8_t> frame;
    frame.reserve(4 + body.size());
    put_u32(frame, static_cast<std::uint32_t>(body.size() - 1));
    frame.insert(frame.end(), body.begin(), body.end());
    return frame;
}

} // namespace recon
