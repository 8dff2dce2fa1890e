#pragma once

#include <cstdint>
#include <string>

#include "recon/messages.hpp"

namespace recon::net {

/// Owning socket descriptor.
class Socket {
public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    ~Socket();

    int fd() const { return fd_; }
    bool valid() const { return fd_ >= 0; }

private:
    int fd_ = -1;
};

/// Binds and listens on the port (0 picks an ephemeral one); bound_port
/// receives the actual port.
Socket listen_on(std::uint16_t port, std::uint16_t& bound_port);

/// Blocks for one inbound connection.
Socket accept_one(const Socket& listener);

Socket connect_to(const std::string& host, std::uint16_t port);

/// Writes one length-prefixed frame.
void send_message(const Socket& socket, const ProtocolMessage& msg);

/// Reads one length-prefixed frame and decodes it. Throws std::runtime_error
/// on EOF or I/O failure, std::invalid_argument on malformed frames.
ProtocolMessage recv_message(const Socket& socket);

} // namespace recon::net
