#include "net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

namespace recon::net {

namespace {

constexpr std::size_t kMaxFrameBytes = 64 * 1024 * 1024;

[[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error(what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::uint8_t* data, std::size_t size) {
    while (size > 0) {
        const ssize_t written = ::write(fd, data, size);
        if (written < 0) {
            if (errno == EINTR) {
                continue;
            }
            fail("write");
        }
        data += written;
        size -= static_cast<std::size_t>(written);
    }
}

void read_all(int fd, std::uint8_t* data, std::size_t size) {
    while (size > 0) {
        const ssize_t got = ::read(fd, data, size);
        if (got < 0) {
            if (errno == EINTR) {
                continue;
            }
            fail("read");
        }
        if (got == 0) {
            throw std::runtime_error("connection closed mid-frame");
        }
        data += got;
        size -= static_cast<std::size_t>(got);
    }
}

} // namespace

Socket& Socket::operator=(Socket&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) {
            ::close(fd_);
        }
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

Socket::~Socket() {
    if (fd_ >= 0) {
        ::close(fd_);
    }
}

Socket listen_on(std::uint16_t port, std::uint16_t& bound_port) {
    Socket sock(::socket(AF_INET, SOCK_STREAM, 0));
    if (!sock.valid()) {
        fail("socket");
    }
    const int one = 1;
    ::setsockopt(sock.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(sock.fd(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) < 0) {
        fail("bind");
    }
    if (::listen(sock.fd(), 1) < 0) {
        fail("listen");
    }
    socklen_t len = sizeof addr;
    if (::getsockname(sock.fd(), reinterpret_cast<sockaddr*>(&addr), &len) < 0) {
        fail("getsockname");
    }
    bound_port = ntohs(addr.sin_port);
    return sock;
}

Socket accept_one(const Socket& listener) {
    for (;;) {
        const int fd = ::accept(listener.fd(), nullptr, nullptr);
        if (fd >= 0) {
            return Socket(fd);
        }
        if (errno != EINTR) {
            fail("accept");
        }
    }
}

Socket connect_to(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &result);
    if (rc != 0) {
        throw std::runtime_error(std::string("getaddrinfo: ") + gai_strerror(rc));
    }
    Socket sock;
    for (addrinfo* entry = result; entry; entry = entry->ai_next) {
        Socket candidate(::socket(entry->ai_family, entry->ai_socktype, entry->ai_protocol));
        if (!candidate.valid()) {
            continue;
        }
        if (::connect(candidate.fd(), entry->ai_addr, entry->ai_addrlen) == 0) {
            sock = std::move(candidate);
            break;
        }
    }
    ::freeaddrinfo(result);
    if (!sock.valid()) {
        throw std::runtime_error("cannot connect to " + host + ":" + std::to_string(port));
    }
    return sock;
}

void send_message(const Socket& socket, const ProtocolMessage& msg) {
    const auto frame = frame_message(msg);
    write_all(socket.fd(), frame.data(), frame.size());
}

ProtocolMessage recv_message(const Socket& socket) {
    std::uint8_t header[4];
    read_all(socket.fd(), header, sizeof header);
    std::size_t payload = 0;
    for (const auto byte : header) {
        payload = (payload << 8) | byte;
    }
    if (payload > kMaxFrameBytes) {
        throw std::invalid_argument("frame length exceeds limit");
    }
    std::vector<std::uint8_t> body(1 + payload);
    read_all(socket.fd(), body.data(), body.size());
    return decode_message(body);
}

} // namespace recon::net
