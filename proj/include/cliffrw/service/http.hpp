#pragma once

#include <memory>
#include <string>

#include "cliffrw/service/session.hpp"

namespace cliffrw::service {

/// Serves a SessionService over HTTP.
class HttpServer {
public:
    explicit HttpServer(SessionService& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds the listening socket; port 0 picks a free port. Returns the port.
    /// Throws Error when the address cannot be bound.
    int bind(const std::string& host, int port);
    /// Serves until stop() is called. Requires a successful bind().
    void listen();
    /// Safe to call from another thread.
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cliffrw::service
