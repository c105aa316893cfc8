#include "mock_server.hpp"

#include <httplib.h>

#include <stdexcept>

namespace pqa::test {

MockServer::MockServer() : server_(std::make_unique<httplib::Server>()) {}

MockServer::~MockServer() {
    server_->stop();
    if (thread_.joinable()) thread_.join();
}

void MockServer::start() {
    port_ = server_->bind_to_any_port("127.0.0.1");
    if (port_ < 0) throw std::runtime_error("mock server failed to bind");
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

std::string MockServer::url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
}

}  // namespace pqa::test
