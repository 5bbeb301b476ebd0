#pragma once

// HTTP/JSON surface of the platform.  `Api::handle` is transport-free so it
// can be exercised directly; HttpServer binds it to cpp-httplib.

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "entrex/platform.hpp"

namespace entrex::platform {

struct HttpRequest {
    std::string method;
    std::string path;  ///< already percent-decoded
    std::map<std::string, std::string> query;
    std::string authorization;  ///< "Bearer <token>" or a bare token
    std::string body;
};

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

int http_status(ErrorCode code) noexcept;

class Api {
public:
    explicit Api(Platform& platform) : platform_(platform) {}

    HttpResponse handle(const HttpRequest& request) const;

private:
    Platform& platform_;
};

/// cpp-httplib binding of an Api: every /api/* GET, POST and PUT is
/// forwarded to Api::handle.
class HttpServer {
public:
    explicit HttpServer(Api& api);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds to `port` (0 picks a free one) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace entrex::platform
