#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <thread>

#include <json.hpp>

#include "mbt/diagnose.hpp"

namespace httplib {
class Server;
}

namespace mbt {

struct ServiceResponse {
    int http_status = 200;
    nlohmann::json body;
};

/// Request handling shared by the HTTP endpoint and `mbt diagnose --json`.
class DiagnoseService {
public:
    explicit DiagnoseService(std::shared_ptr<TableCache> cache = nullptr);

    ServiceResponse handle(const nlohmann::json& request);
    /// Parses the body first; malformed JSON is a 400.
    ServiceResponse handle_text(const std::string& body);

    TableCache& cache() { return *cache_; }

private:
    std::shared_ptr<TableCache> cache_;
};

/// POST /diagnose and GET /health over HTTP.
class HttpServer {
public:
    explicit HttpServer(std::shared_ptr<DiagnoseService> service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds and serves on a background thread; port 0 picks a free port. Returns the bound port.
    int start(const std::string& host, int port);
    /// Binds and serves on the calling thread until stop().
    bool listen(const std::string& host, int port);
    void stop();

private:
    std::shared_ptr<DiagnoseService> service_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

}  // namespace mbt
