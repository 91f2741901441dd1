#include "mbt/service.hpp"

#include <chrono>

#include <httplib.h>

#include "mbt/error.hpp"
#include "mbt/table_io.hpp"

namespace mbt {

using nlohmann::json;

namespace {

ServiceResponse failure(int status, const std::string& reason) {
    return {status, json{{"status", "error"}, {"reason", reason}}};
}

struct BadRequest {
    std::string reason;
};

std::string required_string(const json& req, const char* name) {
    auto it = req.find(name);
    if (it == req.end() || !it->is_string()) throw BadRequest{std::string("field '") + name + "' must be a string"};
    std::string v = it->get<std::string>();
    if (v.empty()) throw BadRequest{std::string("field '") + name + "' must not be empty"};
    return v;
}

std::uint64_t required_count(const json& v, const char* name) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw BadRequest{std::string("field '") + name + "' must be a nonnegative integer"};
    return v.get<std::uint64_t>();
}

}  // namespace

DiagnoseService::DiagnoseService(std::shared_ptr<TableCache> cache)
    : cache_(cache ? std::move(cache) : make_table_cache()) {}

ServiceResponse DiagnoseService::handle_text(const std::string& body) {
    json req = json::parse(body, nullptr, false);
    if (req.is_discarded()) return failure(400, "request body is not valid JSON");
    return handle(req);
}

ServiceResponse DiagnoseService::handle(const json& req) {
    auto start = std::chrono::steady_clock::now();
    std::string domain_id, task_text, input_text;
    std::optional<std::string> previous;
    std::shared_ptr<const DomainContract> domain;
    SearchConfig cfg;
    try {
        if (!req.is_object()) throw BadRequest{"request must be a JSON object"};
        domain_id = required_string(req, "domain_id");
        task_text = required_string(req, "task");
        input_text = required_string(req, "input");
        if (auto it = req.find("previous_input"); it != req.end() && !it->is_null()) {
            if (!it->is_string()) throw BadRequest{"field 'previous_input' must be a string"};
            previous = it->get<std::string>();
        }
        try {
            domain = find_domain(domain_id);
        } catch (const DomainError& e) {
            return failure(422, e.what());
        }
        cfg = default_config(*domain);
        if (auto it = req.find("mode"); it != req.end()) {
            if (!it->is_string()) throw BadRequest{"field 'mode' must be a string"};
            try {
                cfg.mode = parse_search_mode(it->get<std::string>());
            } catch (const DomainError& e) {
                throw BadRequest{e.what()};
            }
        }
        if (auto it = req.find("reduce_limit"); it != req.end()) {
            cfg.reduce_limit = required_count(*it, "reduce_limit");
            if (cfg.reduce_limit == 0) throw BadRequest{"field 'reduce_limit' must be positive"};
        }
        if (auto it = req.find("max_buggy_applications"); it != req.end()) {
            if (it->is_null()) cfg.max_buggy_applications.reset();
            else cfg.max_buggy_applications = static_cast<std::uint32_t>(required_count(*it, "max_buggy_applications"));
        }
    } catch (const BadRequest& e) {
        return failure(400, e.reason);
    }

    json body;
    try {
        Term task = domain->parse(task_text);
        Term input = domain->parse(input_text);
        std::optional<Term> prev;
        if (previous) prev = domain->parse(*previous);
        if (prev) {
            if (auto rule = try_single_rule(*prev, input, *domain)) body["single_rule"] = *rule;
        }
        DiagnosisResult r = diagnose(task, input, *domain, cfg, cache_.get());
        body["status"] = to_string(r.kind);
        body["table_cache"] = r.cache_hit ? "hit" : "miss";
        if (r.completed) body["completed_final_answer"] = r.completed->encode();
        if (r.kind == DiagnosisResult::Kind::diagnosed) {
            body["alternatives"] = r.alternative_names();
            json labels = json::array();
            for (const auto& alt : r.alternative_names()) {
                json names = json::array();
                for (const auto& g : alt) {
                    auto it = std::find(r.groups.begin(), r.groups.end(), g);
                    names.push_back(domain->rules->group_label(static_cast<std::size_t>(it - r.groups.begin())));
                }
                labels.push_back(names);
            }
            body["alternative_labels"] = labels;
        }
        if (r.kind == DiagnosisResult::Kind::failed) body["reason"] = r.reason;
    } catch (const BudgetExceeded& e) {
        return failure(503, e.what());
    } catch (const Error& e) {
        return failure(422, e.what());
    }
    body["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return {200, body};
}

HttpServer::HttpServer(std::shared_ptr<DiagnoseService> service)
    : service_(std::move(service)), server_(std::make_unique<httplib::Server>()) {
    server_->Post("/diagnose", [this](const httplib::Request& req, httplib::Response& res) {
        ServiceResponse r = service_->handle_text(req.body);
        res.status = r.http_status;
        res.set_content(r.body.dump(), "application/json");
    });
    server_->Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"status":"ok"})", "application/json");
    });
}

HttpServer::~HttpServer() {
    stop();
}

int HttpServer::start(const std::string& host, int port) {
    int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return bound;
}

bool HttpServer::listen(const std::string& host, int port) {
    return server_->listen(host, port);
}

void HttpServer::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace mbt
