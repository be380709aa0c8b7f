// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/review/server.hpp"

#include <httplib.h>

#include "medforge/common/error.hpp"

namespace medforge::review {

int http_status_for(const std::string& kind) {
  if (kind == "UnknownTask" || kind == "UnknownUnit") return 404;
  if (kind == "AlreadyDecided" || kind == "ClaimConflict" || kind == "DuplicateTask") return 409;
  if (kind == "AlignmentError" || kind == "InvalidState" || kind == "SchemaError") return 422;
  return 400;
}

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json j = Json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("request body is not a JSON object");
  return j;
}

std::string reviewer_of(const httplib::Request& req, const Json& body) {
  if (body.contains("reviewer_tag") && body["reviewer_tag"].is_string()) {
    return body["reviewer_tag"].get<std::string>();
  }
  return req.get_header_value("X-Reviewer-Tag");
}

template <class Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_json(res, http_status_for(e.kind()), e.to_json());
    } catch (const Json::exception& e) {
      send_json(res, 400, {{"error", "BadRequest"}, {"message", e.what()}});
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", "Internal"}, {"message", e.what()}});
    }
  };
}

std::size_t size_param(const httplib::Request& req, const char* name, std::size_t fallback) {
  if (!req.has_param(name)) return fallback;
  const auto v = req.get_param_value(name);
  try {
    std::size_t used = 0;
    const auto n = std::stoul(v, &used);
    if (used == v.size()) return n;
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string("query parameter '") + name + "' must be a positive integer");
}

}  // namespace

ReviewServer::ReviewServer(ReviewStore& store) : store_(store), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                         {"Access-Control-Allow-Headers", "Content-Type, X-Reviewer-Tag"}});
  s.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  s.Get("/tasks", guarded([this](const httplib::Request& req, httplib::Response& res) {
          TaskFilter f;
          if (req.has_param("state") && !req.get_param_value("state").empty()) {
            f.state = task_state_from_string(req.get_param_value("state"));
          }
          if (req.has_param("reason") && !req.get_param_value("reason").empty()) {
            f.reason = reason_from_string(req.get_param_value("reason"));
          }
          f.page = size_param(req, "page", 1);
          f.page_size = size_param(req, "page_size", f.page_size);
          const auto page = store_.list_tasks(f);
          Json tasks = Json::array();
          for (const auto& v : page.tasks) tasks.push_back(to_json(v));
          send_json(res, 200,
                    {{"tasks", std::move(tasks)},
                     {"total", page.total},
                     {"page", page.page},
                     {"page_size", page.page_size}});
        }));

  s.Get(R"(/tasks/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
          send_json(res, 200, to_json(store_.get_task(req.matches[1])));
        }));

  s.Post(R"(/tasks/([^/]+)/claim)", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const Json body = parse_body(req);
           send_json(res, 200, to_json(store_.claim(req.matches[1], reviewer_of(req, body))));
         }));

  s.Post(R"(/tasks/([^/]+)/decision)", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const Json body = parse_body(req);
           const std::string task_id = req.matches[1];
           const auto verdict = verdict_from_string(body.at("verdict").get<std::string>());
           std::optional<translate::Fields> edited;
           if (body.contains("edited_arabic_fields") && !body["edited_arabic_fields"].is_null()) {
             edited = translate::fields_from_json(body["edited_arabic_fields"]);
           }
           std::optional<int> version;
           if (body.contains("version") && !body["version"].is_null()) version = body["version"].get<int>();
           auto unit = store_.submit_decision(task_id, verdict, std::move(edited), reviewer_of(req, body), version);
           send_json(res, 200,
                     {{"task", to_json(store_.get_task(task_id).task)}, {"unit", translate::to_json(unit)}});
         }));

  s.Get("/stats", guarded([this](const httplib::Request&, httplib::Response& res) {
          send_json(res, 200, to_json(store_.stats()));
        }));
}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  if (!server_->bind_to_port(host, port)) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void ReviewServer::serve() { server_->listen_after_bind(); }

void ReviewServer::stop() {
  if (server_) server_->stop();
}

}  // namespace medforge::review
