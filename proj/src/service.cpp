// Copyright 2026 The knotcover Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "knotcover/service.hpp"

#include <httplib.h>

#include <json.hpp>

#include "knotcover/error.hpp"

namespace knotcover {

using nlohmann::json;

namespace {

void reply_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", message}}.dump(), "application/json");
}

void reply_json(httplib::Response& res, const std::string& body) { res.set_content(body, "application/json"); }

}  // namespace

EngineService::EngineService() : server_(std::make_unique<httplib::Server>()) {
  httplib::Server& s = *server_;

  s.Get("/scenes", [](const httplib::Request&, httplib::Response& res) {
    json list = json::array();
    for (const SceneSpec& spec : builtin_scenes()) {
      json worlds = json::array();
      for (const WorldSpec& w : spec.worlds) worlds.push_back(w.name);
      list.push_back({{"name", spec.name}, {"geometry", !spec.group_only()}, {"worlds", worlds}});
    }
    reply_json(res, json{{"version", kProtocolVersion}, {"scenes", list}}.dump());
  });

  s.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("scene") || !body["scene"].is_string()) {
      return reply_error(res, 400, "expected {\"scene\": name}");
    }
    std::string id;
    try {
      int width = body.value("width", 640);
      int height = body.value("height", 480);
      id = sessions_.create(body["scene"].get<std::string>(), width, height);
    } catch (const SceneError& e) {
      return reply_error(res, 404, e.what());
    } catch (const std::exception& e) {
      return reply_error(res, 400, e.what());
    }
    std::string frame = to_json(sessions_.get(id)->frame());
    reply_json(res, "{\"version\":" + std::to_string(kProtocolVersion) + ",\"session\":\"" + id +
                        "\",\"frame\":" + frame + "}");
  });

  s.Get(R"(/sessions/([A-Za-z0-9]+)/frame)", [this](const httplib::Request& req, httplib::Response& res) {
    auto session = sessions_.get(req.matches[1]);
    if (!session) return reply_error(res, 404, "unknown session");
    reply_json(res, to_json(session->frame()));
  });

  s.Post(R"(/sessions/([A-Za-z0-9]+)/step)", [this](const httplib::Request& req, httplib::Response& res) {
    auto session = sessions_.get(req.matches[1]);
    if (!session) return reply_error(res, 404, "unknown session");
    try {
      reply_json(res, to_json(session->step(parse_move_request(req.body))));
    } catch (const std::exception& e) {
      reply_error(res, 400, e.what());
    }
  });

  s.Delete(R"(/sessions/([A-Za-z0-9]+))", [this](const httplib::Request& req, httplib::Response& res) {
    if (!sessions_.remove(req.matches[1])) return reply_error(res, 404, "unknown session");
    reply_json(res, "{}");
  });
}

EngineService::~EngineService() { stop(); }

int EngineService::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  if (!server_->bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void EngineService::listen() { server_->listen_after_bind(); }

void EngineService::stop() {
  if (server_) server_->stop();
}

}  // namespace knotcover
