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

#pragma once

#include <memory>
#include <string>

#include "knotcover/session.hpp"

namespace httplib {
class Server;
}

namespace knotcover {

/// Local engine service speaking JSON over HTTP:
///   GET    /scenes                  builtin scene names
///   POST   /sessions                {"scene", "width", "height"} -> {"session", "frame"}
///   GET    /sessions/{id}/frame     FrameState
///   POST   /sessions/{id}/step      MoveRequest -> FrameState
///   DELETE /sessions/{id}
/// Errors are {"error": message} with status 400 or 404.
class EngineService {
 public:
  EngineService();
  ~EngineService();
  EngineService(const EngineService&) = delete;
  EngineService& operator=(const EngineService&) = delete;

  /// Binds to `host`; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  void listen();
  void stop();

  SessionManager& sessions() { return sessions_; }

 private:
  SessionManager sessions_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace knotcover
