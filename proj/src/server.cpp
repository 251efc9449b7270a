// Copyright 2026 The Condensedly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bursts of simultaneous connects overflow the library's default backlog
// of five and get reset.
#define CPPHTTPLIB_LISTEN_BACKLOG 256
#include <httplib.h>

#include "condensedly/service.hpp"

namespace condensedly::service {

struct Server::Impl {
  std::shared_ptr<const CorpusSnapshot> snapshot;
  httplib::Server http;
};

Server::Server(std::shared_ptr<const CorpusSnapshot> snapshot,
               std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>()) {
  impl_->snapshot = std::move(snapshot);
  if (static_dir && !impl_->http.set_mount_point("/", static_dir->string())) {
    throw std::runtime_error("cannot serve static files from " + static_dir->string());
  }
  // The library default adds SO_REUSEPORT, which lets a second server
  // share a port that is already in use instead of failing to bind.
  impl_->http.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  const CorpusSnapshot* snap = impl_->snapshot.get();
  impl_->http.Get(R"(/api/.*)", [snap](const httplib::Request& req, httplib::Response& res) {
    Params params(req.params.begin(), req.params.end());
    Response r = route(*snap, req.path, params);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  });
}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->http.bind_to_any_port(host)
                        : (impl_->http.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void Server::run() { impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace condensedly::service
