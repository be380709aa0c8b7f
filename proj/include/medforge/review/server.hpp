// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "medforge/review/store.hpp"

namespace httplib {
class Server;
}

namespace medforge::review {

/// JSON API over a ReviewStore:
///   GET  /tasks?state=&reason=&page=&page_size=
///   GET  /tasks/{id}
///   POST /tasks/{id}/claim      {reviewer_tag}
///   POST /tasks/{id}/decision   {verdict, edited_arabic_fields?, reviewer_tag, version?}
///   GET  /stats
class ReviewServer {
 public:
  explicit ReviewServer(ReviewStore& store);
  ~ReviewServer();

  /// Returns the bound port; 0 picks a free one.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void serve();
  void stop();

 private:
  ReviewStore& store_;
  std::unique_ptr<httplib::Server> server_;
};

int http_status_for(const std::string& error_kind);

}  // namespace medforge::review
