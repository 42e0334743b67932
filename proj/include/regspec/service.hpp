#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "regspec/cnl.hpp"
#include "regspec/ruleset.hpp"

namespace regspec::service {

struct Response {
  int status = 200;
  std::string body;  // JSON
};

struct LoadedRuleset {
  Ruleset ruleset;
  /// The ruleset's CNL document: `<id>.cnl` next to the ruleset when
  /// present, otherwise the abstraction of the root.
  cnl::Document document;
  std::string cnl_text;
};

/// Stateless request handling over rulesets loaded once at construction.
/// `handle` is const and safe to call from many threads at once.
class Service {
 public:
  /// Loads every `*.json` in `dir` as a ruleset whose id is the file stem.
  static Service from_directory(const std::filesystem::path& dir);

  void add(std::string id, Ruleset ruleset, std::optional<std::string> cnl_text = std::nullopt);

  Response handle(std::string_view method, std::string_view path, std::string_view body) const;

  const std::map<std::string, LoadedRuleset>& rulesets() const { return rulesets_; }

 private:
  std::map<std::string, LoadedRuleset> rulesets_;
};

struct ServeOptions {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string cors_origin = "*";
};

/// HTTP front end over a Service. Routes GET/POST under /api/ and answers
/// CORS preflight requests.
class HttpServer {
 public:
  HttpServer(const Service& service, ServeOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port.
  int bind();
  /// Serves until stop(). Call bind() first.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Binds and blocks serving HTTP until the process is stopped.
void serve(const Service& service, const ServeOptions& options);

}  // namespace regspec::service
