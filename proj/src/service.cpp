#include "regspec/service.hpp"

#include <httplib.h>

#include "regspec/datagen.hpp"
#include "regspec/engine.hpp"
#include "regspec/error.hpp"
#include "regspec/report.hpp"

namespace regspec::service {
namespace {

struct HttpError {
  int status;
  std::string message;
};

Response json_response(int status, const Json& j) { return {status, j.dump()}; }

Response error_response(int status, const std::string& message) {
  return json_response(status, Json{{"error", message}});
}

Json parse_body(std::string_view body) {
  try {
    Json j = Json::parse(body);
    if (!j.is_object()) throw HttpError{400, "request body must be a JSON object"};
    return j;
  } catch (const Json::parse_error& e) {
    throw HttpError{400, std::string("malformed JSON body: ") + e.what()};
  }
}

std::string string_field(const Json& body, const char* field) {
  if (!body.contains(field) || !body[field].is_string())
    throw HttpError{400, std::string("\"") + field + "\" must be a string"};
  return body[field].get<std::string>();
}

}  // namespace

void Service::add(std::string id, Ruleset ruleset, std::optional<std::string> cnl_text) {
  LoadedRuleset loaded{std::move(ruleset), {}, {}};
  if (cnl_text) {
    loaded.document = cnl::parse(*cnl_text);
    loaded.cnl_text = std::move(*cnl_text);
  } else {
    loaded.document = cnl::abstract(loaded.ruleset.registry, loaded.ruleset.root).document;
    loaded.cnl_text = cnl::render(loaded.document);
  }
  rulesets_.insert_or_assign(std::move(id), std::move(loaded));
}

Service Service::from_directory(const std::filesystem::path& dir) {
  Service s;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    Ruleset rs;
    try {
      rs = load_ruleset(entry.path());
    } catch (const Error&) {
      continue;  // not a ruleset (e.g. a message file)
    }
    auto cnl_path = entry.path();
    cnl_path.replace_extension(".cnl");
    std::optional<std::string> cnl_text;
    if (std::filesystem::exists(cnl_path)) cnl_text = read_file(cnl_path);
    s.add(entry.path().stem().string(), std::move(rs), std::move(cnl_text));
  }
  return s;
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body) const {
  try {
    auto lookup = [&](const Json& req) -> const LoadedRuleset& {
      std::string id = string_field(req, "ruleset-id");
      auto it = rulesets_.find(id);
      if (it == rulesets_.end()) throw HttpError{404, "unknown ruleset '" + id + "'"};
      return it->second;
    };
    auto spec_of = [&](const Json& req, const LoadedRuleset& rs) {
      if (!req.contains("spec") || req["spec"].is_null()) return rs.ruleset.root;
      auto k = Keyword::try_parse(string_field(req, "spec"), rs.ruleset.ns);
      if (!k) throw HttpError{400, "\"spec\" is not a keyword"};
      if (!rs.ruleset.registry.contains(*k)) throw HttpError{404, "unknown spec " + k->str()};
      return *k;
    };
    auto message_of = [&](const Json& req) {
      if (!req.contains("message")) throw HttpError{400, "\"message\" is required"};
      return value_from_json(req["message"]);
    };

    if (method == "GET" && path == "/api/rulesets") {
      Json ids = Json::array();
      for (const auto& [id, _] : rulesets_) ids.push_back(id);
      return json_response(200, Json{{"rulesets", ids}});
    }
    if (method == "GET" && path.substr(0, 13) == "/api/ruleset/") {
      std::string id(path.substr(13));
      auto it = rulesets_.find(id);
      if (it == rulesets_.end()) return error_response(404, "unknown ruleset '" + id + "'");
      const auto& rs = it->second.ruleset;
      Json j = ruleset_to_json(rs);
      j["id"] = id;
      j["cnl-text"] = cnl::render(cnl::abstract(rs.registry, rs.root).document);
      return json_response(200, j);
    }
    if (method != "POST") return error_response(404, "no route for " + std::string(method) + " " + std::string(path));

    if (path == "/api/cnl/parse") {
      Json req = parse_body(body);
      std::string text = string_field(req, "cnl-text");
      try {
        return json_response(200, Json{{"document", to_json(cnl::parse(text))}});
      } catch (const cnl::ParseError& e) {
        return json_response(200, Json{{"syntax-error", to_json(e)}});
      }
    }

    Json req = parse_body(body);
    const LoadedRuleset& rs = lookup(req);
    const Registry& reg = rs.ruleset.registry;

    if (path == "/api/validate") {
      Keyword spec = spec_of(req, rs);
      return json_response(200, Json{{"valid", validate(reg, spec, message_of(req))}});
    }
    if (path == "/api/explain") {
      Keyword spec = spec_of(req, rs);
      auto problems = explain(reg, spec, message_of(req));
      return json_response(200, Json{{"valid", problems.empty()},
                                     {"problems", problems_to_json(problems)},
                                     {"traceback", traces_to_json(cnl::traceback(rs.document, problems))}});
    }
    if (path == "/api/generate") {
      Keyword spec = spec_of(req, rs);
      GenContext ctx;
      std::size_t count = 1;
      if (req.contains("count")) {
        if (!req["count"].is_number_unsigned()) throw HttpError{400, "\"count\" must be a non-negative integer"};
        count = req["count"].get<std::size_t>();
      }
      if (req.contains("seed")) {
        if (!req["seed"].is_number_unsigned()) throw HttpError{400, "\"seed\" must be a non-negative integer"};
        ctx.seed = req["seed"].get<std::uint64_t>();
      }
      if (req.contains("size")) {
        if (!req["size"].is_number_unsigned() || req["size"].get<std::uint64_t>() == 0)
          throw HttpError{400, "\"size\" must be a positive integer"};
        ctx.size = req["size"].get<std::uint32_t>();
      }
      if (count > 10000) throw HttpError{400, "\"count\" is limited to 10000"};
      Json messages = Json::array();
      for (const auto& v : sample(reg, spec, count, ctx)) messages.push_back(to_json(v));
      return json_response(200, Json{{"messages", messages}});
    }
    if (path == "/api/cnl/check") {
      std::string text = string_field(req, "cnl-text");
      try {
        auto findings = cnl::soundness_check(cnl::parse(text), reg, rs.ruleset.root);
        return json_response(200, Json{{"findings", findings_to_json(findings)}, {"sound", !cnl::has_errors(findings)}});
      } catch (const cnl::ParseError& e) {
        return json_response(200, Json{{"syntax-error", to_json(e)}});
      }
    }
    return error_response(404, "no route for POST " + std::string(path));
  } catch (const HttpError& e) {
    return error_response(e.status, e.message);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::ParseError: return error_response(400, e.what());
      case ErrorCode::UnknownSpec: return error_response(404, e.what());
      default: return error_response(422, e.what());
    }
  }
}

struct HttpServer::Impl {
  Impl(const Service& s, ServeOptions o) : service(s), options(std::move(o)) {}
  const Service& service;
  ServeOptions options;
  httplib::Server server;
};

HttpServer::HttpServer(const Service& service, ServeOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  Impl& im = *impl_;
  auto cors = [&im](httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", im.options.cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  };
  auto dispatch = [&im, cors](const httplib::Request& req, httplib::Response& res) {
    Response r = im.service.handle(req.method, req.path, req.body);
    res.status = r.status;
    cors(res);
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  im.server.Get(R"(/api/.*)", dispatch);
  im.server.Post(R"(/api/.*)", dispatch);
  im.server.Options(R"(/api/.*)", [cors](const httplib::Request&, httplib::Response& res) {
    cors(res);
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  Impl& im = *impl_;
  int port = im.options.port == 0 ? im.server.bind_to_any_port(im.options.host)
                                  : (im.server.bind_to_port(im.options.host, im.options.port) ? im.options.port : -1);
  if (port < 0)
    throw Error(ErrorCode::ParseError,
                "cannot bind " + im.options.host + ":" + std::to_string(im.options.port));
  return port;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void serve(const Service& service, const ServeOptions& options) {
  HttpServer server(service, options);
  server.bind();
  server.run();
}

}  // namespace regspec::service
