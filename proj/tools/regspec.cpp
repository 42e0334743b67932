// regspec: validate, conform, explain and generate messages against a
// ruleset; check and render CNL documents; benchmark; serve the HTTP API.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>

#include "regspec/bench.hpp"
#include "regspec/cnl.hpp"
#include "regspec/datagen.hpp"
#include "regspec/engine.hpp"
#include "regspec/error.hpp"
#include "regspec/report.hpp"
#include "regspec/ruleset.hpp"
#include "regspec/service.hpp"

namespace {

using namespace regspec;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

// Usage and I/O failures; reported on stderr with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MessageOptions {
  std::string ruleset;
  std::string spec;
  std::string in = "-";
  std::string format = "json";
  std::string cnl;
  unsigned parallel = 1;
};

Ruleset load(const std::string& path) {
  try {
    return load_ruleset(path);
  } catch (const Error& e) {
    throw UsageError(std::string("cannot load ruleset: ") + e.what());
  }
}

Keyword spec_or_root(const Ruleset& rs, const std::string& spec) {
  if (spec.empty()) return rs.root;
  auto k = Keyword::try_parse(spec, rs.ns);
  if (!k) throw UsageError("'" + spec + "' is not a spec name (expected ::name or ::ns/name)");
  if (!rs.registry.contains(*k)) throw UsageError("unknown spec " + k->str());
  return *k;
}

std::string read_input(const std::string& in) {
  if (in == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  try {
    return read_file(in);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::vector<Value> read_messages(const MessageOptions& opt) {
  std::string text = read_input(opt.in);
  std::vector<Value> out;
  try {
    if (opt.format == "jsonl") {
      std::istringstream lines(text);
      std::string line;
      while (std::getline(lines, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(parse_value(line));
    } else {
      out.push_back(parse_value(text));
    }
  } catch (const Error& e) {
    throw UsageError(std::string("malformed input: ") + e.what());
  }
  return out;
}

// Runs `fn(i)` for every index, fanned out over `workers` threads.
template <typename Fn>
void for_each_index(std::size_t n, unsigned workers, Fn fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

int cmd_validate(const MessageOptions& opt) {
  Ruleset rs = load(opt.ruleset);
  Keyword spec = spec_or_root(rs, opt.spec);
  auto messages = read_messages(opt);
  std::vector<char> verdicts(messages.size());
  for_each_index(messages.size(), opt.parallel,
                 [&](std::size_t i) { verdicts[i] = validate(rs.registry, spec, messages[i]) ? 1 : 0; });
  bool all = true;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    std::cout << Json{{"index", i}, {"valid", verdicts[i] != 0}}.dump() << '\n';
    all = all && verdicts[i];
  }
  return all ? kOk : kInvalid;
}

int cmd_conform(const MessageOptions& opt) {
  Ruleset rs = load(opt.ruleset);
  Keyword spec = spec_or_root(rs, opt.spec);
  bool all = true;
  std::size_t i = 0;
  for (const auto& m : read_messages(opt)) {
    auto r = conform(rs.registry, spec, m);
    Json out{{"index", i++}, {"valid", r.ok()}};
    if (r.ok()) out["conformed"] = to_json(r.value());
    else out["problems"] = problems_to_json(r.problems());
    std::cout << out.dump() << '\n';
    all = all && r.ok();
  }
  return all ? kOk : kInvalid;
}

int cmd_explain(const MessageOptions& opt) {
  Ruleset rs = load(opt.ruleset);
  Keyword spec = spec_or_root(rs, opt.spec);
  std::optional<cnl::Document> doc;
  if (!opt.cnl.empty()) {
    try {
      doc = cnl::parse(read_file(opt.cnl));
    } catch (const Error& e) {
      throw UsageError("cannot load CNL: " + std::string(e.what()));
    }
  }
  bool all = true;
  std::size_t i = 0;
  for (const auto& m : read_messages(opt)) {
    auto problems = explain(rs.registry, spec, m);
    Json out{{"index", i++}, {"valid", problems.empty()}, {"problems", problems_to_json(problems)}};
    if (doc) out["traceback"] = traces_to_json(cnl::traceback(*doc, problems));
    std::cout << out.dump() << '\n';
    all = all && problems.empty();
  }
  return all ? kOk : kInvalid;
}

struct GenerateOptions {
  std::string ruleset;
  std::string spec;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::uint32_t size = 30;
};

int cmd_generate(const GenerateOptions& opt) {
  Ruleset rs = load(opt.ruleset);
  Keyword spec = spec_or_root(rs, opt.spec);
  GenContext ctx;
  ctx.seed = opt.seed;
  ctx.size = opt.size;
  for (const auto& v : sample(rs.registry, spec, opt.count, ctx)) std::cout << dump_value(v) << '\n';
  return kOk;
}

struct CnlOptions {
  std::string action;
  std::string cnl;
  std::string ruleset;
  std::string spec;
};

int cmd_cnl(const CnlOptions& opt) {
  if (opt.action == "abstract") {
    if (opt.ruleset.empty()) throw UsageError("cnl abstract needs --ruleset");
    Ruleset rs = load(opt.ruleset);
    std::cout << cnl::render(cnl::abstract(rs.registry, spec_or_root(rs, opt.spec)).document);
    return kOk;
  }
  if (opt.cnl.empty()) throw UsageError("cnl " + opt.action + " needs --cnl");
  std::string text;
  try {
    text = read_file(opt.cnl);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  cnl::Document doc;
  try {
    doc = cnl::parse(text);
  } catch (const cnl::ParseError& e) {
    std::cout << Json{{"syntax-error", to_json(e)}}.dump(2) << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (opt.action == "render") {
    std::cout << cnl::render(doc);
    return kOk;
  }
  if (opt.ruleset.empty()) throw UsageError("cnl check needs --ruleset");
  Ruleset rs = load(opt.ruleset);
  auto findings = cnl::soundness_check(doc, rs.registry, rs.root);
  bool sound = !cnl::has_errors(findings);
  std::cout << Json{{"sound", sound}, {"findings", findings_to_json(findings)}}.dump(2) << '\n';
  return sound ? kOk : kInvalid;
}

struct BenchOptions {
  std::string ruleset;
  std::string spec;
  std::string message;
  bench::Config config;
  bool json = false;
};

int cmd_bench(const BenchOptions& opt) {
  Ruleset rs = load(opt.ruleset);
  Keyword spec = opt.spec.empty() ? mmsr::kw("secured-report") : spec_or_root(rs, opt.spec);
  if (!rs.registry.contains(spec)) throw UsageError("bench needs --spec for this ruleset");
  Value message = mmsr::canonical_example();
  if (!opt.message.empty()) {
    try {
      message = parse_value(read_file(opt.message));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  auto rows = bench::run_scenarios(rs.registry, spec, message, opt.config);
  if (opt.json) std::cout << bench::to_json(rows).dump(2) << '\n';
  else std::cout << bench::format_table(rows);
  return kOk;
}

int cmd_predicates() {
  Json arr = Json::array();
  for (const auto* def : PredicateLib::standard().all())
    arr.push_back(Json{{"name", def->name},
                       {"params", def->params_schema},
                       {"description", def->description},
                       {"generator", def->default_generator ? Json(*def->default_generator) : Json(nullptr)}});
  std::cout << arr.dump(2) << '\n';
  return kOk;
}

void add_message_options(CLI::App* cmd, MessageOptions& opt, bool with_cnl) {
  cmd->add_option("--ruleset", opt.ruleset, "Ruleset JSON file")->envname("REGSPEC_RULESET")->required();
  cmd->add_option("--spec", opt.spec, "Spec to check (default: the ruleset root)");
  cmd->add_option("--in", opt.in, "Input file, or - for stdin");
  cmd->add_option("--format", opt.format, "json: one message; jsonl: one message per line")
      ->check(CLI::IsMember({"json", "jsonl"}));
  if (with_cnl) cmd->add_option("--cnl", opt.cnl, "CNL document for traceback");
  else cmd->add_option("--parallel", opt.parallel, "Worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regspec: executable regulatory contracts"};
  app.require_subcommand(1);

  MessageOptions validate_opt, conform_opt, explain_opt;
  auto* validate_cmd = app.add_subcommand("validate", "Check messages against a spec");
  add_message_options(validate_cmd, validate_opt, false);
  auto* conform_cmd = app.add_subcommand("conform", "Conform messages, tagging matched or-branches");
  add_message_options(conform_cmd, conform_opt, false);
  auto* explain_cmd = app.add_subcommand("explain", "Report why messages fail a spec");
  add_message_options(explain_cmd, explain_opt, true);

  GenerateOptions gen_opt;
  auto* gen_cmd = app.add_subcommand("generate", "Generate valid messages as JSON lines");
  gen_cmd->add_option("--ruleset", gen_opt.ruleset, "Ruleset JSON file")->envname("REGSPEC_RULESET")->required();
  gen_cmd->add_option("--spec", gen_opt.spec, "Spec to generate (default: the ruleset root)");
  gen_cmd->add_option("--count", gen_opt.count, "Number of messages");
  gen_cmd->add_option("--seed", gen_opt.seed, "Random seed");
  gen_cmd->add_option("--size", gen_opt.size, "Size bound for collections and strings")->check(CLI::PositiveNumber);

  CnlOptions cnl_opt;
  auto* cnl_cmd = app.add_subcommand("cnl", "Check, render or derive CNL documents");
  cnl_cmd->add_option("action", cnl_opt.action, "check | render | abstract")
      ->required()
      ->check(CLI::IsMember({"check", "render", "abstract"}));
  cnl_cmd->add_option("--cnl", cnl_opt.cnl, "CNL file");
  cnl_cmd->add_option("--ruleset", cnl_opt.ruleset, "Ruleset JSON file")->envname("REGSPEC_RULESET");
  cnl_cmd->add_option("--spec", cnl_opt.spec, "Root for abstract (default: the ruleset root)");

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Time the validation and generation scenarios");
  bench_cmd->add_option("--ruleset", bench_opt.ruleset, "Ruleset JSON file")->envname("REGSPEC_RULESET")->required();
  bench_cmd->add_option("--spec", bench_opt.spec, "Message spec (default ::mmsr/secured-report)");
  bench_cmd->add_option("--message", bench_opt.message, "Message JSON (default: the canonical MMSR example)");
  bench_cmd->add_option("--iterations", bench_opt.config.iterations, "Measured iterations per scenario");
  bench_cmd->add_option("--warmup", bench_opt.config.warmup, "Warmup iterations per scenario");
  bench_cmd->add_option("--seed", bench_opt.config.seed, "Base generation seed");
  bench_cmd->add_flag("--json", bench_opt.json, "Machine-readable output");

  auto* pred_cmd = app.add_subcommand("predicates", "List the predicate catalogue as JSON");

  std::string rulesets_dir;
  service::ServeOptions serve_opt;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP JSON API");
  serve_cmd->add_option("--rulesets-dir", rulesets_dir, "Directory of ruleset JSON (+ .cnl) files")->required();
  serve_cmd->add_option("--port", serve_opt.port, "Port");
  serve_cmd->add_option("--host", serve_opt.host, "Bind address");
  serve_cmd->add_option("--cors-origin", serve_opt.cors_origin, "Access-Control-Allow-Origin value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(validate_opt);
    if (*conform_cmd) return cmd_conform(conform_opt);
    if (*explain_cmd) return cmd_explain(explain_opt);
    if (*gen_cmd) return cmd_generate(gen_opt);
    if (*cnl_cmd) return cmd_cnl(cnl_opt);
    if (*bench_cmd) return cmd_bench(bench_opt);
    if (*pred_cmd) return cmd_predicates();
    if (*serve_cmd) {
      auto svc = service::Service::from_directory(rulesets_dir);
      if (svc.rulesets().empty()) throw UsageError("no rulesets found in " + rulesets_dir);
      std::cerr << "serving " << svc.rulesets().size() << " ruleset(s) on " << serve_opt.host << ':'
                << serve_opt.port << '\n';
      service::serve(svc, serve_opt);
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
