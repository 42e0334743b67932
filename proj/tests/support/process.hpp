#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace regspec::testing {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

inline std::string cli_path() { return REGSPEC_CLI_PATH; }

inline std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

/// Runs `args` (already quoted) through the shell with the regspec binary
/// prepended; stderr is discarded.
inline RunResult run_cli(const std::string& args) {
  std::string cmd = quote(cli_path()) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace regspec::testing
