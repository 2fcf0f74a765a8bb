#pragma once

// Minimal harness for driving the csd binary from tests: runs a command
// line, captures stdout/stderr into temp files, returns the exit code.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RunResult run_command(const std::string& cmd) {
  static int counter = 0;
  const std::string tag = std::to_string(++counter) + "_" + std::to_string(getpid());
  const std::string out_path = "/tmp/csd_run_out_" + tag;
  const std::string err_path = "/tmp/csd_run_err_" + tag;

  const std::string full = cmd + " >" + out_path + " 2>" + err_path;
  const int status = std::system(full.c_str());

  RunResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}
