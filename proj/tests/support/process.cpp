#include "support/process.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>
#include <unistd.h>

namespace testsupport {

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::vector<std::string>& env) {
  if (argv.empty()) throw std::logic_error("run_process: empty argv");

  char out_template[] = "/tmp/mf_test_out_XXXXXX";
  char err_template[] = "/tmp/mf_test_err_XXXXXX";
  const int out_fd = mkstemp(out_template);
  const int err_fd = mkstemp(err_template);
  if (out_fd < 0 || err_fd < 0) {
    throw std::runtime_error("run_process: mkstemp failed");
  }

  std::string command = "env";
  for (const std::string& assignment : env) {
    command += " " + shell_quote(assignment);
  }
  for (const std::string& arg : argv) {
    command += " " + shell_quote(arg);
  }
  command += " > " + std::string(out_template);
  command += " 2> " + std::string(err_template);

  const int status = std::system(command.c_str());

  ProcessResult result;
  if (status == -1) {
    result.exit_code = -1;
  } else if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = 128;
  }
  result.out = slurp(out_template);
  result.err = slurp(err_template);

  std::remove(out_template);
  std::remove(err_template);
  if (out_fd >= 0) close(out_fd);
  if (err_fd >= 0) close(err_fd);
  return result;
}

}  // namespace testsupport
