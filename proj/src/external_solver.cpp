// Copyright 2026 The nfa3 Authors
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

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "nfa3/solver.hpp"

namespace nfa3 {

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    char tmpl[] = "/tmp/nfa3-cnf-XXXXXX";
    int fd = mkstemp(tmpl);
    if (fd < 0) throw BackendFailure("cannot create temp file");
    path = tmpl;
    const char* data = contents.data();
    std::size_t left = contents.size();
    while (left > 0) {
      ssize_t n = write(fd, data, left);
      if (n <= 0) {
        close(fd);
        throw BackendFailure("cannot write temp file");
      }
      data += n;
      left -= static_cast<std::size_t>(n);
    }
    close(fd);
  }
  ~TempFile() { unlink(path.c_str()); }
};

// Runs `command file`, capturing stdout; kills the child at the deadline.
// Returns (stdout, exited_normally, timed_out).
struct RunResult {
  std::string output;
  bool timed_out = false;
  int exit_code = -1;
};

RunResult run_with_deadline(const std::string& command,
                            const std::string& file, double timeout_seconds) {
  int pipefd[2];
  if (pipe(pipefd) != 0) throw BackendFailure("pipe failed");
  pid_t pid = fork();
  if (pid < 0) {
    close(pipefd[0]);
    close(pipefd[1]);
    throw BackendFailure("fork failed");
  }
  if (pid == 0) {
    close(pipefd[0]);
    dup2(pipefd[1], STDOUT_FILENO);
    close(pipefd[1]);
    execlp(command.c_str(), command.c_str(), file.c_str(),
           static_cast<char*>(nullptr));
    _exit(127);
  }
  close(pipefd[1]);
  fcntl(pipefd[0], F_SETFL, O_NONBLOCK);

  RunResult res;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(timeout_seconds));
  char buf[4096];
  bool open = true;
  while (open) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      kill(pid, SIGKILL);
      res.timed_out = true;
      break;
    }
    int wait_ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
            .count());
    struct pollfd pf {pipefd[0], POLLIN, 0};
    int pr = poll(&pf, 1, std::min(wait_ms + 1, 200));
    if (pr < 0) break;
    for (;;) {
      ssize_t n = read(pipefd[0], buf, sizeof buf);
      if (n > 0) {
        res.output.append(buf, static_cast<std::size_t>(n));
      } else if (n == 0) {
        open = false;
        break;
      } else {
        break;  // EAGAIN
      }
    }
  }
  // Drain whatever is left after a kill.
  for (;;) {
    ssize_t n = read(pipefd[0], buf, sizeof buf);
    if (n <= 0) break;
    res.output.append(buf, static_cast<std::size_t>(n));
  }
  close(pipefd[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

}  // namespace

SolveOutcome ExternalBackend::solve(const Cnf& cnf, double timeout_seconds) {
  if (timeout_seconds <= 0) throw Error("timeout must be positive");
  auto start = std::chrono::steady_clock::now();
  TempFile tmp(emit_dimacs(cnf));
  RunResult run = run_with_deadline(command_, tmp.path, timeout_seconds);

  SolveOutcome out;
  out.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (run.timed_out) {
    out.status = SolveOutcome::Status::Timeout;
    return out;
  }
  if (run.exit_code == 127)
    throw BackendFailure("cannot execute solver '" + command_ + "'");

  bool have_status = false;
  std::vector<Lit> vlits;
  std::istringstream in(run.output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      std::string verdict = line.substr(2);
      while (!verdict.empty() && (verdict.back() == '\r' || verdict.back() == ' '))
        verdict.pop_back();
      if (verdict == "SATISFIABLE") {
        out.status = SolveOutcome::Status::Sat;
        have_status = true;
      } else if (verdict == "UNSATISFIABLE") {
        out.status = SolveOutcome::Status::Unsat;
        have_status = true;
      } else if (verdict == "UNKNOWN") {
        out.status = SolveOutcome::Status::Timeout;
        have_status = true;
      }
    } else if (line.rfind("v", 0) == 0 &&
               (line.size() == 1 || line[1] == ' ')) {
      std::istringstream vs(line.substr(1));
      long long l;
      while (vs >> l)
        if (l != 0) vlits.push_back(static_cast<Lit>(l));
    }
  }
  if (!have_status)
    throw BackendFailure("no answer line from solver '" + command_ +
                         "' (exit code " + std::to_string(run.exit_code) + ")");
  if (out.status == SolveOutcome::Status::Sat) {
    out.model.assign(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
    for (Lit l : vlits) {
      std::size_t v = static_cast<std::size_t>(std::abs(l));
      if (v < out.model.size()) out.model[v] = l > 0;
    }
    if (!satisfies(cnf, out.model))
      throw BackendFailure("solver '" + command_ +
                           "' reported a non-satisfying model");
  }
  return out;
}

}  // namespace nfa3
