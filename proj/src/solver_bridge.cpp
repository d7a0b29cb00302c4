#include "rground/solver_bridge.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <sstream>
#include <thread>

namespace rground {

namespace {

std::string first_line(const std::string& out) {
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) return line;
  }
  return "";
}

}  // namespace

SolveResult run_solver(const std::string& command, const std::string& script_text,
                       double timeout_seconds) {
  SolveResult res;
  int in_pipe[2];   // parent writes script to child stdin
  int out_pipe[2];  // parent reads child stdout
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    res.spawn_failed = true;
    return res;
  }
  auto t0 = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    res.spawn_failed = true;
    return res;
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);

  // the writer runs independently of the reader so the pipes cannot deadlock
  int write_fd = in_pipe[1];
  std::thread writer([write_fd, &script_text] {
    size_t off = 0;
    while (off < script_text.size()) {
      ssize_t n = write(write_fd, script_text.data() + off, script_text.size() - off);
      if (n <= 0) break;  // child closed its stdin
      off += static_cast<size_t>(n);
    }
    close(write_fd);
  });
  signal(SIGPIPE, SIG_IGN);

  int read_fd = out_pipe[0];
  fcntl(read_fd, F_SETFL, O_NONBLOCK);
  std::string out;
  bool child_done = false;
  int status = 0;
  auto deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(timeout_seconds));
  while (true) {
    char buf[4096];
    ssize_t n = read(read_fd, buf, sizeof buf);
    if (n > 0) {
      out.append(buf, static_cast<size_t>(n));
      continue;
    }
    if (n == 0) break;  // eof
    if (!child_done) {
      pid_t w = waitpid(pid, &status, WNOHANG);
      if (w == pid) child_done = true;
    }
    if (child_done) {
      // drain whatever is left without blocking
      ssize_t m = read(read_fd, buf, sizeof buf);
      if (m > 0) {
        out.append(buf, static_cast<size_t>(m));
        continue;
      }
      break;
    }
    if (std::chrono::steady_clock::now() > deadline) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      child_done = true;
      res.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  if (!child_done) waitpid(pid, &status, 0);
  writer.join();
  close(read_fd);

  auto t1 = std::chrono::steady_clock::now();
  res.solve_seconds = std::chrono::duration<double>(t1 - t0).count();
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (res.exit_code == 127 && out.empty()) res.spawn_failed = true;
  res.output = std::move(out);
  res.verdict = first_line(res.output);
  return res;
}

}  // namespace rground
