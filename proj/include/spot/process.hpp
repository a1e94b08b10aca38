#pragma once

#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <string>
#include <thread>

#include "spot/error.hpp"

namespace spot {

/**
 * Runs a shell command, captures its standard output, and enforces a wall
 * clock timeout. The child gets its own process group so a timeout kills
 * the whole pipeline. Throws on nonzero exit or timeout.
 */
inline std::string run_subprocess(const std::string& command,
                                  double timeout_seconds) {
  using Clock = std::chrono::steady_clock;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(timeout_seconds));

  int fds[2];
  if (pipe(fds) != 0) throw Error("pipe() failed");
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw Error("fork() failed");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], STDOUT_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);

  std::string output;
  bool timed_out = false;
  char buffer[4096];
  while (true) {
    const auto remaining = deadline - Clock::now();
    if (remaining <= Clock::duration::zero()) {
      timed_out = true;
      break;
    }
    const auto ms = std::max<long long>(
        1, std::chrono::duration_cast<std::chrono::milliseconds>(remaining)
               .count());
    struct pollfd pfd{fds[0], POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(std::min<long long>(ms, 1000)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;
    const ssize_t n = read(fds[0], buffer, sizeof buffer);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;
    output.append(buffer, static_cast<std::size_t>(n));
  }
  close(fds[0]);

  int status = 0;
  if (!timed_out) {
    // Output is done; wait for exit, still honoring the deadline.
    while (true) {
      const pid_t done = waitpid(pid, &status, WNOHANG);
      if (done == pid) break;
      if (done < 0 && errno != EINTR) break;
      if (Clock::now() >= deadline) {
        timed_out = true;
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
  }
  if (timed_out) {
    kill(-pid, SIGKILL);
    kill(pid, SIGKILL);
    waitpid(pid, &status, 0);
    throw Error("external command timed out: " + command);
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw Error("external command failed: " + command);
  return output;
}

}  // namespace spot
