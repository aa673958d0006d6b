#include "baiwrc/external_arm.hpp"

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace baiwrc {

namespace {

std::string command_string(const ExternalArmSpec& arm) {
    std::string s;
    for (const std::string& part : arm.command) {
        if (!s.empty()) s += ' ';
        s += part;
    }
    return s;
}

// Last non-empty line of the captured output.
std::string last_line(const std::string& text) {
    std::size_t end = text.size();
    while (end > 0 && (text[end - 1] == '\n' || text[end - 1] == '\r')) --end;
    if (end == 0) return {};
    std::size_t start = text.rfind('\n', end - 1);
    start = start == std::string::npos ? 0 : start + 1;
    return text.substr(start, end - start);
}

}  // namespace

ExternalPull pull_external(const ExternalArmSpec& arm, Rng&) {
    if (arm.command.empty()) throw ExternalArmError("external arm: empty command");
    if (!(arm.budget_scale > 0.0)) throw ExternalArmError("external arm: budget_scale must be positive");

    int fds[2];
    if (pipe(fds) != 0) throw ExternalArmError("external arm: pipe() failed");

    const auto start = std::chrono::steady_clock::now();
    const pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        throw ExternalArmError("external arm: fork() failed");
    }
    if (pid == 0) {  // child
        close(fds[0]);
        dup2(fds[1], STDOUT_FILENO);
        close(fds[1]);
        std::vector<char*> argv;
        argv.reserve(arm.command.size() + 1);
        for (const std::string& part : arm.command) argv.push_back(const_cast<char*>(part.c_str()));
        argv.push_back(nullptr);
        execvp(argv[0], argv.data());
        _exit(127);
    }

    close(fds[1]);
    std::string output;
    bool timed_out = false;
    char buf[4096];
    for (;;) {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double remaining = arm.timeout_s - elapsed;
        if (remaining <= 0.0) {
            timed_out = true;
            break;
        }
        struct pollfd pfd{fds[0], POLLIN, 0};
        const int rc = poll(&pfd, 1, static_cast<int>(std::ceil(remaining * 1000.0)));
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (rc == 0) {
            timed_out = true;
            break;
        }
        const ssize_t n = read(fds[0], buf, sizeof buf);
        if (n <= 0) break;  // EOF (or error): child closed its end
        output.append(buf, static_cast<std::size_t>(n));
    }
    close(fds[0]);

    if (timed_out) {
        kill(pid, SIGKILL);
        int status = 0;
        waitpid(pid, &status, 0);
        // A timed-out pull charges a full consumption unit and no reward.
        ExternalPull pull;
        pull.outcome.reward = 0.0;
        pull.outcome.consumption = {1.0};
        pull.timed_out = true;
        return pull;
    }

    int status = 0;
    waitpid(pid, &status, 0);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        throw ExternalArmError("external arm: command '" + command_string(arm) + "' exited with " +
                               (WIFEXITED(status) ? std::to_string(WEXITSTATUS(status)) : std::string("a signal")));

    const std::string line = last_line(output);
    char* parse_end = nullptr;
    const double value = std::strtod(line.c_str(), &parse_end);
    if (line.empty() || parse_end == line.c_str())
        throw ExternalArmError("external arm: cannot parse reward from last output line \"" + line + "\"");

    ExternalPull pull;
    pull.reward_clamped = value < 0.0 || value > 1.0;
    pull.outcome.reward = std::min(1.0, std::max(0.0, value));
    pull.outcome.consumption = {std::min(1.0, elapsed / arm.budget_scale)};
    return pull;
}

}  // namespace baiwrc
