#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include <nlohmann/json.hpp>

#include "aadg/adapters/http.hpp"
#include "aadg/audio/wav.hpp"
#include "aadg/errors.hpp"

namespace aadg::adapters {

namespace {

// write JSON to the child's stdin, read its stdout to EOF
std::string run_child(const std::string& command, const std::string& input, int& exit_code) {
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        throw TransportError(std::string("subprocess: pipe failed: ") + std::strerror(errno));

    pid_t pid = fork();
    if (pid < 0) throw TransportError(std::string("subprocess: fork failed: ") + std::strerror(errno));

    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    close(in_pipe[0]);
    close(out_pipe[1]);

    std::size_t written = 0;
    while (written < input.size()) {
        ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            break; // child may exit without reading everything
        }
        written += static_cast<std::size_t>(n);
    }
    close(in_pipe[1]);

    std::string output;
    char buf[4096];
    for (;;) {
        ssize_t n = read(out_pipe[0], buf, sizeof(buf));
        if (n < 0) {
            if (errno == EINTR) continue;
            close(out_pipe[0]);
            throw TransportError(std::string("subprocess: read failed: ") + std::strerror(errno));
        }
        if (n == 0) break;
        output.append(buf, static_cast<std::size_t>(n));
    }
    close(out_pipe[0]);

    int status = 0;
    if (waitpid(pid, &status, 0) < 0)
        throw TransportError(std::string("subprocess: waitpid failed: ") + std::strerror(errno));
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return output;
}

} // namespace

SubprocessTextToAudio::SubprocessTextToAudio(SubprocessTtaConfig config) : config_(std::move(config)) {
    if (config_.command.empty()) throw ConfigError("subprocess tta: command is empty");
}

audio::AudioClip SubprocessTextToAudio::synthesize(const SynthesisRequest& request) {
    validate(request, config_.bounds);

    nlohmann::json body = {{"description", request.description}, {"duration_s", request.duration_s}};
    if (request.seed) body["seed"] = *request.seed;

    int exit_code = 0;
    std::string out = run_child(config_.command, body.dump() + "\n", exit_code);
    if (exit_code != 0)
        throw BackendRefusal("subprocess tta: exit code " + std::to_string(exit_code));

    // first line of stdout is the output WAV path
    auto eol = out.find('\n');
    std::string path = eol == std::string::npos ? out : out.substr(0, eol);
    while (!path.empty() && (path.back() == '\r' || path.back() == ' ')) path.pop_back();
    if (path.empty()) throw BackendRefusal("subprocess tta: no output path on stdout");

    auto clip = audio::read_wav(path);
    check_duration(clip, request.duration_s);
    return clip;
}

} // namespace aadg::adapters
