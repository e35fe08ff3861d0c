#include <atomic>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "din/asr/backend.hpp"
#include "din/audio/wav_io.hpp"
#include "din/rng.hpp"

namespace din::asr {

namespace {

std::string unique_wav_path() {
  static std::atomic<std::uint64_t> counter{0};
  const auto n = counter.fetch_add(1);
  const auto pid = static_cast<std::uint64_t>(::getpid());
  const auto path = std::filesystem::temp_directory_path() /
                    ("din-asr-" + std::to_string(pid) + "-" + std::to_string(n) + ".wav");
  return path.string();
}

struct TempFile {
  std::string path;
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

std::string substitute(const std::string& tmpl, const std::string& wav) {
  std::string cmd = tmpl;
  std::size_t pos = 0;
  while ((pos = cmd.find("{wav}", pos)) != std::string::npos) {
    cmd.replace(pos, 5, wav);
    pos += wav.size();
  }
  return cmd;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      if (!cur.empty()) tokens.push_back(ascii_fold(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(ascii_fold(cur));
  return tokens;
}

} // namespace

Transcript decode_external(const audio::Waveform& audio, const AsrBackendSpec& spec) {
  spec.validate();
  if (audio.sample_rate != spec.expected_sample_rate)
    throw WrongSampleRate("ASR expects " + std::to_string(spec.expected_sample_rate) +
                          " Hz audio, got " + std::to_string(audio.sample_rate));

  TempFile wav{unique_wav_path()};
  audio::wav_write(wav.path, audio);
  const std::string cmd = substitute(spec.command_template, wav.path);

  int fds[2];
  if (::pipe(fds) != 0) throw AsrUnavailable("pipe() failed: " + std::string(std::strerror(errno)));

  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw AsrUnavailable("fork() failed: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    ::close(fds[0]);
    ::dup2(fds[1], STDOUT_FILENO);
    ::close(fds[1]);
    if (!spec.working_dir.empty() && ::chdir(spec.working_dir.c_str()) != 0) ::_exit(127);
    ::execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(fds[1]);

  std::string output;
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(spec.timeout_s));
  bool timed_out = false;
  char buf[4096];
  for (;;) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    struct pollfd pfd {fds[0], POLLIN, 0};
    const int pr = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(remaining, 1000)));
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (pr == 0) continue;
    const ssize_t got = ::read(fds[0], buf, sizeof(buf));
    if (got < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (got == 0) break; // child closed stdout
    output.append(buf, static_cast<std::size_t>(got));
  }
  ::close(fds[0]);

  if (timed_out) {
    ::kill(pid, SIGKILL);
    int status = 0;
    ::waitpid(pid, &status, 0);
    throw AsrTimeout("ASR command exceeded " + std::to_string(spec.timeout_s) + " s");
  }

  int status = 0;
  if (::waitpid(pid, &status, 0) < 0)
    throw AsrUnavailable("waitpid() failed: " + std::string(std::strerror(errno)));
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw AsrUnavailable("ASR command failed (status " +
                         std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) +
                         "): " + cmd);

  if (output.find('\0') != std::string::npos)
    throw AsrOutputUnparseable("ASR output contains NUL bytes");

  Transcript t;
  t.tokens = tokenize(output);
  t.source = TranscriptSource::kExternalAsr;
  return t;
}

} // namespace din::asr
