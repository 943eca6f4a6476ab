#include "gencode/scorer/external.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "gencode/common/error.hpp"

namespace gencode::scorer {

namespace {

Error unavailable(const std::string& why) {
  return Error(ErrorFamily::Scorer, "ScorerUnavailable", "external scorer unavailable: " + why);
}

Error violation(std::size_t line, const std::string& why) {
  return Error(ErrorFamily::Scorer, "ProtocolViolation",
               "protocol violation on response line " + std::to_string(line) + ": " + why);
}

}  // namespace

struct ExternalScorer::Channel {
  int read_fd = -1;
  int write_fd = -1;
  pid_t child = -1;
  std::string buffer;

  ~Channel() {
    if (write_fd >= 0) ::close(write_fd);
    if (read_fd >= 0 && read_fd != write_fd) ::close(read_fd);
    if (child > 0) {
      ::kill(child, SIGTERM);
      ::waitpid(child, nullptr, 0);
    }
  }

  void write_all(const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      const ssize_t n = ::write(write_fd, data.data() + off, data.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw unavailable(std::string("write failed: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
  }

  std::string read_line(int timeout_ms) {
    for (;;) {
      const auto nl = buffer.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        return line;
      }
      pollfd pfd{read_fd, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, timeout_ms);
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw unavailable(std::string("poll failed: ") + std::strerror(errno));
      }
      if (ready == 0) throw unavailable("timed out waiting for a response");
      char chunk[4096];
      const ssize_t n = ::read(read_fd, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw unavailable(std::string("read failed: ") + std::strerror(errno));
      }
      if (n == 0) throw unavailable("peer closed the stream");
      buffer.append(chunk, static_cast<std::size_t>(n));
    }
  }
};

ExternalScorer::ExternalScorer(ExternalScorerConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.command.empty() && !cfg_.host) {
    throw Error(ErrorFamily::Usage, "InvalidConfig", "external scorer needs a command or a host");
  }
  if (cfg_.window < 1) throw Error(ErrorFamily::Usage, "InvalidConfig", "window must be >= 1");
  // A dead peer must surface as EPIPE, not kill the process.
  ::signal(SIGPIPE, SIG_IGN);
}

ExternalScorer::~ExternalScorer() = default;

void ExternalScorer::connect() {
  auto ch = std::make_unique<Channel>();
  if (!cfg_.command.empty()) {
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) throw unavailable("pipe failed");
    const pid_t pid = ::fork();
    if (pid < 0) throw unavailable("fork failed");
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      std::vector<char*> argv;
      for (std::string& a : cfg_.command) argv.push_back(a.data());
      argv.push_back(nullptr);
      ::execvp(argv[0], argv.data());
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    ch->child = pid;
    ch->write_fd = to_child[1];
    ch->read_fd = from_child[0];
  } else {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* found = nullptr;
    const std::string port = std::to_string(cfg_.port);
    if (::getaddrinfo(cfg_.host->c_str(), port.c_str(), &hints, &found) != 0 || found == nullptr) {
      throw unavailable("cannot resolve " + *cfg_.host);
    }
    int fd = -1;
    for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
      fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
      ::close(fd);
      fd = -1;
    }
    ::freeaddrinfo(found);
    if (fd < 0) throw unavailable("cannot connect to " + *cfg_.host + ":" + port);
    ch->read_fd = fd;
    ch->write_fd = fd;
  }
  channel_ = std::move(ch);
  lines_read_ = 0;
}

std::vector<ScoredCandidate> ExternalScorer::score(std::span<const ScoreRequest> requests) {
  if (!channel_) connect();
  std::unordered_map<std::string, std::size_t> pending;
  std::vector<ScoredCandidate> out(requests.size());
  std::size_t sent = 0;
  std::size_t received = 0;
  try {
    while (received < requests.size()) {
      while (sent < requests.size() && pending.size() < static_cast<std::size_t>(cfg_.window)) {
        const ScoreRequest& r = requests[sent];
        if (!pending.emplace(r.id, sent).second) {
          throw Error(ErrorFamily::Data, "DuplicateId", "duplicate request id " + r.id);
        }
        nlohmann::json line = {{"id", r.id}, {"text", r.text}, {"label", r.label}};
        channel_->write_all(line.dump() + "\n");
        ++sent;
      }
      const std::string raw = channel_->read_line(cfg_.timeout_ms);
      const std::size_t line_no = ++lines_read_;
      const nlohmann::json reply = nlohmann::json::parse(raw, nullptr, false);
      if (reply.is_discarded() || !reply.is_object()) throw violation(line_no, "not a JSON object");
      if (!reply.contains("id") || !reply["id"].is_string()) throw violation(line_no, "missing id");
      if (!reply.contains("loss") || !reply["loss"].is_number()) {
        throw violation(line_no, "missing loss");
      }
      if (!reply.contains("max_prob") || !reply["max_prob"].is_number()) {
        throw violation(line_no, "missing max_prob");
      }
      const auto it = pending.find(reply["id"].get<std::string>());
      if (it == pending.end()) throw violation(line_no, "unknown id");
      const double loss = reply["loss"].get<double>();
      const double max_prob = reply["max_prob"].get<double>();
      if (!std::isfinite(loss) || loss < 0.0 || !(max_prob > 0.0 && max_prob <= 1.0)) {
        throw violation(line_no, "loss or max_prob out of range");
      }
      ScoredCandidate& sc = out[it->second];
      sc.id = it->first;
      sc.loss = loss;
      sc.max_probability = max_prob;
      pending.erase(it);
      ++received;
    }
  } catch (...) {
    // The stream is out of sync; the next batch starts a fresh connection.
    channel_.reset();
    throw;
  }
  return out;
}

}  // namespace gencode::scorer
