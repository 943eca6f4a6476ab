#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gencode/scorer/score.hpp"

namespace gencode::scorer {

// Either `command` (argv of a child process speaking on stdin/stdout) or
// `host`/`port` (TCP) must be set.
struct ExternalScorerConfig {
  std::vector<std::string> command;
  std::optional<std::string> host;
  int port = 0;
  int window = 16;          // max requests in flight
  int timeout_ms = 30000;   // per response line
};

// Line-delimited JSON: request {"id","text","label"}, response
// {"id","loss","max_prob"}. Ids must round-trip; responses may arrive in any
// order. Errors: Error(Scorer, "ScorerUnavailable") when the peer is gone or
// silent, Error(Scorer, "ProtocolViolation") on a malformed line.
class ExternalScorer final : public Scorer {
 public:
  explicit ExternalScorer(ExternalScorerConfig cfg);
  ~ExternalScorer() override;
  ExternalScorer(const ExternalScorer&) = delete;
  ExternalScorer& operator=(const ExternalScorer&) = delete;

  std::vector<ScoredCandidate> score(std::span<const ScoreRequest> requests) override;

 private:
  struct Channel;
  ExternalScorerConfig cfg_;
  std::unique_ptr<Channel> channel_;
  std::size_t lines_read_ = 0;

  void connect();
};

}  // namespace gencode::scorer
