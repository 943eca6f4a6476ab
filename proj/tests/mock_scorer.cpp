// Line-protocol scorer used by the external-scorer tests.
// Usage: mock_scorer <normal|reverse|die-after N|malformed|silent>
// The loss of a request is (text length % 7) / 10 + label / 100.
#include <poll.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace {

std::string reply_for(const std::string& line) {
  const auto req = nlohmann::json::parse(line);
  const std::string text = req["text"].get<std::string>();
  const double loss = static_cast<double>(text.size() % 7) / 10.0 +
                      static_cast<double>(req["label"].get<std::size_t>()) / 100.0;
  return nlohmann::json{{"id", req["id"]}, {"loss", loss}, {"max_prob", 0.5}}.dump();
}

void emit(const std::string& s) {
  std::string out = s + "\n";
  if (::write(1, out.data(), out.size()) < 0) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "normal";
  long budget = mode == "die-after" && argc > 2 ? std::atol(argv[2]) : -1;

  std::string buffer;
  std::vector<std::string> held;
  char chunk[4096];
  for (;;) {
    pollfd pfd{0, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, mode == "reverse" ? 30 : -1);
    if (ready == 0) {
      for (auto it = held.rbegin(); it != held.rend(); ++it) emit(*it);
      held.clear();
      continue;
    }
    const ssize_t n = ::read(0, chunk, sizeof chunk);
    if (n <= 0) return 0;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t nl;
    while ((nl = buffer.find('\n')) != std::string::npos) {
      const std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (mode == "silent") continue;
      if (mode == "malformed") {
        emit("{\"id\": 3");
        continue;
      }
      if (budget == 0) return 0;
      if (budget > 0) --budget;
      const std::string reply = reply_for(line);
      if (mode == "reverse") {
        held.push_back(reply);
      } else {
        emit(reply);
      }
    }
  }
}
