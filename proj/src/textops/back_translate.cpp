#include <condition_variable>
#include <mutex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "dictionary.hpp"
#include "gencode/common/error.hpp"
#include "gencode/textops/text_ops.hpp"

namespace gencode::textops {

namespace {

// Process-wide cap on concurrent back-translation requests.
class InFlightLimiter {
 public:
  void acquire(int cap) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < cap; });
    ++in_flight_;
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      --in_flight_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
};

InFlightLimiter& limiter() {
  static InFlightLimiter instance;
  return instance;
}

struct Endpoint {
  std::string host;
  int port = 80;
  std::string path = "/";
};

Error unreachable(const std::string& url, const std::string& why) {
  return Error(ErrorFamily::Scorer, "BtUnreachable", "back-translation endpoint " + url + ": " + why);
}

Endpoint parse_url(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) throw unreachable(url, "only http:// URLs are supported");
  std::string rest = url.substr(kScheme.size());
  Endpoint ep;
  const auto slash = rest.find('/');
  if (slash != std::string::npos) {
    ep.path = rest.substr(slash);
    rest = rest.substr(0, slash);
  }
  const auto colon = rest.rfind(':');
  if (colon != std::string::npos) {
    try {
      ep.port = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw unreachable(url, "bad port");
    }
    rest = rest.substr(0, colon);
  }
  if (rest.empty()) throw unreachable(url, "missing host");
  ep.host = rest;
  return ep;
}

std::string stub_translate(std::string_view source, ir::Lang lang) {
  std::vector<ir::Token> tokens = ir::tokenize_lenient(source, lang);
  if (tokens.empty()) return std::string(source);
  for (ir::Token& t : tokens) {
    if (t.kind == ir::TokenKind::Identifier) t.text = stub_round_trip(t.text);
  }
  return ir::detokenize(tokens);
}

std::string online_translate(std::string_view source, const TextOpConfig& cfg) {
  const std::string& url = *cfg.bt_endpoint;
  const Endpoint ep = parse_url(url);
  httplib::Client client(ep.host, ep.port);
  const auto timeout = std::chrono::milliseconds(cfg.bt_timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  const std::string body =
      nlohmann::json{{"text", std::string(source)}, {"pivot", cfg.bt_pivot}}.dump();
  limiter().acquire(cfg.bt_max_in_flight);
  httplib::Result res = client.Post(ep.path, body, "application/json");
  limiter().release();
  if (!res) throw unreachable(url, httplib::to_string(res.error()));
  if (res->status != 200) {
    throw Error(ErrorFamily::Scorer, "MalformedResponse",
                "back-translation endpoint returned HTTP " + std::to_string(res->status));
  }
  nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("text") ||
      !reply["text"].is_string()) {
    throw Error(ErrorFamily::Scorer, "MalformedResponse",
                "back-translation reply lacks a \"text\" string");
  }
  return reply["text"].get<std::string>();
}

}  // namespace

std::string stub_round_trip(std::string_view identifier) {
  const auto& dict = detail::stub_dictionary();
  std::string out;
  std::size_t start = 0;
  while (start <= identifier.size()) {
    std::size_t end = identifier.find('_', start);
    if (end == std::string_view::npos) end = identifier.size();
    const std::string part(identifier.substr(start, end - start));
    auto fwd = dict.forward.find(part);
    out += fwd == dict.forward.end() ? part : dict.backward.at(fwd->second);
    if (end == identifier.size()) break;
    out.push_back('_');
    start = end + 1;
  }
  return out;
}

std::string back_translate(std::string_view source, ir::Lang lang, const TextOpConfig& cfg) {
  if (!cfg.bt_endpoint) {
    if (!cfg.bt_stub) throw unreachable("<none>", "no endpoint configured and stub disabled");
    return stub_translate(source, lang);
  }
  try {
    return online_translate(source, cfg);
  } catch (const Error& e) {
    if (e.code() == "BtUnreachable" && cfg.bt_stub) return stub_translate(source, lang);
    throw;
  }
}

}  // namespace gencode::textops
