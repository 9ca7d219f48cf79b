#include "boxart/client.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "boxart/error.hpp"

namespace boxart {
namespace {

using nlohmann::json;

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path_prefix;
};

ParsedUrl parse_base_url(const std::string& base_url) {
  const std::size_t scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::InvalidArgs, "base_url must include a scheme: " + base_url);
  }
  const std::size_t path_start = base_url.find('/', scheme_end + 3);
  ParsedUrl parsed;
  if (path_start == std::string::npos) {
    parsed.origin = base_url;
  } else {
    parsed.origin = base_url.substr(0, path_start);
    parsed.path_prefix = base_url.substr(path_start);
  }
  while (!parsed.path_prefix.empty() && parsed.path_prefix.back() == '/') {
    parsed.path_prefix.pop_back();
  }
  return parsed;
}

std::string body_excerpt(const std::string& body) {
  constexpr std::size_t kMax = 200;
  if (body.size() <= kMax) return body;
  return body.substr(0, kMax) + "...";
}

}  // namespace

ClientConfig ClientConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  json parsed;
  try {
    in >> parsed;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::Io, path + ": " + ex.what());
  }
  ClientConfig config;
  if (parsed.contains("base_url")) config.base_url = parsed["base_url"].get<std::string>();
  if (parsed.contains("model")) config.model_name = parsed["model"].get<std::string>();
  if (parsed.contains("temperature")) config.temperature = parsed["temperature"].get<double>();
  if (parsed.contains("timeout_s")) config.request_timeout_s = parsed["timeout_s"].get<int>();
  if (parsed.contains("max_parallel")) {
    config.max_parallel_requests = parsed["max_parallel"].get<int>();
  }
  if (parsed.contains("api_key_env")) {
    config.api_key_env_name = parsed["api_key_env"].get<std::string>();
  }
  return config;
}

MockClient::MockClient(std::vector<std::string> script) : script_(std::move(script)) {}

std::string MockClient::complete(const std::string&) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (next_ >= script_.size()) {
    throw Error(ErrorCode::Transport, "mock script exhausted after " +
                                          std::to_string(script_.size()) + " responses");
  }
  return script_[next_++];
}

int MockClient::calls() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return static_cast<int>(next_);
}

std::vector<std::string> MockClient::script_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  json parsed;
  try {
    in >> parsed;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::Io, path + ": " + ex.what());
  }
  if (!parsed.is_array()) {
    throw Error(ErrorCode::InvalidArgs, path + ": mock script must be a JSON array of strings");
  }
  return parsed.get<std::vector<std::string>>();
}

struct HttpChatClient::Impl {
  ClientConfig config;
  ParsedUrl url;
};

HttpChatClient::HttpChatClient(ClientConfig config)
    : impl_(new Impl{std::move(config), {}}) {
  impl_->url = parse_base_url(impl_->config.base_url);
}

HttpChatClient::~HttpChatClient() = default;

std::string HttpChatClient::complete(const std::string& prompt) {
  const ClientConfig& config = impl_->config;
  const char* key = std::getenv(config.api_key_env_name.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorCode::Auth, "environment variable " + config.api_key_env_name + " is unset");
  }

  const json body{{"model", config.model_name},
                  {"temperature", config.temperature},
                  {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})}};
  const std::string payload = body.dump();
  const std::string path = impl_->url.path_prefix + "/chat/completions";
  const httplib::Headers headers{{"Authorization", std::string("Bearer ") + key}};

  std::string last_failure = "no attempt made";
  bool rate_limited = false;
  for (int attempt = 0; attempt <= config.max_transport_retries; ++attempt) {
    if (attempt > 0) {
      const auto delay = std::chrono::milliseconds(500L << std::min(attempt - 1, 4));
      std::this_thread::sleep_for(delay);
    }
    httplib::Client client(impl_->url.origin);
    client.set_connection_timeout(config.request_timeout_s, 0);
    client.set_read_timeout(config.request_timeout_s, 0);
    client.set_write_timeout(config.request_timeout_s, 0);

    httplib::Result result = client.Post(path, headers, payload, "application/json");
    if (!result) {
      last_failure = httplib::to_string(result.error());
      rate_limited = false;
      continue;
    }
    const int status = result->status;
    if (status == 401 || status == 403) {
      throw Error(ErrorCode::Auth, "HTTP " + std::to_string(status) + ": " +
                                       body_excerpt(result->body));
    }
    if (status == 429 || status >= 500) {
      last_failure = "HTTP " + std::to_string(status) + ": " + body_excerpt(result->body);
      rate_limited = status == 429;
      continue;
    }
    if (status != 200) {
      throw Error(ErrorCode::Transport, "HTTP " + std::to_string(status) + ": " +
                                            body_excerpt(result->body));
    }
    json parsed;
    try {
      parsed = json::parse(result->body);
    } catch (const json::exception&) {
      throw Error(ErrorCode::MalformedResponse,
                  "endpoint returned non-JSON: " + body_excerpt(result->body));
    }
    try {
      return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
      throw Error(ErrorCode::MalformedResponse,
                  "missing choices[0].message.content: " + body_excerpt(result->body));
    }
  }
  throw Error(rate_limited ? ErrorCode::RateLimited : ErrorCode::Transport,
              "gave up after " + std::to_string(config.max_transport_retries + 1) +
                  " attempts; last: " + last_failure);
}

}  // namespace boxart
