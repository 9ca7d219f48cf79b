#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace boxart {

/// Connection settings for a chat-completion-style endpoint. Temperature
/// stays 0 for replication runs; every request is single-turn with no
/// conversation history.
struct ClientConfig {
  std::string base_url = "http://localhost:8000/v1";
  std::string model_name = "model";
  double temperature = 0.0;
  int request_timeout_s = 60;
  int max_transport_retries = 3;
  int max_parallel_requests = 4;
  std::string api_key_env_name = "MODEL_API_KEY";

  static ClientConfig from_json_file(const std::string& path);
};

/// Single-turn completion interface. Implementations must be callable from
/// multiple threads.
class ModelClient {
 public:
  virtual ~ModelClient() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

/// Deterministic scripted client: returns the scripted responses in call
/// order. Throws Transport when the script runs out.
class MockClient : public ModelClient {
 public:
  explicit MockClient(std::vector<std::string> script);

  std::string complete(const std::string& prompt) override;
  int calls() const;

  /// Loads a JSON array of strings, one scripted response per element.
  static std::vector<std::string> script_from_json_file(const std::string& path);

 private:
  std::vector<std::string> script_;
  std::size_t next_ = 0;
  mutable std::mutex mutex_;
};

/// Live client for any chat-completion-compatible endpoint. The bearer token
/// comes from the environment variable named in the config; a missing token
/// raises Auth before any network activity. Transport failures and 429/5xx
/// are retried with exponential backoff up to max_transport_retries.
class HttpChatClient : public ModelClient {
 public:
  explicit HttpChatClient(ClientConfig config);
  ~HttpChatClient() override;

  std::string complete(const std::string& prompt) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace boxart
