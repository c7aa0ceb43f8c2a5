#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "divcdcr/model.hpp"

namespace divcdcr::wikidata {

inline constexpr std::string_view kDefaultEndpoint = "https://www.wikidata.org/w/api.php";
inline constexpr std::int64_t kDefaultTtlSeconds = 30 * 24 * 3600;

struct EntityCandidate {
  std::string qid;
  std::string label;
  std::string description;

  friend bool operator==(const EntityCandidate&, const EntityCandidate&) = default;
};

struct QidStatus {
  bool exists = false;
  std::string canonical_label;  // English label, empty when missing

  friend bool operator==(const QidStatus&, const QidStatus&) = default;
};

using QueryParams = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
  int status = 0;
  std::string body;
};

// One GET against the API endpoint. Implementations throw Error(NetworkError)
// when no response was received.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse get(const std::string& endpoint, const QueryParams& params) = 0;
};

class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(std::chrono::seconds timeout = std::chrono::seconds(20));
  HttpResponse get(const std::string& endpoint, const QueryParams& params) override;

 private:
  std::chrono::seconds timeout_;
};

// Seconds since the Unix epoch.
using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_seconds();

// Directory of JSON files named by the SHA-256 of their key:
// {"key", "fetched_at", "ttl", "payload"}. Unreadable, mismatched, or expired
// entries read as absent. Writes go through a temporary file and a rename.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::optional<nlohmann::json> get(const std::string& key, std::int64_t now) const;
  void put(const std::string& key, const nlohmann::json& payload, std::int64_t now,
           std::int64_t ttl) const;
  std::filesystem::path entry_path(const std::string& key) const;
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
};

std::string sha256_hex(std::string_view data);

// $DIVCDCR_WIKIDATA_URL or the public endpoint.
std::string endpoint_from_env();
// $XDG_CACHE_HOME/divcdcr, else ~/.cache/divcdcr, else a temp-dir fallback.
std::filesystem::path default_cache_dir();

struct ClientOptions {
  std::string endpoint = std::string(kDefaultEndpoint);
  std::optional<std::filesystem::path> cache_dir;  // no caching when absent
  bool offline = false;
  std::int64_t ttl_seconds = kDefaultTtlSeconds;
  std::chrono::milliseconds min_interval{100};
  Clock clock = system_clock_seconds;
};

// Shared handle; live requests are serialized and spaced by min_interval.
class Client {
 public:
  Client(ClientOptions options, std::shared_ptr<Transport> transport);

  // Up to `limit` candidates in service order. Throws Error(Precondition) for
  // a label that is empty after trimming, Error(OfflineMiss) on a cache miss
  // in offline mode, Error(ServiceError) for API errors.
  std::vector<EntityCandidate> search_entity(std::string_view label, std::size_t limit);
  // Throws Error(Precondition) unless qid has the form Q<digits>.
  QidStatus verify_qid(std::string_view qid);

  const ClientOptions& options() const noexcept { return options_; }

 private:
  nlohmann::json fetch(const std::string& key, const QueryParams& params);

  ClientOptions options_;
  std::shared_ptr<Transport> transport_;
  std::optional<DiskCache> cache_;
  std::mutex live_mutex_;
  std::optional<std::chrono::steady_clock::time_point> last_request_;
};

// Decoding of raw API payloads; Error(ServiceError) on API error objects.
std::vector<EntityCandidate> parse_search_response(const nlohmann::json& payload,
                                                   std::size_t limit);
QidStatus parse_entity_response(const nlohmann::json& payload, std::string_view qid);

// Link audit over every local cluster:
//   A01 warning  linked QID does not exist
//   A02 info     cluster name shares no case-folded token with the QID label
//   A03 info     unlinked cluster name matches exactly one of five candidates
//   A04 info     linked QID could not be checked (offline miss, network, service)
// Unlinked clusters whose lookup fails are skipped. Findings are sorted.
std::vector<ValidationFinding> audit_corpus_links(const Corpus& corpus, Client& client);

// True when the two strings share a token after splitting on punctuation and
// whitespace and folding case.
bool shares_token(std::string_view a, std::string_view b);

}  // namespace divcdcr::wikidata
