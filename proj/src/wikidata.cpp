#include "divcdcr/wikidata.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <openssl/evp.h>

#include "divcdcr/corpus_io.hpp"
#include "divcdcr/unicode.hpp"
#include "divcdcr/validation.hpp"

namespace divcdcr::wikidata {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view text) {
  std::u32string cps = unicode::decode(text);
  std::size_t begin = 0, end = cps.size();
  while (begin < end && unicode::is_whitespace(cps[begin])) ++begin;
  while (end > begin && unicode::is_whitespace(cps[end - 1])) --end;
  return unicode::encode(std::u32string_view(cps).substr(begin, end - begin));
}

std::set<std::u32string> folded_tokens(std::string_view text) {
  std::set<std::u32string> tokens;
  std::u32string current;
  for (char32_t cp : unicode::fold_case(unicode::decode(text))) {
    if (unicode::is_trim_char(cp)) {
      if (!current.empty()) tokens.insert(std::move(current));
      current.clear();
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) tokens.insert(std::move(current));
  return tokens;
}

std::string error_code(const nlohmann::json& payload) {
  if (!payload.is_object() || !payload.contains("error")) return {};
  const auto& err = payload["error"];
  if (err.is_object() && err.contains("code") && err["code"].is_string()) {
    return err["code"].get<std::string>();
  }
  return "unknown";
}

}  // namespace

HttpTransport::HttpTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

HttpResponse HttpTransport::get(const std::string& endpoint, const QueryParams& params) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::NetworkError, "endpoint '" + endpoint + "' has no scheme");
  }
  const auto path_begin = endpoint.find('/', scheme_end + 3);
  const std::string origin = endpoint.substr(0, path_begin);
  const std::string path = path_begin == std::string::npos ? "/" : endpoint.substr(path_begin);

  httplib::Client client(origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_follow_location(true);
  httplib::Params query;
  for (const auto& [k, v] : params) query.emplace(k, v);
  httplib::Headers headers = {{"User-Agent", "divcdcr/1.0 (corpus link audit)"}};
  auto result = client.Get(path, query, headers);
  if (!result) {
    throw Error(ErrorKind::NetworkError,
                origin + ": " + httplib::to_string(result.error()));
  }
  return HttpResponse{result->status, result->body};
}

std::int64_t system_clock_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::IoError, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

fs::path DiskCache::entry_path(const std::string& key) const {
  return dir_ / (sha256_hex(key) + ".json");
}

std::optional<nlohmann::json> DiskCache::get(const std::string& key, std::int64_t now) const {
  std::ifstream in(entry_path(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto entry = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (entry.is_discarded() || !entry.is_object()) return std::nullopt;
  try {
    if (entry.at("key").get<std::string>() != key) return std::nullopt;
    const auto fetched_at = entry.at("fetched_at").get<std::int64_t>();
    const auto ttl = entry.at("ttl").get<std::int64_t>();
    if (now < fetched_at || now - fetched_at >= ttl) return std::nullopt;
    return entry.at("payload");
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void DiskCache::put(const std::string& key, const nlohmann::json& payload, std::int64_t now,
                    std::int64_t ttl) const {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create cache dir " + dir_.string());

  nlohmann::ordered_json entry;
  entry["key"] = key;
  entry["fetched_at"] = now;
  entry["ttl"] = ttl;
  entry["payload"] = payload;
  const fs::path target = entry_path(key);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  write_text_file(tmp, entry.dump(2) + "\n");
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::IoError, "cannot move cache entry into " + target.string());
  }
}

std::string endpoint_from_env() {
  const char* url = std::getenv("DIVCDCR_WIKIDATA_URL");
  return url && *url ? std::string(url) : std::string(kDefaultEndpoint);
}

fs::path default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return fs::path(xdg) / "divcdcr";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return fs::path(home) / ".cache" / "divcdcr";
  }
  return fs::temp_directory_path() / "divcdcr-cache";
}

Client::Client(ClientOptions options, std::shared_ptr<Transport> transport)
    : options_(std::move(options)), transport_(std::move(transport)) {
  if (options_.cache_dir) cache_.emplace(*options_.cache_dir);
}

nlohmann::json Client::fetch(const std::string& key, const QueryParams& params) {
  if (cache_) {
    if (auto hit = cache_->get(key, options_.clock())) return *hit;
  }
  if (options_.offline) {
    throw Error(ErrorKind::OfflineMiss, "no cached response for " + key);
  }
  if (!transport_) throw Error(ErrorKind::NetworkError, "no transport configured");

  HttpResponse response;
  {
    std::lock_guard lock(live_mutex_);
    if (last_request_) {
      const auto next = *last_request_ + options_.min_interval;
      std::this_thread::sleep_until(next);
    }
    try {
      response = transport_->get(options_.endpoint, params);
    } catch (...) {
      last_request_ = std::chrono::steady_clock::now();
      throw;
    }
    last_request_ = std::chrono::steady_clock::now();
  }
  if (response.status < 200 || response.status >= 300) {
    throw Error(ErrorKind::ServiceError, "HTTP status " + std::to_string(response.status));
  }
  auto payload = nlohmann::json::parse(response.body, nullptr, false);
  if (payload.is_discarded()) {
    throw Error(ErrorKind::ServiceError, "response is not JSON");
  }
  const std::string code = error_code(payload);
  if (!code.empty() && code != "no-such-entity") {
    throw Error(ErrorKind::ServiceError, "API error " + code);
  }
  if (cache_) cache_->put(key, payload, options_.clock(), options_.ttl_seconds);
  return payload;
}

std::vector<EntityCandidate> parse_search_response(const nlohmann::json& payload,
                                                   std::size_t limit) {
  if (const auto code = error_code(payload); !code.empty()) {
    throw Error(ErrorKind::ServiceError, "API error " + code);
  }
  std::vector<EntityCandidate> out;
  if (!payload.is_object() || !payload.contains("search") || !payload["search"].is_array()) {
    throw Error(ErrorKind::ServiceError, "search response without result list");
  }
  for (const auto& item : payload["search"]) {
    if (out.size() >= limit) break;
    if (!item.is_object()) continue;
    const std::string id = item.value("id", "");
    if (!is_qid(id)) continue;
    out.push_back(EntityCandidate{id, item.value("label", ""), item.value("description", "")});
  }
  return out;
}

QidStatus parse_entity_response(const nlohmann::json& payload, std::string_view qid) {
  const auto code = error_code(payload);
  if (code == "no-such-entity") return QidStatus{};
  if (!code.empty()) throw Error(ErrorKind::ServiceError, "API error " + code);
  if (!payload.is_object() || !payload.contains("entities") ||
      !payload["entities"].is_object()) {
    throw Error(ErrorKind::ServiceError, "entity response without entities");
  }
  const auto& entities = payload["entities"];
  // Redirected identifiers come back keyed by their target.
  auto it = entities.find(std::string(qid));
  if (it == entities.end()) it = entities.begin();
  if (it == entities.end() || !it->is_object() || it->contains("missing")) return QidStatus{};
  QidStatus status{true, {}};
  if (it->contains("labels") && (*it)["labels"].contains("en")) {
    status.canonical_label = (*it)["labels"]["en"].value("value", "");
  }
  return status;
}

std::vector<EntityCandidate> Client::search_entity(std::string_view label, std::size_t limit) {
  const std::string query = trim(label);
  if (query.empty()) throw Error(ErrorKind::Precondition, "search label is empty");
  if (limit == 0) return {};
  const std::string key = "wbsearchentities\nen\n" + std::to_string(limit) + "\n" + query;
  const auto payload = fetch(key, {{"action", "wbsearchentities"},
                                   {"search", query},
                                   {"language", "en"},
                                   {"uselang", "en"},
                                   {"type", "item"},
                                   {"limit", std::to_string(limit)},
                                   {"format", "json"}});
  return parse_search_response(payload, limit);
}

QidStatus Client::verify_qid(std::string_view qid) {
  if (!is_qid(qid)) {
    throw Error(ErrorKind::Precondition, "'" + std::string(qid) + "' is not a QID");
  }
  const std::string key = "wbgetentities\nen\n" + std::string(qid);
  const auto payload = fetch(key, {{"action", "wbgetentities"},
                                   {"ids", std::string(qid)},
                                   {"props", "labels"},
                                   {"languages", "en"},
                                   {"format", "json"}});
  return parse_entity_response(payload, qid);
}

bool shares_token(std::string_view a, std::string_view b) {
  const auto ta = folded_tokens(a);
  const auto tb = folded_tokens(b);
  return std::any_of(ta.begin(), ta.end(), [&](const auto& t) { return tb.contains(t); });
}

std::vector<ValidationFinding> audit_corpus_links(const Corpus& corpus, Client& client) {
  struct Verified {
    std::optional<QidStatus> status;
    std::string failure;
  };
  std::map<std::string, Verified> verified;
  std::map<std::string, std::optional<EntityCandidate>> suggested;

  auto verify = [&](const std::string& qid) -> const Verified& {
    auto it = verified.find(qid);
    if (it != verified.end()) return it->second;
    Verified v;
    try {
      v.status = client.verify_qid(qid);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OfflineMiss && e.kind() != ErrorKind::NetworkError &&
          e.kind() != ErrorKind::ServiceError) {
        throw;
      }
      v.failure = e.what();
    }
    return verified.emplace(qid, std::move(v)).first->second;
  };
  auto suggest = [&](const std::string& name) -> const std::optional<EntityCandidate>& {
    auto it = suggested.find(name);
    if (it != suggested.end()) return it->second;
    std::optional<EntityCandidate> pick;
    try {
      const auto wanted = unicode::fold_case(unicode::decode(trim(name)));
      std::vector<EntityCandidate> exact;
      for (auto& c : client.search_entity(name, 5)) {
        if (unicode::fold_case(unicode::decode(c.label)) == wanted) exact.push_back(std::move(c));
      }
      if (exact.size() == 1) pick = std::move(exact.front());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OfflineMiss && e.kind() != ErrorKind::NetworkError &&
          e.kind() != ErrorKind::ServiceError && e.kind() != ErrorKind::Precondition) {
        throw;
      }
    }
    return suggested.emplace(name, std::move(pick)).first->second;
  };

  std::vector<ValidationFinding> findings;
  for_each_document(corpus, [&](const Document& doc) {
    // name -> (first offset, distinct well-formed QIDs)
    std::map<std::string, std::pair<std::size_t, std::set<std::string>>> clusters;
    for (const auto& m : doc.mentions) {
      if (!m.global_entity || m.global_entity->empty()) continue;
      auto [it, inserted] = clusters.try_emplace(*m.global_entity, m.span.start,
                                                 std::set<std::string>{});
      it->second.first = std::min(it->second.first, m.span.start);
      if (m.wikidata && is_qid(*m.wikidata)) it->second.second.insert(*m.wikidata);
    }
    for (const auto& [name, info] : clusters) {
      const auto& [offset, qids] = info;
      auto emit = [&](std::string rule, Severity severity, std::string message) {
        findings.push_back(ValidationFinding{std::move(rule), severity, doc.id, name, offset,
                                             std::move(message)});
      };
      if (qids.empty()) {
        if (const auto& pick = suggest(name)) {
          emit("A03", Severity::info,
               "candidate " + pick->qid + " (" + pick->label + ") matches the name");
        }
        continue;
      }
      for (const auto& qid : qids) {
        const Verified& v = verify(qid);
        if (!v.status) {
          emit("A04", Severity::info, qid + " not verified: " + v.failure);
        } else if (!v.status->exists) {
          emit("A01", Severity::warning, qid + " does not exist");
        } else if (!v.status->canonical_label.empty() &&
                   !shares_token(name, v.status->canonical_label)) {
          emit("A02", Severity::info,
               qid + " is labelled '" + v.status->canonical_label + "'");
        }
      }
    }
  });
  sort_findings(findings);
  return findings;
}

}  // namespace divcdcr::wikidata
