#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <vector>

#include "divcdcr/wikidata.hpp"

namespace divcdcr::test {

// Serves recorded API responses from a fixture directory:
// wbsearchentities -> search_<label, spaces as _>.json,
// wbgetentities    -> entity_<ids>.json, anything else -> HTTP 404.
class FixtureTransport final : public wikidata::Transport {
 public:
  explicit FixtureTransport(std::filesystem::path dir,
                            std::chrono::milliseconds delay = std::chrono::milliseconds(0))
      : dir_(std::move(dir)), delay_(delay) {}

  wikidata::HttpResponse get(const std::string& endpoint,
                             const wikidata::QueryParams& params) override;

  std::size_t calls() const { return calls_.load(); }
  int max_in_flight() const { return max_in_flight_.load(); }
  std::vector<std::chrono::steady_clock::time_point> starts() const;
  std::vector<wikidata::QueryParams> requests() const;

 private:
  std::filesystem::path dir_;
  std::chrono::milliseconds delay_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
  mutable std::mutex mutex_;
  std::vector<std::chrono::steady_clock::time_point> starts_;
  std::vector<wikidata::QueryParams> requests_;
};

// Fails every request the way a dead network does.
class UnreachableTransport final : public wikidata::Transport {
 public:
  wikidata::HttpResponse get(const std::string&, const wikidata::QueryParams&) override;
  std::atomic<std::size_t> calls{0};
};

// Answers every request with one status and body.
class FixedTransport final : public wikidata::Transport {
 public:
  FixedTransport(int status, std::string body) : status_(status), body_(std::move(body)) {}
  wikidata::HttpResponse get(const std::string&, const wikidata::QueryParams&) override {
    ++calls;
    return {status_, body_};
  }
  std::atomic<std::size_t> calls{0};

 private:
  int status_;
  std::string body_;
};

// File name a request maps to, or empty when it has no fixture form.
std::string fixture_file_for(const wikidata::QueryParams& params);

}  // namespace divcdcr::test
