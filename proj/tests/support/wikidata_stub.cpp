#include "wikidata_stub.hpp"

#include <algorithm>
#include <thread>

#include "divcdcr/corpus_io.hpp"
#include "divcdcr/error.hpp"

namespace divcdcr::test {

namespace {

std::string param(const wikidata::QueryParams& params, std::string_view name) {
  for (const auto& [k, v] : params) {
    if (k == name) return v;
  }
  return {};
}

}  // namespace

std::string fixture_file_for(const wikidata::QueryParams& params) {
  const std::string action = param(params, "action");
  if (action == "wbsearchentities") {
    std::string label = param(params, "search");
    std::replace(label.begin(), label.end(), ' ', '_');
    return "search_" + label + ".json";
  }
  if (action == "wbgetentities") return "entity_" + param(params, "ids") + ".json";
  return {};
}

wikidata::HttpResponse FixtureTransport::get(const std::string&,
                                             const wikidata::QueryParams& params) {
  ++calls_;
  const int now_in_flight = ++in_flight_;
  int seen = max_in_flight_.load();
  while (now_in_flight > seen && !max_in_flight_.compare_exchange_weak(seen, now_in_flight)) {
  }
  {
    std::lock_guard lock(mutex_);
    starts_.push_back(std::chrono::steady_clock::now());
    requests_.push_back(params);
  }
  if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
  wikidata::HttpResponse response{404, "no fixture"};
  const std::string name = fixture_file_for(params);
  if (!name.empty() && std::filesystem::exists(dir_ / name)) {
    response = {200, read_text_file(dir_ / name)};
  }
  --in_flight_;
  return response;
}

std::vector<std::chrono::steady_clock::time_point> FixtureTransport::starts() const {
  std::lock_guard lock(mutex_);
  return starts_;
}

std::vector<wikidata::QueryParams> FixtureTransport::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

wikidata::HttpResponse UnreachableTransport::get(const std::string& endpoint,
                                                 const wikidata::QueryParams&) {
  ++calls;
  throw Error(ErrorKind::NetworkError, endpoint + ": connection refused");
}

}  // namespace divcdcr::test
