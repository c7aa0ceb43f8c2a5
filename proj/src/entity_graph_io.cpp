#include <json.hpp>

#include "divcdcr/entity_graph.hpp"

namespace divcdcr {

namespace {

using ojson = nlohmann::ordered_json;

ojson cluster_json(const LocalCluster& c) {
  ojson j;
  j["document_id"] = c.document_id;
  j["name"] = c.name;
  j["mention_ids"] = c.mention_ids;
  j["uri"] = c.uri ? ojson(*c.uri) : ojson(nullptr);
  return j;
}

LocalCluster cluster_from(const nlohmann::json& j) {
  LocalCluster c;
  c.document_id = j.at("document_id").get<std::string>();
  c.name = j.at("name").get<std::string>();
  c.mention_ids = j.at("mention_ids").get<std::vector<std::string>>();
  if (!j.at("uri").is_null()) c.uri = j.at("uri").get<std::string>();
  return c;
}

ojson entity_json(const DiscourseEntity& e) {
  ojson j;
  j["discourse_id"] = e.discourse_id;
  j["key"] = e.key;
  j["key_is_uri"] = e.key_is_uri;
  j["clusters"] = ojson::array();
  for (const auto& c : e.clusters) j["clusters"].push_back(cluster_json(c));
  return j;
}

DiscourseEntity entity_from(const nlohmann::json& j) {
  DiscourseEntity e;
  e.discourse_id = j.at("discourse_id").get<std::string>();
  e.key = j.at("key").get<std::string>();
  e.key_is_uri = j.at("key_is_uri").get<bool>();
  for (const auto& c : j.at("clusters")) e.clusters.push_back(cluster_from(c));
  return e;
}

template <typename Enum>
Enum enum_from(const nlohmann::json& j, std::optional<Enum> (*parse)(std::string_view)) {
  const auto text = j.get<std::string>();
  auto value = parse(text);
  if (!value) throw Error(ErrorKind::BadEnum, "'" + text + "'");
  return *value;
}

// Parses one record and maps json type errors onto SchemaError.
template <typename Fn>
auto read_record(std::string_view line, Fn&& fn) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line.begin(), line.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, e.what());
  }
  try {
    return fn(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, e.what());
  }
}

}  // namespace

std::string to_machine(const DiscourseEntity& entity) { return entity_json(entity).dump(); }

std::string to_machine(const GlobalReferent& referent) {
  ojson j;
  j["uri"] = referent.uri;
  j["discourse_entities"] = ojson::array();
  for (const auto& e : referent.discourse_entities) {
    j["discourse_entities"].push_back(entity_json(e));
  }
  return j.dump();
}

std::string to_machine(const Frame& frame) {
  ojson j;
  j["referent_key"] = frame.referent_key;
  j["outlet"] = to_string(frame.outlet);
  j["surfaces"] = ojson::array();
  for (const auto& s : frame.surfaces) {
    ojson surface;
    surface["document_id"] = s.document_id;
    surface["mention_id"] = s.mention_id;
    surface["start"] = s.span.start;
    surface["end"] = s.span.end;
    surface["text"] = s.text;
    surface["entity_type"] = s.entity_type.text();
    j["surfaces"].push_back(std::move(surface));
  }
  return j.dump();
}

std::string to_machine(const RelationStats& stats) {
  ojson j;
  j["counts"] = ojson::array();
  for (const auto& [key, count] : stats.counts) {
    ojson row;
    row["outlet"] = to_string(key.first);
    row["label"] = to_string(key.second);
    row["count"] = count;
    j["counts"].push_back(std::move(row));
  }
  j["discourse_totals"] = ojson::object();
  for (const auto& [id, total] : stats.discourse_totals) j["discourse_totals"][id] = total;
  return j.dump();
}

DiscourseEntity discourse_entity_from_machine(std::string_view line) {
  return read_record(line, [](const nlohmann::json& j) { return entity_from(j); });
}

GlobalReferent global_referent_from_machine(std::string_view line) {
  return read_record(line, [](const nlohmann::json& j) {
    GlobalReferent r;
    r.uri = j.at("uri").get<std::string>();
    for (const auto& e : j.at("discourse_entities")) r.discourse_entities.push_back(entity_from(e));
    return r;
  });
}

Frame frame_from_machine(std::string_view line) {
  return read_record(line, [](const nlohmann::json& j) {
    Frame f;
    f.referent_key = j.at("referent_key").get<std::string>();
    f.outlet = enum_from<OutletCode>(j.at("outlet"), parse_outlet);
    for (const auto& s : j.at("surfaces")) {
      f.surfaces.push_back(FrameSurface{
          s.at("document_id").get<std::string>(), s.at("mention_id").get<std::string>(),
          Span{s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>()},
          s.at("text").get<std::string>(),
          EntityTypeLabel::from_text(s.at("entity_type").get<std::string>())});
    }
    return f;
  });
}

RelationStats relation_stats_from_machine(std::string_view line) {
  return read_record(line, [](const nlohmann::json& j) {
    RelationStats stats;
    for (const auto& row : j.at("counts")) {
      stats.counts[{enum_from<OutletCode>(row.at("outlet"), parse_outlet),
                    enum_from<RelationType>(row.at("label"), parse_relation_type)}] =
          row.at("count").get<std::size_t>();
    }
    for (const auto& [id, total] : j.at("discourse_totals").items()) {
      stats.discourse_totals[id] = total.get<std::size_t>();
    }
    return stats;
  });
}

}  // namespace divcdcr
