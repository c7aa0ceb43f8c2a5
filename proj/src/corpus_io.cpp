#include "divcdcr/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "divcdcr/unicode.hpp"

namespace divcdcr {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& reason) {
  throw Error(ErrorKind::SchemaError, path + ": " + reason);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<std::string_view> allowed,
                std::initializer_list<std::string_view> required) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      schema_error(path, "unknown key '" + item.key() + "'");
    }
  }
  for (auto key : required) {
    if (!obj.contains(key)) schema_error(path, "missing key '" + std::string(key) + "'");
  }
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
  const auto& v = obj.at(key);
  if (!v.is_string()) schema_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> get_optional_string(const json& obj, const char* key,
                                               const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  std::string s = get_string(obj, key, path);
  if (s.empty()) return std::nullopt;
  return s;
}

std::size_t get_offset(const json& obj, const char* key, const std::string& path) {
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    schema_error(path + "." + key, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

const json& get_array(const json& obj, const char* key, const std::string& path) {
  static const json kEmpty = json::array();
  if (!obj.contains(key)) return kEmpty;
  const auto& v = obj.at(key);
  if (!v.is_array()) schema_error(path + "." + key, "expected an array");
  return v;
}

template <typename Enum>
Enum get_enum(const json& obj, const char* key, const std::string& path) {
  const std::string text = get_string(obj, key, path);
  auto label = Label<Enum>::from_text(text);
  if (!label.known()) {
    throw Error(ErrorKind::BadEnum, "\"" + text + "\" for field '" + key + "' at " + path);
  }
  return label.value();
}

void check_unique(std::set<std::string, std::less<>>& seen, const std::string& id,
                  const std::string& path) {
  if (id.empty()) schema_error(path, "empty id");
  if (!seen.insert(id).second) {
    throw Error(ErrorKind::DuplicateId, "\"" + id + "\" at " + path);
  }
}

Mention parse_mention(const json& j, const std::string& path, std::size_t text_length) {
  check_keys(j, path, {"id", "start", "end", "entity_type", "global_entity", "wikidata"},
             {"id", "start", "end", "entity_type"});
  Mention m;
  m.id = get_string(j, "id", path);
  m.span.start = get_offset(j, "start", path);
  m.span.end = get_offset(j, "end", path);
  if (m.span.start >= m.span.end) schema_error(path, "span start must be below end");
  if (m.span.end > text_length) {
    schema_error(path, "span end " + std::to_string(m.span.end) + " exceeds text length " +
                           std::to_string(text_length));
  }
  m.entity_type = get_enum<EntityType>(j, "entity_type", path);
  m.global_entity = get_optional_string(j, "global_entity", path);
  m.wikidata = get_optional_string(j, "wikidata", path);
  return m;
}

Document parse_document(const json& j, const std::string& path,
                        const std::string& discourse_id) {
  check_keys(j, path, {"id", "outlet", "text", "mentions", "relations"},
             {"id", "outlet", "text"});
  Document doc;
  doc.id = get_string(j, "id", path);
  doc.discourse_id = discourse_id;
  doc.outlet = get_enum<OutletCode>(j, "outlet", path);
  doc.text = get_string(j, "text", path);
  const std::size_t text_length = unicode::length(doc.text);

  std::set<std::string, std::less<>> mention_ids;
  const auto& mentions = get_array(j, "mentions", path);
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    const std::string mpath = path + ".mentions[" + std::to_string(i) + "]";
    doc.mentions.push_back(parse_mention(mentions[i], mpath, text_length));
    check_unique(mention_ids, doc.mentions.back().id, mpath + ".id");
  }

  const auto& relations = get_array(j, "relations", path);
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const std::string rpath = path + ".relations[" + std::to_string(i) + "]";
    const auto& r = relations[i];
    check_keys(r, rpath, {"source", "target", "label"}, {"source", "target", "label"});
    RelationEdge edge;
    edge.source = get_string(r, "source", rpath);
    edge.target = get_string(r, "target", rpath);
    edge.label = get_enum<RelationType>(r, "label", rpath);
    for (const auto* end : {&edge.source, &edge.target}) {
      if (!mention_ids.contains(*end)) {
        schema_error(rpath, "endpoint '" + *end + "' is not a mention of " + doc.id);
      }
    }
    doc.relations.push_back(std::move(edge));
  }
  return doc;
}

std::string line_column(std::string_view input, std::size_t byte) {
  byte = std::min(byte, input.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte; ++i) {
    if (input[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Corpus parse_corpus(std::string_view input) {
  json root;
  try {
    root = json::parse(input.begin(), input.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, line_column(input, e.byte) + ": " + e.what());
  }

  check_keys(root, "$", {"version", "discourses"}, {"version", "discourses"});
  Corpus corpus;
  corpus.version = get_string(root, "version", "$");
  if (corpus.version != kFormatVersion) {
    schema_error("$.version", "unsupported version \"" + corpus.version + "\"");
  }

  std::set<std::string, std::less<>> discourse_ids;
  std::set<std::string, std::less<>> document_ids;
  const auto& discourses = get_array(root, "discourses", "$");
  for (std::size_t i = 0; i < discourses.size(); ++i) {
    const std::string dpath = "$.discourses[" + std::to_string(i) + "]";
    const auto& d = discourses[i];
    check_keys(d, dpath, {"id", "documents"}, {"id", "documents"});
    Discourse discourse;
    discourse.id = get_string(d, "id", dpath);
    check_unique(discourse_ids, discourse.id, dpath + ".id");
    const auto& documents = get_array(d, "documents", dpath);
    for (std::size_t k = 0; k < documents.size(); ++k) {
      const std::string path = dpath + ".documents[" + std::to_string(k) + "]";
      discourse.documents.push_back(parse_document(documents[k], path, discourse.id));
      check_unique(document_ids, discourse.documents.back().id, path + ".id");
    }
    corpus.discourses.push_back(std::move(discourse));
  }
  return corpus;
}

std::string export_corpus(const Corpus& input) {
  using ojson = nlohmann::ordered_json;
  const Corpus corpus = canonicalize(input);

  ojson root = ojson::object();
  root["version"] = corpus.version;
  ojson discourses = ojson::array();
  for (const auto& discourse : corpus.discourses) {
    ojson documents = ojson::array();
    for (const auto& doc : discourse.documents) {
      ojson mentions = ojson::array();
      for (const auto& m : doc.mentions) {
        ojson jm = ojson::object();
        jm["id"] = m.id;
        jm["start"] = m.span.start;
        jm["end"] = m.span.end;
        jm["entity_type"] = to_string(m.entity_type.value());
        jm["global_entity"] = m.global_entity.value_or("");
        jm["wikidata"] = m.wikidata.value_or("");
        mentions.push_back(std::move(jm));
      }
      ojson relations = ojson::array();
      for (const auto& r : doc.relations) {
        ojson jr = ojson::object();
        jr["source"] = r.source;
        jr["target"] = r.target;
        jr["label"] = to_string(r.label.value());
        relations.push_back(std::move(jr));
      }
      ojson jd = ojson::object();
      jd["id"] = doc.id;
      jd["outlet"] = to_string(doc.outlet);
      jd["text"] = doc.text;
      jd["mentions"] = std::move(mentions);
      jd["relations"] = std::move(relations);
      documents.push_back(std::move(jd));
    }
    ojson jdis = ojson::object();
    jdis["id"] = discourse.id;
    jdis["documents"] = std::move(documents);
    discourses.push_back(std::move(jdis));
  }
  root["discourses"] = std::move(discourses);
  return root.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

Corpus read_corpus_file(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    throw Error(ErrorKind::IoError, path.string() + " is a directory");
  }
  return parse_corpus(read_text_file(path));
}

}  // namespace divcdcr
