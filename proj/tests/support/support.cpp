#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>

#include <unistd.h>

#include "divcdcr/unicode.hpp"

namespace divcdcr::test {

namespace fs = std::filesystem;

fs::path fixture_path(std::string_view name) { return fs::path(DIVCDCR_FIXTURE_DIR) / name; }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("divcdcr-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

Mention mention(std::string id, std::size_t start, std::size_t end, EntityTypeLabel type,
                std::string name, std::string qid) {
  Mention m;
  m.id = std::move(id);
  m.span = Span{start, end};
  m.entity_type = std::move(type);
  if (!name.empty()) m.global_entity = std::move(name);
  if (!qid.empty()) m.wikidata = std::move(qid);
  return m;
}

RelationEdge edge(std::string source, std::string target, RelationLabel label) {
  return RelationEdge{std::move(source), std::move(target), std::move(label)};
}

Document document(std::string id, std::string text, std::vector<Mention> mentions,
                  std::vector<RelationEdge> relations) {
  Document d;
  const auto underscore = id.find('_');
  d.discourse_id = id.substr(0, underscore);
  if (underscore != std::string::npos) {
    if (auto outlet = parse_outlet(std::string_view(id).substr(underscore + 1))) {
      d.outlet = *outlet;
    }
  }
  d.id = std::move(id);
  d.text = std::move(text);
  d.mentions = std::move(mentions);
  d.relations = std::move(relations);
  return d;
}

Corpus corpus_of(std::vector<Document> documents) {
  std::map<std::string, Discourse> by_id;
  for (auto& d : documents) {
    auto& discourse = by_id[d.discourse_id];
    discourse.id = d.discourse_id;
    discourse.documents.push_back(std::move(d));
  }
  Corpus c;
  for (auto& [id, d] : by_id) c.discourses.push_back(std::move(d));
  return canonicalize(std::move(c));
}

namespace {

// Code-point span of the nth (1-based) occurrence of surface in text.
Span span_of(const std::string& text, const std::string& surface, int nth = 1) {
  std::size_t at = std::string::npos;
  for (int i = 0; i < nth; ++i) {
    at = text.find(surface, at == std::string::npos ? 0 : at + 1);
    if (at == std::string::npos) throw std::logic_error("'" + surface + "' not in text");
  }
  const std::size_t start = unicode::length(text.substr(0, at));
  return Span{start, start + unicode::length(surface)};
}

Mention at(std::string id, const std::string& text, const std::string& surface, int nth,
           EntityTypeLabel type, std::string name = "", std::string qid = "") {
  const Span s = span_of(text, surface, nth);
  return mention(std::move(id), s.start, s.end, std::move(type), std::move(name),
                 std::move(qid));
}

// "<name> spoke. <name> left." with both mentions in one cluster.
Document pair_document(const std::string& id, const std::string& name,
                       const std::string& qid = "") {
  const std::string text = name + " spoke. " + name + " left.";
  return document(id, text,
                  {at("m1", text, name, 1, EntityType::PER, name, qid),
                   at("m2", text, name, 2, EntityType::PER, name)});
}

}  // namespace

Corpus seeded_violation_corpus() {
  std::vector<Document> docs;
  const auto PER = EntityType::PER;

  {  // V01: out-of-vocabulary entity type on an edge endpoint
    const std::string t = "Anna Berg spoke. Anna Berg left.";
    docs.push_back(document("1_L", t,
                            {at("m1", t, "Anna Berg", 1, EntityTypeLabel::from_text("PERSON")),
                             at("m2", t, "Anna Berg", 2, PER)},
                            {edge("m2", "m1", RelationType::MET)}));
  }
  {  // V02: out-of-vocabulary relation label
    const std::string t = "Carl Dorn spoke. Carl Dorn left.";
    docs.push_back(document("2_L", t,
                            {at("m1", t, "Carl Dorn", 1, PER), at("m2", t, "Carl Dorn", 2, PER)},
                            {edge("m2", "m1", RelationLabel::from_text("IDENT"))}));
  }
  {  // V03: trailing whitespace inside the span
    const std::string t = "Eva Frey spoke. Eva Frey left.";
    docs.push_back(document("3_L", t,
                            {at("m1", t, "Eva Frey ", 1, PER, "Eva Frey"),
                             at("m2", t, "Eva Frey", 2, PER, "Eva Frey")}));
  }
  {  // V04: single-mention cluster, kept off V05 by an edge
    const std::string t = "Gus Hart spoke. Ida Jost left.";
    docs.push_back(document("4_L", t,
                            {at("m1", t, "Gus Hart", 1, PER, "Gus Hart"),
                             at("m2", t, "Ida Jost", 1, PER)},
                            {edge("m2", "m1", RelationType::BRD)}));
  }
  {  // V05: isolated mention
    const std::string t = "Kai Lund spoke.";
    docs.push_back(document("5_L", t, {at("m1", t, "Kai Lund", 1, PER)}));
  }
  {  // V06: mixed entity types in one cluster
    const std::string t = "Mia Nolz spoke. Mia Nolz left.";
    docs.push_back(document("6_L", t,
                            {at("m1", t, "Mia Nolz", 1, PER, "Mia Nolz"),
                             at("m2", t, "Mia Nolz", 2, EntityType::ORG, "Mia Nolz")}));
  }
  {  // V07: two linked mentions in one cluster
    const std::string t = "Ole Pahl spoke. Ole Pahl left.";
    docs.push_back(document("7_L", t,
                            {at("m1", t, "Ole Pahl", 1, PER, "Ole Pahl", "Q1001"),
                             at("m2", t, "Ole Pahl", 2, PER, "Ole Pahl", "Q1001")}));
  }
  // V08a: one name, two URIs in different documents
  docs.push_back(pair_document("8_L", "Ria Sand", "Q2001"));
  docs.push_back(pair_document("8_R", "Ria Sand", "Q2002"));
  // V08b: one URI, two names
  docs.push_back(pair_document("10_L", "Tom Ulm", "Q3001"));
  docs.push_back(pair_document("10_R", "Thomas Ulm", "Q3001"));
  {  // V09: cataphoric edge
    const std::string t = "He spoke. Vera Wolf left.";
    docs.push_back(document("11_L", t, {at("m1", t, "He", 1, PER), at("m2", t, "Vera Wolf", 1, PER)},
                            {edge("m1", "m2", RelationType::MET)}));
  }
  {  // V10: two MET edges between the same ordered cluster pair
    const std::string t =
        "Xena Yost spoke. Xena Yost left. The Yost firm spoke. The Yost firm left.";
    docs.push_back(document("12_L", t,
                            {at("m1", t, "Xena Yost", 1, PER, "Xena Yost"),
                             at("m2", t, "Xena Yost", 2, PER, "Xena Yost"),
                             at("m3", t, "The Yost firm", 1, EntityType::ORG, "Yost firm"),
                             at("m4", t, "The Yost firm", 2, EntityType::ORG, "Yost firm")},
                            {edge("m3", "m1", RelationType::MET),
                             edge("m4", "m2", RelationType::MET)}));
  }
  {  // V11: self-loop
    const std::string t = "Zoe Abel spoke.";
    docs.push_back(document("13_L", t, {at("m1", t, "Zoe Abel", 1, PER)},
                            {edge("m1", "m1", RelationType::MET)}));
  }
  // V12: Wikidata value without the Q prefix
  docs.push_back(pair_document("14_L", "Bo Cole", "6279"));
  {  // V13: duplicate edge
    const std::string t = "Dan Ernst spoke. Dan Ernst left.";
    docs.push_back(document("15_L", t,
                            {at("m1", t, "Dan Ernst", 1, PER), at("m2", t, "Dan Ernst", 2, PER)},
                            {edge("m2", "m1", RelationType::BRD),
                             edge("m2", "m1", RelationType::BRD)}));
  }
  {  // V14: malformed document id
    Document d = pair_document("sixteen", "Finn Gold");
    d.discourse_id = "16";
    d.outlet = OutletCode::L;
    docs.push_back(std::move(d));
  }
  {  // V15: two mentions with one span
    const std::string t = "Hugo Ito spoke. Hugo Ito left.";
    docs.push_back(document("17_L", t,
                            {at("m1", t, "Hugo Ito", 1, PER, "Hugo Ito"),
                             at("m2", t, "Hugo Ito", 1, PER, "Hugo Ito"),
                             at("m3", t, "Hugo Ito", 2, PER, "Hugo Ito")}));
  }
  return corpus_of(std::move(docs));
}

std::vector<ExpectedFinding> seeded_violation_manifest() {
  std::vector<ExpectedFinding> m = {
      {"V01", "1_L", "m1"},
      {"V02", "2_L", "m2->m1:IDENT"},
      {"V03", "3_L", "m1"},
      {"V04", "4_L", "Gus Hart"},
      {"V05", "5_L", "m1"},
      {"V06", "6_L", "Mia Nolz"},
      {"V07", "7_L", "Ole Pahl"},
      {"V08a", "-", "Ria Sand"},
      {"V08b", "-", "Q3001"},
      {"V09", "11_L", "m1->m2:MET"},
      {"V10", "12_L", "Yost firm=>Xena Yost"},
      {"V11", "13_L", "m1->m1:MET"},
      {"V12", "14_L", "m1"},
      {"V13", "15_L", "m2->m1:BRD"},
      {"V14", "sixteen", "sixteen"},
      {"V15", "17_L", "m2"},
  };
  std::sort(m.begin(), m.end());
  return m;
}

namespace {

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& pool) {
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string random_text(std::mt19937_64& rng, int max_len) {
  static const std::vector<char32_t> pool = {
      U'a', U'b', U'e', U'n', U'z', U'A', U'Q', U' ', U' ', U'.', U',', U'"', U'\\', U'\n',
      U'\t', U'é', U'“', U'”', U'’', U'中', U'\U0001F600', U'0', U'7'};
  std::u32string out;
  const int n = uniform(rng, 0, max_len);
  for (int i = 0; i < n; ++i) out.push_back(pick(rng, pool));
  return unicode::encode(out);
}

}  // namespace

Corpus random_valid_corpus(std::mt19937_64& rng) {
  static const std::vector<std::string> names = {
      "Joe Biden", "the crowd", "demonstrators0_L", "Straße “X”", "a \"quoted\" one",
      "back\\slash", "\U0001F600 smile", "tab\there"};
  Corpus corpus;
  const int discourses = uniform(rng, 0, 3);
  std::vector<std::string> used_docs;
  for (int d = 0; d < discourses; ++d) {
    Discourse discourse;
    discourse.id = std::to_string(d * 7 + uniform(rng, 0, 6));
    if (std::any_of(corpus.discourses.begin(), corpus.discourses.end(),
                    [&](const Discourse& x) { return x.id == discourse.id; })) {
      continue;
    }
    const int documents = uniform(rng, 1, 3);
    for (int k = 0; k < documents; ++k) {
      Document doc;
      doc.outlet = kAllOutlets[uniform(rng, 0, 4)];
      doc.id = chance(rng, 0.9) ? discourse.id + "_" + std::string(to_string(doc.outlet))
                                : "doc " + discourse.id + "-" + std::to_string(k);
      if (std::find(used_docs.begin(), used_docs.end(), doc.id) != used_docs.end()) continue;
      used_docs.push_back(doc.id);
      doc.discourse_id = discourse.id;
      doc.text = random_text(rng, 40);
      const int len = static_cast<int>(unicode::length(doc.text));
      const int mentions = len == 0 ? 0 : uniform(rng, 0, 6);
      for (int i = 0; i < mentions; ++i) {
        Mention m;
        m.id = "m" + std::to_string(i * 3 + 1);
        const int a = uniform(rng, 0, len - 1);
        const int b = uniform(rng, a + 1, len);
        m.span = Span{static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
        m.entity_type = kAllEntityTypes[uniform(rng, 0, 5)];
        if (chance(rng, 0.6)) m.global_entity = pick(rng, names);
        if (chance(rng, 0.3)) m.wikidata = "Q" + std::to_string(uniform(rng, 1, 99999));
        doc.mentions.push_back(std::move(m));
      }
      const int relations = doc.mentions.empty() ? 0 : uniform(rng, 0, 4);
      for (int i = 0; i < relations; ++i) {
        doc.relations.push_back(RelationEdge{pick(rng, doc.mentions).id,
                                             pick(rng, doc.mentions).id,
                                             kAllRelationTypes[uniform(rng, 0, 5)]});
      }
      discourse.documents.push_back(std::move(doc));
    }
    corpus.discourses.push_back(std::move(discourse));
  }
  return canonicalize(std::move(corpus));
}

Corpus random_grouping_corpus(std::mt19937_64& rng, int discourses, int documents) {
  static const std::vector<std::string> names = {"Joe Biden", "Biden",   "Angela Merkel",
                                                 "Merkel",    "the crowd", "demonstrators",
                                                 "Charles",   "the pope"};
  static const std::vector<std::string> uris = {"Q6279", "Q567", "Q43274", "Q450675"};
  std::map<std::string, std::string> uri_of;
  for (const auto& n : names) {
    if (chance(rng, 0.6)) uri_of[n] = pick(rng, uris);
  }

  std::vector<Document> docs;
  for (int d = 0; d < discourses; ++d) {
    std::vector<OutletCode> outlets(std::begin(kAllOutlets), std::end(kAllOutlets));
    std::shuffle(outlets.begin(), outlets.end(), rng);
    for (int k = 0; k < documents && k < 5; ++k) {
      std::vector<std::string> chosen = names;
      std::shuffle(chosen.begin(), chosen.end(), rng);
      chosen.resize(static_cast<std::size_t>(uniform(rng, 0, 4)));

      std::string text;
      std::vector<Mention> mentions;
      auto add = [&](std::string name, std::string qid) {
        if (!text.empty()) text += ' ';
        const std::size_t start = unicode::length(text);
        text += "w" + std::to_string(mentions.size());
        mentions.push_back(mention("m" + std::to_string(mentions.size() + 1), start,
                                   unicode::length(text), EntityType::PER, std::move(name),
                                   std::move(qid)));
      };
      for (const auto& n : chosen) {
        const auto uri = uri_of.find(n);
        const bool linked = uri != uri_of.end() && chance(rng, 0.5);
        const int size = uniform(rng, 2, 3);
        for (int i = 0; i < size; ++i) add(n, linked && i == 0 ? uri->second : "");
      }
      if (chance(rng, 0.3)) add("", "");
      Document doc = document(std::to_string(d) + "_" + std::string(to_string(outlets[k])),
                              std::move(text), std::move(mentions));
      docs.push_back(std::move(doc));
    }
  }
  return corpus_of(std::move(docs));
}

}  // namespace divcdcr::test
