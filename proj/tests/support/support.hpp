#pragma once

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "divcdcr/model.hpp"

namespace divcdcr::test {

std::filesystem::path fixture_path(std::string_view name);

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

Mention mention(std::string id, std::size_t start, std::size_t end,
                EntityTypeLabel type = EntityType::PER, std::string name = "",
                std::string qid = "");
RelationEdge edge(std::string source, std::string target,
                  RelationLabel label = RelationType::MET);
// Discourse and outlet are taken from a `<digits>_<outlet>` id when possible.
Document document(std::string id, std::string text, std::vector<Mention> mentions,
                  std::vector<RelationEdge> relations = {});
// Groups documents into discourses by their discourse id, canonical order.
Corpus corpus_of(std::vector<Document> documents);

// The corpus with exactly one seeded violation per rule, and the findings it
// must produce as (rule id, document id or "-", subject).
struct ExpectedFinding {
  std::string rule_id;
  std::string document_id;
  std::string subject;

  friend auto operator<=>(const ExpectedFinding&, const ExpectedFinding&) = default;
};
Corpus seeded_violation_corpus();
std::vector<ExpectedFinding> seeded_violation_manifest();

// Arbitrary corpora that parse: unique ids, spans inside the text, edges
// between existing mentions of the same document. Text and names draw from
// multi-byte and astral code points as well as ASCII.
Corpus random_valid_corpus(std::mt19937_64& rng);

// Corpora whose clusters follow the grouping preconditions: a name carries
// at most one URI corpus-wide, several names may share a URI, and a cluster
// may leave its URI out.
Corpus random_grouping_corpus(std::mt19937_64& rng, int discourses = 3, int documents = 2);

}  // namespace divcdcr::test
