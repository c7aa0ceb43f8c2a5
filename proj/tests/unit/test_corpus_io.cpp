#include <gtest/gtest.h>

#include <random>

#include "divcdcr/corpus_io.hpp"
#include "support.hpp"

namespace divcdcr {
namespace {

ErrorKind parse_error_kind(std::string_view input) {
  try {
    parse_corpus(input);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << input;
  return ErrorKind::IoError;
}

std::string one_document(std::string_view mentions, std::string_view relations = "[]",
                         std::string_view extra = "") {
  return R"({"version": "1.0", "discourses": [{"id": "0", "documents": [{"id": "0_L",
    "outlet": "L", "text": "Joe Biden met the crowd.", "mentions": )" +
         std::string(mentions) + R"(, "relations": )" + std::string(relations) +
         std::string(extra) + "}]}]}";
}

TEST(CorpusIo, ParsesSchemeFixture) {
  const Corpus c = read_corpus_file(test::fixture_path("scheme_examples.dcdcr.json"));
  EXPECT_EQ(c.version, "1.0");
  EXPECT_EQ(c.discourses.size(), 3u);
  EXPECT_EQ(c.document_count(), 11u);
  const Document* doc = c.find_document("0_L");
  ASSERT_NE(doc, nullptr);
  EXPECT_EQ(doc->outlet, OutletCode::L);
  EXPECT_EQ(doc->discourse_id, "0");
  ASSERT_EQ(doc->mentions.size(), 2u);
  EXPECT_EQ(surface_text(*doc, doc->mentions[0].span), "Joe Biden");
  EXPECT_EQ(doc->mentions[0].wikidata, "Q6279");
  EXPECT_FALSE(doc->mentions[1].wikidata);  // "" reads as absent
}

TEST(CorpusIo, ExportIsCanonicalAndStable) {
  const std::string original = read_text_file(test::fixture_path("scheme_examples.dcdcr.json"));
  const Corpus c = parse_corpus(original);
  const std::string exported = export_corpus(c);
  EXPECT_EQ(parse_corpus(exported), c);
  EXPECT_EQ(export_corpus(parse_corpus(exported)), exported);
  EXPECT_EQ(exported.back(), '\n');
}

TEST(CorpusIo, ExportWritesEmptyOptionalsAsEmptyStrings) {
  const Corpus c = test::corpus_of(
      {test::document("0_L", "ab", {test::mention("m1", 0, 2, EntityType::OBJ)})});
  const std::string out = export_corpus(c);
  EXPECT_NE(out.find(R"("global_entity": "")"), std::string::npos);
  EXPECT_NE(out.find(R"("wikidata": "")"), std::string::npos);
}

TEST(CorpusIo, RoundTripOnRandomCorpora) {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 100; ++i) {
    const Corpus c = test::random_valid_corpus(rng);
    const std::string once = export_corpus(c);
    const Corpus back = parse_corpus(once);
    ASSERT_EQ(back, c) << once;
    ASSERT_EQ(export_corpus(back), once);
  }
}

TEST(CorpusIo, SyntaxErrorNamesLineAndColumn) {
  try {
    parse_corpus("{\n  \"version\": \"1.0\",\n  \"discourses\": [,]\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(CorpusIo, SchemaViolations) {
  const std::string ok = R"([{"id": "m1", "start": 0, "end": 9, "entity_type": "PER"}])";
  EXPECT_NO_THROW(parse_corpus(one_document(ok)));
  EXPECT_EQ(parse_error_kind(one_document(ok, "[]", R"(, "colour": "red")")),
            ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(R"({"version": "2.0", "discourses": []})"), ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(R"({"discourses": []})"), ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(R"([1, 2])"), ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(one_document(
                R"([{"id": "m1", "start": 4, "end": 4, "entity_type": "PER"}])")),
            ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(one_document(
                R"([{"id": "m1", "start": 0, "end": 99, "entity_type": "PER"}])")),
            ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(one_document(
                R"([{"id": "m1", "start": -1, "end": 3, "entity_type": "PER"}])")),
            ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(one_document(
                R"([{"id": "m1", "start": 0, "end": 3, "entity_type": "PERSON"}])")),
            ErrorKind::BadEnum);
  EXPECT_EQ(parse_error_kind(one_document(
                ok, R"([{"source": "m1", "target": "m1", "label": "IDENT"}])")),
            ErrorKind::BadEnum);
  EXPECT_EQ(parse_error_kind(one_document(
                ok, R"([{"source": "m1", "target": "m9", "label": "MET"}])")),
            ErrorKind::SchemaError);
  EXPECT_EQ(parse_error_kind(one_document(
                R"([{"id": "m1", "start": 0, "end": 3, "entity_type": "PER"},
                    {"id": "m1", "start": 4, "end": 9, "entity_type": "PER"}])")),
            ErrorKind::DuplicateId);
}

TEST(CorpusIo, SelfLoopParsesSoValidationCanReportIt) {
  const std::string ok = R"([{"id": "m1", "start": 0, "end": 9, "entity_type": "PER"}])";
  const Corpus c =
      parse_corpus(one_document(ok, R"([{"source": "m1", "target": "m1", "label": "MET"}])"));
  EXPECT_EQ(c.discourses[0].documents[0].relations.size(), 1u);
}

TEST(CorpusIo, DuplicateDocumentIdsAcrossDiscourses) {
  const std::string doc = R"({"id": "0_L", "outlet": "L", "text": "x"})";
  EXPECT_EQ(parse_error_kind(R"({"version": "1.0", "discourses": [{"id": "0", "documents": [)" +
                             doc + R"(]}, {"id": "1", "documents": [)" + doc + "]}]}"),
            ErrorKind::DuplicateId);
}

TEST(CorpusIo, ExportRejectsOutOfVocabularyLabels) {
  Corpus c = test::corpus_of({test::document(
      "0_L", "ab", {test::mention("m1", 0, 2, EntityTypeLabel::from_text("THING"))})});
  EXPECT_THROW(export_corpus(c), Error);
}

TEST(CorpusIo, FileHelpers) {
  test::TempDir dir;
  EXPECT_THROW(read_corpus_file(dir / "missing.json"), Error);
  EXPECT_THROW(read_corpus_file(dir.path()), Error);
  write_text_file(dir / "x.txt", "content");
  EXPECT_EQ(read_text_file(dir / "x.txt"), "content");
}

}  // namespace
}  // namespace divcdcr
