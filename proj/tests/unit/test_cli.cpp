#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "divcdcr/cli.hpp"
#include "divcdcr/corpus_io.hpp"
#include "divcdcr/entity_graph.hpp"
#include "divcdcr/metrics.hpp"
#include "divcdcr/validation.hpp"
#include "support.hpp"
#include "wikidata_stub.hpp"

namespace divcdcr {
namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, const CliContext& context = {}) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err, context);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string scheme_corpus() { return test::fixture_path("scheme_examples.dcdcr.json").string(); }

bool has_line(const std::string& text, const std::vector<std::string>& words) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::vector<std::string> got;
    std::string w;
    while (cells >> w) got.push_back(w);
    if (got == words) return true;
  }
  return false;
}

// Gold {a,b,c},{d} and system {a,b},{c,d} over one document.
std::pair<std::string, std::string> write_worked_pair(const test::TempDir& dir) {
  const std::string text = "Joe Biden met Ann Ott and Bo Cole today.";
  const Corpus gold = test::corpus_of({test::document(
      "0_L", text,
      {test::mention("a", 0, 3, EntityType::PER, "X"), test::mention("b", 4, 9, EntityType::PER, "X"),
       test::mention("c", 14, 17, EntityType::PER, "X"), test::mention("d", 18, 21)})});
  const Corpus sys = test::corpus_of({test::document(
      "0_L", text,
      {test::mention("a", 0, 3, EntityType::PER, "X"), test::mention("b", 4, 9, EntityType::PER, "X"),
       test::mention("c", 14, 17, EntityType::PER, "Y"),
       test::mention("d", 18, 21, EntityType::PER, "Y")})});
  const auto g = dir / "gold.dcdcr.json", s = dir / "sys.dcdcr.json";
  write_text_file(g, export_corpus(gold));
  write_text_file(s, export_corpus(sys));
  return {g.string(), s.string()};
}

TEST(Cli, ValidateCleanCorpus) {
  const CliRun r = run({"validate", scheme_corpus()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "");
}

TEST(Cli, ValidateSeededError) {
  test::TempDir dir;
  const std::string text = "Biden spoke. Biden left.";
  const Corpus c = test::corpus_of({test::document(
      "0_L", text,
      {test::mention("m1", 0, 5, EntityType::PER, "Biden"),
       test::mention("m2", 12, 18, EntityType::PER, "Biden")})});
  write_text_file(dir / "c.dcdcr.json", export_corpus(c));
  const CliRun r = run({"validate", (dir / "c.dcdcr.json").string()});
  EXPECT_EQ(r.code, kExitFindings);
  EXPECT_EQ(r.out.rfind("V03 error 0_L m2 ", 0), 0u) << r.out;
  EXPECT_EQ(run({"validate", (dir / "c.dcdcr.json").string(), "--disable", "V03"}).code, kExitOk);
}

TEST(Cli, ValidateFailLevelAndMachineOutput) {
  test::TempDir dir;
  const Corpus c = test::corpus_of({test::document("0_L", "Kai Lund spoke.",
                                                   {test::mention("m1", 0, 8)})});
  const auto path = (dir / "c.dcdcr.json").string();
  write_text_file(path, export_corpus(c));
  EXPECT_EQ(run({"validate", path}).code, kExitOk);  // V05 is a warning
  const CliRun warn = run({"validate", path, "--fail-on", "warning", "--format", "machine"});
  EXPECT_EQ(warn.code, kExitFindings);
  std::istringstream lines(warn.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(finding_from_machine(line).rule_id, "V05");
  EXPECT_EQ(run({"validate", path, "--fail-on", "fatal"}).code, kExitUsage);
  EXPECT_EQ(run({"validate", path, "--disable", "V99"}).code, kExitUsage);
}

TEST(Cli, ValidateMissingFile) {
  const CliRun r = run({"validate", "/nonexistent/corpus.dcdcr.json"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("divcdcr validate:"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"frames", scheme_corpus()}).code, kExitUsage);  // --referent missing
  EXPECT_EQ(run({"score", "--gold", scheme_corpus()}).code, kExitUsage);
}

TEST(Cli, ScoreIdenticalCorpora) {
  const CliRun r = run({"score", "--gold", scheme_corpus(), "--sys", scheme_corpus()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(has_line(r.out, {"conll", "-", "-", "1.0000"})) << r.out;
  EXPECT_TRUE(has_line(r.out, {"kappa", "-", "-", "1.0000"})) << r.out;
}

TEST(Cli, ScoreWorkedPair) {
  test::TempDir dir;
  const auto [gold, sys] = write_worked_pair(dir);
  const CliRun r = run({"score", "--gold", gold, "--sys", sys});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(has_line(r.out, {"b3", "0.7500", "0.6667", "0.7059"})) << r.out;
  EXPECT_EQ(run({"score", "--gold", gold, "--sys", sys, "--min-conll", "0.9"}).code,
            kExitFindings);
  EXPECT_EQ(run({"score", "--gold", gold, "--sys", sys, "--min-conll", "0.5"}).code, kExitOk);

  const CliRun only = run({"score", "--gold", gold, "--sys", sys, "--metrics", "b3,muc"});
  EXPECT_EQ(only.out.find("ceaf_e"), std::string::npos);
  EXPECT_EQ(run({"score", "--gold", gold, "--sys", sys, "--metrics", "blanc"}).code, kExitUsage);

  const CliRun machine = run({"score", "--gold", gold, "--sys", sys, "--format", "machine"});
  const ScoreReport report = report_from_machine(machine.out);
  EXPECT_NEAR(report.b_cubed.f1, 0.7059, 5e-5);

  const CliRun both = run({"score", "--gold", gold, "--sys", sys, "--both-orders"});
  EXPECT_NE(both.out.find("order gold->sys"), std::string::npos);
  EXPECT_NE(both.out.find("order sys->gold"), std::string::npos);
  EXPECT_TRUE(has_line(both.out, {"b3", "0.6667", "0.7500", "0.7059"})) << both.out;
}

TEST(Cli, ScoreTextMismatch) {
  test::TempDir dir;
  Corpus c = read_corpus_file(scheme_corpus());
  c.discourses[0].documents[0].text += "!";
  write_text_file(dir / "x.dcdcr.json", export_corpus(c));
  const CliRun r = run({"score", "--gold", scheme_corpus(), "--sys", (dir / "x.dcdcr.json").string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("TextMismatch"), std::string::npos) << r.err;
}

TEST(Cli, ConvertSingleExport) {
  test::TempDir dir;
  const auto out = (dir / "out.dcdcr.json").string();
  const CliRun r = run({"convert", "--from", "tabular", "--in",
                     test::fixture_path("tabular/single").string(), "--out", out});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(has_line(r.out, {"1", "2", "0"})) << r.out;
  EXPECT_NE(r.err.find("notice:"), std::string::npos);
  const Corpus c = read_corpus_file(out);
  ASSERT_NE(c.find_document("0_L"), nullptr);
  EXPECT_EQ(run({"validate", out}).code, kExitOk);
}

TEST(Cli, ConvertWithDiscourseMap) {
  test::TempDir dir;
  std::filesystem::create_directories(dir / "in");
  std::filesystem::copy_file(test::fixture_path("tabular/single/0_L.tsv"), dir / "in" / "biden.tsv");
  write_text_file(dir / "map.tsv", "# document\tdiscourse\toutlet\nbiden\t7\tRR\n");
  const auto out = (dir / "out.dcdcr.json").string();
  const CliRun r = run({"convert", "--from", "tabular", "--in", (dir / "in").string(), "--out", out,
                     "--discourse-map", (dir / "map.tsv").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Document* d = read_corpus_file(out).find_document("biden");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->discourse_id, "7");
  EXPECT_EQ(d->outlet, OutletCode::RR);
}

TEST(Cli, ConvertFailures) {
  test::TempDir dir;
  std::filesystem::create_directories(dir / "empty");
  const auto out = (dir / "out.dcdcr.json").string();
  EXPECT_EQ(run({"convert", "--from", "tabular", "--in", (dir / "empty").string(), "--out", out})
                .code,
            kExitUsage);
  const CliRun dangling = run({"convert", "--from", "tabular", "--in",
                            test::fixture_path("tabular/dangling").string(), "--out", out});
  EXPECT_EQ(dangling.code, kExitUsage);
  EXPECT_NE(dangling.err.find("DanglingRelationPointer"), std::string::npos) << dangling.err;
  EXPECT_NE(dangling.err.find("1_L.tsv"), std::string::npos) << dangling.err;
  EXPECT_FALSE(std::filesystem::exists(out));
  EXPECT_EQ(run({"convert", "--from", "xml", "--in", (dir / "empty").string(), "--out", out}).code,
            kExitUsage);

  std::filesystem::create_directories(dir / "oov");
  write_text_file(dir / "oov" / "0_L.tsv",
                  "#FORMAT=WebAnno TSV 3.3\n"
                  "#T_SP=webanno.custom.Entity|entity_type|global_entity_name|wikidata\n\n"
                  "1-1\t0-3\tJoe\tPERSON\t*\t*\t\n");
  const CliRun oov = run({"convert", "--from", "tabular", "--in", (dir / "oov").string(), "--out", out});
  EXPECT_EQ(oov.code, kExitUsage);
  EXPECT_NE(oov.err.find("V01 error"), std::string::npos) << oov.err;
  EXPECT_FALSE(std::filesystem::exists(out));
}

TEST(Cli, Stats) {
  const CliRun r = run({"stats", scheme_corpus()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(has_line(r.out, {"L", "MER", "1"})) << r.out;
  EXPECT_FALSE(has_line(r.out, {"L", "MET", "0"}));
  const CliRun dense = run({"stats", scheme_corpus(), "--dense"});
  EXPECT_TRUE(has_line(dense.out, {"L", "MET", "0"})) << dense.out;
  const CliRun machine = run({"stats", scheme_corpus(), "--format", "machine"});
  EXPECT_EQ(relation_stats_from_machine(machine.out), relation_stats(read_corpus_file(scheme_corpus())));
}

TEST(Cli, Frames) {
  const CliRun r = run({"frames", scheme_corpus(), "--referent", "Q6279"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(has_line(r.out, {"L", "2", "\"Joe", "Biden\",", "\"the", "president\""})) << r.out;
  const CliRun unknown = run({"frames", scheme_corpus(), "--referent", "Q1"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("UnknownReferent"), std::string::npos);
  const CliRun machine = run({"frames", scheme_corpus(), "--referent", "Q6279", "--format", "machine"});
  std::istringstream in(machine.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(frame_from_machine(line).referent_key, "Q6279");
    ++n;
  }
  EXPECT_EQ(n, 3u);
}

TEST(Cli, EntitiesWithColdOfflineCache) {
  test::TempDir dir;
  auto transport = std::make_shared<test::FixtureTransport>(test::fixture_path("wikidata"));
  CliContext context{transport};
  const CliRun r = run({"entities", scheme_corpus(), "--wikidata-check", "--offline", "--cache",
                     dir.path().string()},
                    context);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("A04 info"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Q6279"), std::string::npos);
  EXPECT_EQ(transport->calls(), 0u);
}

TEST(Cli, EntitiesMachineOutput) {
  const CliRun r = run({"entities", scheme_corpus(), "--format", "machine"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::size_t entities = 0, referents = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("discourse_entities")) {
      global_referent_from_machine(line);
      ++referents;
    } else {
      discourse_entity_from_machine(line);
      ++entities;
    }
  }
  EXPECT_EQ(referents, 3u);
  EXPECT_EQ(entities, build_discourse_entities(read_corpus_file(scheme_corpus())).size());
}

TEST(Cli, LinkAuditWithRecordings) {
  test::TempDir dir;
  auto transport = std::make_shared<test::FixtureTransport>(test::fixture_path("wikidata"));
  CliContext context{transport};
  const std::string corpus = test::fixture_path("wikidata/audit_corpus.dcdcr.json").string();
  const CliRun r = run({"link-audit", corpus, "--cache", dir.path().string()}, context);
  EXPECT_EQ(r.code, kExitOk) << r.err;  // A01 is a warning
  EXPECT_NE(r.out.find("A01 warning 0_R Mystery"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("A03 info 0_R \"North Korea\""), std::string::npos) << r.out;
  const std::size_t live = transport->calls();
  const CliRun again = run({"link-audit", corpus, "--cache", dir.path().string(), "--offline",
                         "--fail-on", "warning"},
                        context);
  EXPECT_EQ(again.code, kExitFindings);
  EXPECT_EQ(again.out, r.out);
  EXPECT_EQ(transport->calls(), live);
}

TEST(Cli, HelpForEverySubcommand) {
  const CliRun top = run({"--help"});
  EXPECT_EQ(top.code, kExitOk);
  EXPECT_NE(top.out.find("DIVCDCR_WIKIDATA_URL"), std::string::npos);
  const std::map<std::string, std::vector<std::string>> flags = {
      {"validate", {"--fail-on", "--disable", "--format"}},
      {"convert", {"--from", "--in", "--out", "--discourse-map"}},
      {"entities", {"--wikidata-check", "--offline", "--cache"}},
      {"frames", {"--referent"}},
      {"stats", {"--dense"}},
      {"link-audit", {"--fail-on", "--offline", "--cache"}},
      {"score", {"--gold", "--sys", "--metrics", "--min-conll", "--both-orders"}}};
  for (const auto& [cmd, expected] : flags) {
    const CliRun r = run({cmd, "--help"});
    EXPECT_EQ(r.code, kExitOk) << cmd;
    for (const auto& flag : expected) EXPECT_NE(r.out.find(flag), std::string::npos) << cmd << flag;
  }
}

}  // namespace
}  // namespace divcdcr
