#include "divcdcr/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "divcdcr/corpus_io.hpp"
#include "divcdcr/entity_graph.hpp"
#include "divcdcr/metrics.hpp"
#include "divcdcr/table.hpp"
#include "divcdcr/tabular.hpp"
#include "divcdcr/validation.hpp"

namespace divcdcr {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kFormats = {"text", "machine"};

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

void print_findings(const std::vector<ValidationFinding>& findings, bool machine,
                    std::ostream& out) {
  for (const auto& f : findings) {
    out << (machine ? finding_to_machine(f) : format_finding(f)) << "\n";
  }
}

Severity parse_fail_level(const std::string& text) {
  if (auto s = parse_severity(text)) return *s;
  throw Error(ErrorKind::ConfigError, "unknown fail level '" + text + "'");
}

std::map<std::string, DocumentPlacement> read_discourse_map(const fs::path& path) {
  std::map<std::string, DocumentPlacement> placement;
  std::istringstream in(read_text_file(path));
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t begin = 0;
    for (std::size_t tab; (tab = line.find('\t', begin)) != std::string::npos; begin = tab + 1) {
      fields.push_back(line.substr(begin, tab - begin));
    }
    fields.push_back(line.substr(begin));
    const std::string where = path.string() + " line " + std::to_string(number);
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorKind::ConfigError,
                  where + ": expected doc_id<TAB>discourse_id[<TAB>outlet]");
    }
    DocumentPlacement p{fields[1], std::nullopt};
    if (fields.size() == 3) {
      p.outlet = parse_outlet(fields[2]);
      if (!p.outlet) throw Error(ErrorKind::ConfigError, where + ": unknown outlet '" + fields[2] + "'");
    }
    if (!placement.emplace(fields[0], p).second) {
      throw Error(ErrorKind::ConfigError, where + ": document " + fields[0] + " mapped twice");
    }
  }
  return placement;
}

wikidata::Client make_client(const CliContext& context, bool offline,
                             const std::string& cache_dir) {
  wikidata::ClientOptions options;
  options.endpoint = wikidata::endpoint_from_env();
  options.cache_dir = cache_dir.empty() ? wikidata::default_cache_dir() : fs::path(cache_dir);
  options.offline = offline;
  auto transport = context.transport;
  if (!transport) transport = std::make_shared<wikidata::HttpTransport>();
  return wikidata::Client(std::move(options), std::move(transport));
}

struct Options {
  std::string corpus;
  std::string format = "text";
  std::string fail_on = "error";
  std::vector<std::string> disabled;
  // score
  std::string gold, sys;
  std::vector<std::string> metrics;
  std::optional<double> min_conll;
  bool both_orders = false;
  // convert
  std::string from = "tabular";
  std::string in_dir, out_file, discourse_map;
  // entities / frames / stats / link-audit
  bool wikidata_check = false;
  bool offline = false;
  std::string cache_dir;
  std::string referent;
  bool dense = false;
};

int cmd_validate(const Options& o, std::ostream& out) {
  ValidationConfig config;
  config.fail_level = parse_fail_level(o.fail_on);
  config.disabled_rules.insert(o.disabled.begin(), o.disabled.end());
  const Corpus corpus = read_corpus_file(o.corpus);
  const auto findings = validate_corpus(corpus, config);
  print_findings(findings, o.format == "machine", out);
  return fails(findings, config.fail_level) ? kExitFindings : kExitOk;
}

int cmd_score(const Options& o, std::ostream& out) {
  const Corpus gold = read_corpus_file(o.gold);
  const Corpus sys = read_corpus_file(o.sys);
  const std::set<std::string> metrics(o.metrics.begin(), o.metrics.end());
  std::vector<std::pair<std::string, ScoreReport>> reports;
  reports.emplace_back("gold->sys", score_corpora(gold, sys));
  if (o.both_orders) reports.emplace_back("sys->gold", score_corpora(sys, gold));

  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& [order, report] = reports[i];
    if (o.format == "machine") {
      out << report_to_machine(report) << "\n";
      continue;
    }
    if (i) out << "\n";
    if (o.both_orders) out << "order " << order << "\n";
    out << format_report(report, metrics);
  }
  if (o.min_conll) {
    for (const auto& [order, report] : reports) {
      if (report.conll < *o.min_conll) return kExitFindings;
    }
  }
  return kExitOk;
}

int cmd_convert(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path dir(o.in_dir);
  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::IoError, "input directory " + o.in_dir + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && !name.empty() && name.front() != '.') {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorKind::IoError, "no export files in " + o.in_dir);

  std::map<std::string, DocumentPlacement> placement;
  if (!o.discourse_map.empty()) placement = read_discourse_map(o.discourse_map);

  // One file at a time so that errors name the file they come from.
  std::map<std::string, Discourse> discourses;
  std::set<std::string> seen;
  std::size_t mentions = 0, edges = 0;
  for (const auto& file : files) {
    const std::string doc_id = file.stem().string();
    if (!seen.insert(doc_id).second) {
      throw Error(ErrorKind::DuplicateId, file.string() + ": document id " + doc_id +
                                              " already read from another file");
    }
    TabularImport imported;
    try {
      imported = import_tabular_export({{doc_id, read_text_file(file)}}, placement);
    } catch (const Error& e) {
      throw Error(e.kind(), file.string() + ": " + e.detail());
    }
    for (const auto& notice : imported.notices) err << "notice: " << notice << "\n";
    for (auto& discourse : imported.corpus.discourses) {
      auto& target = discourses[discourse.id];
      target.id = discourse.id;
      for (auto& doc : discourse.documents) {
        mentions += doc.mentions.size();
        edges += doc.relations.size();
        target.documents.push_back(std::move(doc));
      }
    }
  }
  Corpus corpus;
  for (auto& [id, d] : discourses) corpus.discourses.push_back(std::move(d));
  corpus = canonicalize(std::move(corpus));

  // The native format only holds vocabulary labels.
  ValidationConfig labels_only;
  for (const auto& rule : rule_catalog()) {
    if (rule.id[0] == 'V' && rule.id != "V01" && rule.id != "V02") {
      labels_only.disabled_rules.emplace(rule.id);
    }
  }
  const auto bad_labels = validate_corpus(corpus, labels_only);
  if (!bad_labels.empty()) {
    print_findings(bad_labels, false, err);
    throw Error(ErrorKind::BadEnum, std::to_string(bad_labels.size()) +
                                        " labels outside the vocabulary; correct them in the "
                                        "annotation tool and export again");
  }
  write_text_file(o.out_file, export_corpus(corpus));

  TextTable table({"documents", "mentions", "edges"});
  table.add_row({std::to_string(files.size()), std::to_string(mentions), std::to_string(edges)});
  out << table.render();
  return kExitOk;
}

int cmd_entities(const Options& o, const CliContext& context, std::ostream& out) {
  const Corpus corpus = read_corpus_file(o.corpus);
  const auto entities = build_discourse_entities(corpus);
  const auto referents = build_global_referents(corpus);
  std::vector<ValidationFinding> findings;
  if (o.wikidata_check) {
    auto client = make_client(context, o.offline, o.cache_dir);
    findings = wikidata::audit_corpus_links(corpus, client);
  }

  if (o.format == "machine") {
    for (const auto& e : entities) out << to_machine(e) << "\n";
    for (const auto& r : referents) out << to_machine(r) << "\n";
    print_findings(findings, true, out);
    return kExitOk;
  }

  TextTable entity_table({"discourse", "key", "linked", "clusters", "mentions", "documents",
                          "names"});
  for (const auto& e : entities) {
    std::vector<std::string> docs, names;
    for (const auto& c : e.clusters) {
      if (std::find(docs.begin(), docs.end(), c.document_id) == docs.end()) {
        docs.push_back(c.document_id);
      }
      if (std::find(names.begin(), names.end(), c.name) == names.end()) names.push_back(c.name);
    }
    entity_table.add_row({e.discourse_id, e.key, e.key_is_uri ? "yes" : "no",
                          std::to_string(e.clusters.size()), std::to_string(e.mention_count()),
                          join(docs, ","), join(names, "; ")});
  }
  TextTable referent_table({"uri", "discourses", "entities", "mentions"});
  for (const auto& r : referents) {
    std::vector<std::string> ids;
    std::size_t mention_total = 0;
    for (const auto& e : r.discourse_entities) {
      ids.push_back(e.discourse_id);
      mention_total += e.mention_count();
    }
    referent_table.add_row({r.uri, join(ids, ","), std::to_string(r.discourse_entities.size()),
                            std::to_string(mention_total)});
  }

  bool first = true;
  auto section = [&](const std::string& body) {
    if (body.empty()) return;
    if (!first) out << "\n";
    out << body;
    first = false;
  };
  if (!entity_table.empty()) section(entity_table.render());
  if (!referent_table.empty()) section(referent_table.render());
  std::ostringstream lines;
  print_findings(findings, false, lines);
  section(lines.str());
  return kExitOk;
}

int cmd_frames(const Options& o, std::ostream& out) {
  const Corpus corpus = read_corpus_file(o.corpus);
  const auto frames = extract_frames(corpus, o.referent);
  if (o.format == "machine") {
    for (const auto& f : frames) out << to_machine(f) << "\n";
    return kExitOk;
  }
  TextTable table({"outlet", "mentions", "surfaces"});
  for (const auto& f : frames) {
    std::vector<std::string> surfaces;
    for (const auto& s : f.surfaces) surfaces.push_back(quoted(s.text));
    table.add_row({std::string(to_string(f.outlet)), std::to_string(f.surfaces.size()),
                   join(surfaces, ", ")});
  }
  out << table.render();
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const Corpus corpus = read_corpus_file(o.corpus);
  const auto stats = relation_stats(corpus, o.dense);
  if (o.format == "machine") {
    out << to_machine(stats) << "\n";
    return kExitOk;
  }
  if (stats.counts.empty() && stats.discourse_totals.empty()) return kExitOk;
  TextTable counts({"outlet", "label", "count"});
  for (const auto& [key, n] : stats.counts) {
    counts.add_row({std::string(to_string(key.first)), std::string(to_string(key.second)),
                    std::to_string(n)});
  }
  TextTable totals({"discourse", "edges"});
  for (const auto& [id, n] : stats.discourse_totals) totals.add_row({id, std::to_string(n)});
  out << counts.render() << "\n" << totals.render();
  return kExitOk;
}

int cmd_link_audit(const Options& o, const CliContext& context, std::ostream& out) {
  const Severity level = parse_fail_level(o.fail_on);
  const Corpus corpus = read_corpus_file(o.corpus);
  auto client = make_client(context, o.offline, o.cache_dir);
  const auto findings = wikidata::audit_corpus_links(corpus, client);
  print_findings(findings, o.format == "machine", out);
  return fails(findings, level) ? kExitFindings : kExitOk;
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember(kFormats))
      ->capture_default_str();
}

void add_wikidata_flags(CLI::App* cmd, Options& o) {
  cmd->add_flag("--offline", o.offline, "Answer Wikidata lookups from the cache only");
  cmd->add_option("--cache", o.cache_dir,
                  "Wikidata cache directory (default $XDG_CACHE_HOME/divcdcr)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliContext& context) {
  Options o;
  CLI::App app{"Validate, convert, explore and score cross-document coreference corpora with "
               "identity, near-identity and bridging relations.",
               "divcdcr"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 findings at or above the fail level or score threshold "
      "unmet, 2 usage, I/O or parse error.\n"
      "Environment: DIVCDCR_WIKIDATA_URL overrides the Wikidata API endpoint.");

  const std::vector<std::string> levels = {"error", "warning"};

  auto* validate = app.add_subcommand("validate", "Check a corpus against the annotation rules");
  validate->add_option("corpus", o.corpus, "Corpus file (.dcdcr.json)")->required();
  validate->add_option("--fail-on", o.fail_on, "Lowest severity that makes the exit code 1")
      ->check(CLI::IsMember(levels))
      ->capture_default_str();
  validate->add_option("--disable", o.disabled, "Rule ids to skip, comma separated")
      ->delimiter(',');
  add_format(validate, o);

  auto* convert = app.add_subcommand("convert", "Convert tool exports into a native corpus");
  convert->add_option("--from", o.from, "Input format")
      ->required()
      ->check(CLI::IsMember({"tabular"}));
  convert->add_option("--in", o.in_dir, "Directory of export files, one per document")
      ->required();
  convert->add_option("--out", o.out_file, "Native corpus file to write")->required();
  convert->add_option("--discourse-map", o.discourse_map,
                      "Lines of doc_id<TAB>discourse_id[<TAB>outlet]");

  auto* entities =
      app.add_subcommand("entities", "List discourse entities and global referents");
  entities->add_option("corpus", o.corpus, "Corpus file")->required();
  entities->add_flag("--wikidata-check", o.wikidata_check, "Append Wikidata link audit findings");
  add_wikidata_flags(entities, o);
  add_format(entities, o);

  auto* frames = app.add_subcommand("frames", "Per-outlet word choices for one referent");
  frames->add_option("corpus", o.corpus, "Corpus file")->required();
  frames->add_option("--referent", o.referent, "QID or global entity name")->required();
  add_format(frames, o);

  auto* stats = app.add_subcommand("stats", "Relation counts per outlet and label");
  stats->add_option("corpus", o.corpus, "Corpus file")->required();
  stats->add_flag("--dense", o.dense, "Include zero rows for absent combinations");
  add_format(stats, o);

  auto* audit = app.add_subcommand("link-audit", "Check Wikidata links against the service");
  audit->add_option("corpus", o.corpus, "Corpus file")->required();
  audit->add_option("--fail-on", o.fail_on, "Lowest severity that makes the exit code 1")
      ->check(CLI::IsMember(levels))
      ->capture_default_str();
  add_wikidata_flags(audit, o);
  add_format(audit, o);

  auto* score = app.add_subcommand("score", "Score a system corpus against a gold corpus");
  score->add_option("--gold", o.gold, "Gold corpus file")->required();
  score->add_option("--sys", o.sys, "System corpus file")->required();
  score->add_option("--metrics", o.metrics, "Metrics to print, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kMetricNames),
                                                     std::end(kMetricNames))));
  score->add_option("--min-conll", o.min_conll, "Exit 1 when the CoNLL average is lower");
  score->add_flag("--both-orders", o.both_orders,
                  "Also score with the corpora swapped (annotator agreement)");
  add_format(score, o);

  std::vector<std::string> storage = {"divcdcr"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "validate") return cmd_validate(o, out);
    if (command == "convert") return cmd_convert(o, out, err);
    if (command == "entities") return cmd_entities(o, context, out);
    if (command == "frames") return cmd_frames(o, out);
    if (command == "stats") return cmd_stats(o, out);
    if (command == "link-audit") return cmd_link_audit(o, context, out);
    if (command == "score") return cmd_score(o, out);
  } catch (const Error& e) {
    err << "divcdcr " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "divcdcr " << command << ": " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace divcdcr
