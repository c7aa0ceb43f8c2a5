#include "divcdcr/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "divcdcr/assignment.hpp"
#include "divcdcr/table.hpp"

namespace divcdcr {

namespace {

using Owner = std::unordered_map<std::size_t, std::size_t>;

Owner owners(const Clustering& clustering) {
  Owner owner;
  for (std::size_t c = 0; c < clustering.size(); ++c) {
    for (std::size_t m : clustering[c]) owner[m] = c;
  }
  return owner;
}

std::size_t mention_total(const Clustering& clustering) {
  std::size_t n = 0;
  for (const auto& c : clustering) n += c.size();
  return n;
}

// Counts of |c ∩ other| keyed by the other side's cluster; unowned mentions
// are returned separately.
std::pair<std::map<std::size_t, std::size_t>, std::size_t> overlap(
    const std::vector<std::size_t>& cluster, const Owner& other) {
  std::map<std::size_t, std::size_t> counts;
  std::size_t unowned = 0;
  for (std::size_t m : cluster) {
    auto it = other.find(m);
    if (it == other.end()) {
      ++unowned;
    } else {
      ++counts[it->second];
    }
  }
  return {counts, unowned};
}

// MUC recall of `key` against `response`.
std::pair<double, double> muc_side(const Clustering& key, const Clustering& response) {
  const Owner owner = owners(response);
  double num = 0.0, den = 0.0;
  for (const auto& c : key) {
    if (c.empty()) continue;
    const auto [counts, unowned] = overlap(c, owner);
    const double parts = static_cast<double>(counts.size() + unowned);
    num += static_cast<double>(c.size()) - parts;
    den += static_cast<double>(c.size()) - 1.0;
  }
  return {num, den};
}

std::pair<double, double> b_cubed_side(const Clustering& key, const Clustering& response) {
  const Owner owner = owners(response);
  double num = 0.0;
  for (const auto& c : key) {
    if (c.empty()) continue;
    const auto [counts, unowned] = overlap(c, owner);
    for (const auto& [other, n] : counts) {
      num += static_cast<double>(n) * static_cast<double>(n) / static_cast<double>(c.size());
    }
  }
  return {num, static_cast<double>(mention_total(key))};
}

std::pair<double, double> lea_side(const Clustering& key, const Clustering& response) {
  const Owner owner = owners(response);
  double num = 0.0, den = 0.0;
  for (const auto& c : key) {
    if (c.empty()) continue;
    const double size = static_cast<double>(c.size());
    den += size;
    if (c.size() == 1) {
      auto it = owner.find(c.front());
      if (it != owner.end() && response[it->second].size() == 1) num += 1.0;
      continue;
    }
    const auto [counts, unowned] = overlap(c, owner);
    double common = 0.0;
    for (const auto& [other, n] : counts) {
      common += static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    }
    num += size * common / (size * (size - 1.0) / 2.0);
  }
  return {num, den};
}

std::map<std::string, const Document*> index_documents(const Corpus& corpus) {
  std::map<std::string, const Document*> docs;
  for_each_document(corpus, [&](const Document& d) { docs.emplace(d.id, &d); });
  return docs;
}

std::vector<const Mention*> sorted_mentions(const Document& doc) {
  std::vector<const Mention*> out;
  for (const auto& m : doc.mentions) out.push_back(&m);
  std::sort(out.begin(), out.end(), [](const Mention* a, const Mention* b) {
    return std::tie(a->span, a->id) < std::tie(b->span, b->id);
  });
  return out;
}

MentionRef ref(const Document& doc, const Mention& m) {
  return MentionRef{doc.id, m.id, m.span};
}

using MentionKey = std::pair<std::string, std::string>;  // (document id, mention id)

Prf read_prf(const nlohmann::json& j) {
  return Prf{j.at("precision").get<double>(), j.at("recall").get<double>(),
             j.at("f1").get<double>()};
}

nlohmann::ordered_json write_prf(const Prf& p) {
  nlohmann::ordered_json j;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  return j;
}

}  // namespace

double safe_ratio(double num, double den) noexcept { return den == 0.0 ? 0.0 : num / den; }

Prf make_prf(double precision, double recall) noexcept {
  return Prf{precision, recall, safe_ratio(2.0 * precision * recall, precision + recall)};
}

MentionAlignment align_mentions(const Corpus& a, const Corpus& b) {
  const auto docs_a = index_documents(a);
  const auto docs_b = index_documents(b);
  MentionAlignment out;
  for (const auto& [id, doc_a] : docs_a) {
    auto it = docs_b.find(id);
    if (it == docs_b.end()) {
      for (const Mention* m : sorted_mentions(*doc_a)) out.unmatched_a.push_back(ref(*doc_a, *m));
      continue;
    }
    const Document* doc_b = it->second;
    if (doc_a->text != doc_b->text) {
      throw Error(ErrorKind::TextMismatch, "document " + id + " has different text");
    }
    const auto ma = sorted_mentions(*doc_a);
    const auto mb = sorted_mentions(*doc_b);
    std::size_t i = 0, k = 0;
    while (i < ma.size() || k < mb.size()) {
      if (k == mb.size() || (i < ma.size() && ma[i]->span < mb[k]->span)) {
        out.unmatched_a.push_back(ref(*doc_a, *ma[i++]));
      } else if (i == ma.size() || mb[k]->span < ma[i]->span) {
        out.unmatched_b.push_back(ref(*doc_b, *mb[k++]));
      } else {
        out.pairs.emplace_back(ref(*doc_a, *ma[i++]), ref(*doc_b, *mb[k++]));
      }
    }
  }
  for (const auto& [id, doc_b] : docs_b) {
    if (docs_a.contains(id)) continue;
    for (const Mention* m : sorted_mentions(*doc_b)) out.unmatched_b.push_back(ref(*doc_b, *m));
  }
  return out;
}

ClusteringPair build_clusterings(const Corpus& gold, const Corpus& sys,
                                 const MentionAlignment& alignment) {
  ClusteringPair out;
  std::map<MentionKey, std::size_t> gold_index, sys_index;
  for (const auto& [g, s] : alignment.pairs) {
    gold_index[{g.document_id, g.mention_id}] = out.mentions.size();
    sys_index[{s.document_id, s.mention_id}] = out.mentions.size();
    out.mentions.push_back(g);
  }
  // Mentions missing from one side are singletons there.
  std::vector<std::size_t> gold_only, sys_only;
  for (const auto& g : alignment.unmatched_a) {
    gold_index[{g.document_id, g.mention_id}] = out.mentions.size();
    gold_only.push_back(out.mentions.size());
    out.mentions.push_back(g);
  }
  for (const auto& s : alignment.unmatched_b) {
    sys_index[{s.document_id, s.mention_id}] = out.mentions.size();
    sys_only.push_back(out.mentions.size());
    out.mentions.push_back(s);
  }

  auto clusters_of = [&](const Corpus& corpus, const std::map<MentionKey, std::size_t>& index,
                         const std::vector<std::size_t>& absent) {
    Clustering clustering;
    std::vector<char> placed(out.mentions.size(), 0);
    for_each_document(corpus, [&](const Document& doc) {
      std::map<std::string, std::vector<std::size_t>> by_name;
      for (const auto& m : doc.mentions) {
        if (!m.global_entity || m.global_entity->empty()) continue;
        auto it = index.find({doc.id, m.id});
        if (it == index.end()) continue;
        by_name[*m.global_entity].push_back(it->second);
      }
      for (auto& [name, members] : by_name) {
        std::sort(members.begin(), members.end());
        for (std::size_t m : members) placed[m] = 1;
        clustering.push_back(std::move(members));
      }
    });
    for (const auto& [key, m] : index) {
      if (!placed[m]) clustering.push_back({m});
    }
    for (std::size_t m : absent) clustering.push_back({m});
    return clustering;
  };
  out.gold = clusters_of(gold, gold_index, sys_only);
  out.sys = clusters_of(sys, sys_index, gold_only);
  return out;
}

Prf mention_detection_f1(const MentionAlignment& alignment) {
  const double matched = static_cast<double>(alignment.pairs.size());
  const double gold = matched + static_cast<double>(alignment.unmatched_a.size());
  const double sys = matched + static_cast<double>(alignment.unmatched_b.size());
  return make_prf(safe_ratio(matched, sys), safe_ratio(matched, gold));
}

Prf muc(const Clustering& gold, const Clustering& sys) {
  const auto [rn, rd] = muc_side(gold, sys);
  const auto [pn, pd] = muc_side(sys, gold);
  return make_prf(safe_ratio(pn, pd), safe_ratio(rn, rd));
}

Prf b_cubed(const Clustering& gold, const Clustering& sys) {
  const auto [rn, rd] = b_cubed_side(gold, sys);
  const auto [pn, pd] = b_cubed_side(sys, gold);
  return make_prf(safe_ratio(pn, pd), safe_ratio(rn, rd));
}

Prf ceaf_e(const Clustering& gold, const Clustering& sys) {
  Clustering g, s;
  for (const auto& c : gold) {
    if (!c.empty()) g.push_back(c);
  }
  for (const auto& c : sys) {
    if (!c.empty()) s.push_back(c);
  }
  const Owner sys_owner = owners(s);
  std::vector<std::vector<double>> phi(g.size(), std::vector<double>(s.size(), 0.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto [counts, unowned] = overlap(g[i], sys_owner);
    for (const auto& [k, n] : counts) {
      phi[i][k] = 2.0 * static_cast<double>(n) / static_cast<double>(g[i].size() + s[k].size());
    }
  }
  double total = 0.0;
  const auto assignment = max_weight_assignment(phi);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (assignment[i]) total += phi[i][*assignment[i]];
  }
  return make_prf(safe_ratio(total, static_cast<double>(s.size())),
                  safe_ratio(total, static_cast<double>(g.size())));
}

Prf lea(const Clustering& gold, const Clustering& sys) {
  const auto [rn, rd] = lea_side(gold, sys);
  const auto [pn, pd] = lea_side(sys, gold);
  return make_prf(safe_ratio(pn, pd), safe_ratio(rn, rd));
}

double conll_average(const Prf& m, const Prf& b, const Prf& c) noexcept {
  return (m.f1 + b.f1 + c.f1) / 3.0;
}

EdgeScores relation_edge_prf(const Corpus& a, const Corpus& b,
                             const MentionAlignment& alignment) {
  std::map<MentionKey, std::size_t> pair_of_a, pair_of_b;
  for (std::size_t i = 0; i < alignment.pairs.size(); ++i) {
    const auto& [ga, sb] = alignment.pairs[i];
    pair_of_a[{ga.document_id, ga.mention_id}] = i;
    pair_of_b[{sb.document_id, sb.mention_id}] = i;
  }

  using Endpoints = std::pair<std::size_t, std::size_t>;  // aligned pair indices
  struct Tally {
    std::map<Endpoints, std::map<RelationType, std::size_t>> aligned;
  };
  EdgeScores scores;
  for (RelationType r : kAllRelationTypes) scores.counts[r] = LabelCounts{};

  auto tally = [&](const Corpus& corpus, const std::map<MentionKey, std::size_t>& pair_of,
                   bool gold_side) {
    Tally t;
    for_each_document(corpus, [&](const Document& doc) {
      for (const auto& e : doc.relations) {
        if (!e.label.known()) continue;
        const RelationType label = e.label.value();
        auto& counts = scores.counts[label];
        (gold_side ? counts.gold : counts.sys) += 1;
        auto s = pair_of.find({doc.id, e.source});
        auto d = pair_of.find({doc.id, e.target});
        if (s != pair_of.end() && d != pair_of.end()) {
          ++t.aligned[{s->second, d->second}][label];
        }
      }
    });
    return t;
  };
  Tally ta = tally(a, pair_of_a, true);
  Tally tb = tally(b, pair_of_b, false);

  std::map<std::pair<RelationType, RelationType>, std::size_t> confusion;
  for (auto& [endpoints, labels_a] : ta.aligned) {
    auto it = tb.aligned.find(endpoints);
    if (it == tb.aligned.end()) continue;
    auto& labels_b = it->second;
    for (auto& [label, na] : labels_a) {
      auto lb = labels_b.find(label);
      if (lb == labels_b.end()) continue;
      const std::size_t matched = std::min(na, lb->second);
      scores.counts[label].matched += matched;
      na -= matched;
      lb->second -= matched;
    }
    // Leftover edges on the same endpoints pair up in label order.
    std::vector<RelationType> rest_a, rest_b;
    for (const auto& [label, n] : labels_a) rest_a.insert(rest_a.end(), n, label);
    for (const auto& [label, n] : labels_b) rest_b.insert(rest_b.end(), n, label);
    for (std::size_t i = 0; i < std::min(rest_a.size(), rest_b.size()); ++i) {
      ++confusion[{rest_a[i], rest_b[i]}];
    }
  }

  std::size_t gold_total = 0, sys_total = 0, matched_total = 0;
  for (const auto& [label, c] : scores.counts) {
    scores.per_label[label] =
        make_prf(safe_ratio(static_cast<double>(c.matched), static_cast<double>(c.sys)),
                 safe_ratio(static_cast<double>(c.matched), static_cast<double>(c.gold)));
    gold_total += c.gold;
    sys_total += c.sys;
    matched_total += c.matched;
  }
  scores.micro =
      make_prf(safe_ratio(static_cast<double>(matched_total), static_cast<double>(sys_total)),
               safe_ratio(static_cast<double>(matched_total), static_cast<double>(gold_total)));
  for (const auto& [labels, n] : confusion) {
    scores.confusion.push_back(ConfusionCell{
        labels.first, labels.second, n,
        std::abs(precedence_rank(labels.first) - precedence_rank(labels.second))});
  }
  return scores;
}

double entity_type_kappa(const MentionAlignment& alignment, const Corpus& a, const Corpus& b) {
  if (alignment.pairs.empty()) {
    throw Error(ErrorKind::EmptyAlignment, "no aligned mentions to compare entity types");
  }
  const auto docs_a = index_documents(a);
  const auto docs_b = index_documents(b);
  auto type_of = [](const std::map<std::string, const Document*>& docs, const MentionRef& r) {
    const Document* doc = docs.at(r.document_id);
    const Mention* m = doc->find_mention(r.mention_id);
    if (!m) throw Error(ErrorKind::Precondition, "mention " + r.mention_id + " not found");
    return m->entity_type.text();
  };

  std::map<std::string, std::size_t> marginal_a, marginal_b;
  std::size_t agree = 0;
  for (const auto& [ra, rb] : alignment.pairs) {
    const std::string ta = type_of(docs_a, ra);
    const std::string tb = type_of(docs_b, rb);
    ++marginal_a[ta];
    ++marginal_b[tb];
    if (ta == tb) ++agree;
  }
  const double n = static_cast<double>(alignment.pairs.size());
  double chance = 0.0;  // Pe * n^2, exact in integers
  for (const auto& [label, count] : marginal_a) {
    auto it = marginal_b.find(label);
    if (it != marginal_b.end()) chance += static_cast<double>(count * it->second);
  }
  if (chance == n * n) return agree == alignment.pairs.size() ? 1.0 : 0.0;
  return (static_cast<double>(agree) * n - chance) / (n * n - chance);
}

ScoreReport score_corpora(const Corpus& gold, const Corpus& sys) {
  const MentionAlignment alignment = align_mentions(gold, sys);
  const ClusteringPair clusterings = build_clusterings(gold, sys, alignment);
  ScoreReport report;
  report.mentions = mention_detection_f1(alignment);
  report.muc = muc(clusterings.gold, clusterings.sys);
  report.b_cubed = b_cubed(clusterings.gold, clusterings.sys);
  report.ceaf_e = ceaf_e(clusterings.gold, clusterings.sys);
  report.lea = lea(clusterings.gold, clusterings.sys);
  report.conll = conll_average(report.muc, report.b_cubed, report.ceaf_e);
  report.edges = relation_edge_prf(gold, sys, alignment);
  if (!alignment.pairs.empty()) report.kappa = entity_type_kappa(alignment, gold, sys);
  return report;
}

std::string format_report(const ScoreReport& report, const std::set<std::string>& metrics) {
  auto want = [&](std::string_view name) {
    return metrics.empty() || metrics.contains(std::string(name));
  };
  auto prf_row = [](std::string name, const Prf& p) {
    return std::vector<std::string>{std::move(name), fixed4(p.precision), fixed4(p.recall),
                                    fixed4(p.f1)};
  };
  TextTable table({"metric", "precision", "recall", "f1"});
  if (want("mentions")) table.add_row(prf_row("mentions", report.mentions));
  if (want("muc")) table.add_row(prf_row("muc", report.muc));
  if (want("b3")) table.add_row(prf_row("b3", report.b_cubed));
  if (want("ceaf_e")) table.add_row(prf_row("ceaf_e", report.ceaf_e));
  if (want("lea")) table.add_row(prf_row("lea", report.lea));
  if (want("conll")) table.add_row({"conll", "-", "-", fixed4(report.conll)});
  if (want("edges")) {
    table.add_row(prf_row("edges", report.edges.micro));
    for (const auto& [label, prf] : report.edges.per_label) {
      table.add_row(prf_row("edges." + std::string(to_string(label)), prf));
    }
  }
  if (want("kappa")) {
    table.add_row({"kappa", "-", "-", report.kappa ? fixed4(*report.kappa) : "n/a"});
  }
  std::string out = table.render();
  if (want("edges") && !report.edges.confusion.empty()) {
    TextTable confusion({"gold_label", "sys_label", "count", "rank_distance"});
    for (const auto& c : report.edges.confusion) {
      confusion.add_row({std::string(to_string(c.gold)), std::string(to_string(c.sys)),
                         std::to_string(c.count), std::to_string(c.rank_distance)});
    }
    out += "\n" + confusion.render();
  }
  return out;
}

std::string report_to_machine(const ScoreReport& r) {
  nlohmann::ordered_json j;
  j["mentions"] = write_prf(r.mentions);
  j["muc"] = write_prf(r.muc);
  j["b3"] = write_prf(r.b_cubed);
  j["ceaf_e"] = write_prf(r.ceaf_e);
  j["lea"] = write_prf(r.lea);
  j["conll"] = r.conll;
  nlohmann::ordered_json edges;
  edges["micro"] = write_prf(r.edges.micro);
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (const auto& [label, c] : r.edges.counts) {
    auto entry = write_prf(r.edges.per_label.at(label));
    entry["gold"] = c.gold;
    entry["sys"] = c.sys;
    entry["matched"] = c.matched;
    labels[std::string(to_string(label))] = std::move(entry);
  }
  edges["labels"] = std::move(labels);
  nlohmann::ordered_json confusion = nlohmann::ordered_json::array();
  for (const auto& c : r.edges.confusion) {
    nlohmann::ordered_json cell;
    cell["gold"] = to_string(c.gold);
    cell["sys"] = to_string(c.sys);
    cell["count"] = c.count;
    cell["rank_distance"] = c.rank_distance;
    confusion.push_back(std::move(cell));
  }
  edges["confusion"] = std::move(confusion);
  j["edges"] = std::move(edges);
  j["kappa"] = r.kappa ? nlohmann::ordered_json(*r.kappa) : nullptr;
  return j.dump();
}

ScoreReport report_from_machine(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, e.what());
  }
  try {
    ScoreReport r;
    r.mentions = read_prf(j.at("mentions"));
    r.muc = read_prf(j.at("muc"));
    r.b_cubed = read_prf(j.at("b3"));
    r.ceaf_e = read_prf(j.at("ceaf_e"));
    r.lea = read_prf(j.at("lea"));
    r.conll = j.at("conll").get<double>();
    const auto& edges = j.at("edges");
    r.edges.micro = read_prf(edges.at("micro"));
    for (const auto& [name, entry] : edges.at("labels").items()) {
      auto label = parse_relation_type(name);
      if (!label) throw Error(ErrorKind::BadEnum, name);
      r.edges.per_label[*label] = read_prf(entry);
      r.edges.counts[*label] = LabelCounts{entry.at("gold").get<std::size_t>(),
                                           entry.at("sys").get<std::size_t>(),
                                           entry.at("matched").get<std::size_t>()};
    }
    for (const auto& cell : edges.at("confusion")) {
      auto gold = parse_relation_type(cell.at("gold").get<std::string>());
      auto sys = parse_relation_type(cell.at("sys").get<std::string>());
      if (!gold || !sys) throw Error(ErrorKind::BadEnum, cell.dump());
      r.edges.confusion.push_back(ConfusionCell{*gold, *sys, cell.at("count").get<std::size_t>(),
                                                cell.at("rank_distance").get<int>()});
    }
    if (!j.at("kappa").is_null()) r.kappa = j.at("kappa").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, e.what());
  }
}

}  // namespace divcdcr
