// Copyright 2026 The Condensedly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one [PASS]/[FAIL] line per criterion. Tolerances and
// time limits are fixed here. Exits nonzero when any criterion fails.

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "condensedly/corpus.hpp"
#include "condensedly/eval.hpp"
#include "condensedly/index.hpp"
#include "condensedly/ner.hpp"
#include "condensedly/query.hpp"
#include "condensedly/ranking.hpp"
#include "condensedly/service.hpp"
#include "condensedly/synth.hpp"
#include "oracles/ranking_oracle.hpp"
#include "oracles/search_oracle.hpp"
#include "process.hpp"
#include "service_fixture.hpp"
#include "testing.hpp"

namespace condensedly {
namespace {

namespace fs = std::filesystem;

// Collects the first few mismatches of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 5) detail_ << (failures_ > 1 ? "; " : "") << what;
  }
  bool ok() const { return failures_ == 0; }
  std::string detail() const {
    std::string d = detail_.str();
    if (failures_ > 5) d += "; ... " + std::to_string(failures_) + " failures in total";
    return d;
  }

 private:
  std::size_t failures_ = 0;
  std::ostringstream detail_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void ranking_arithmetic(Check& c) {
  Document doc = testing::make_doc("d", {"gene expression", "expression"},
                                   {{"", {"genes gene protein expressed"}}});
  const double v = ranking::pr_isr(doc.abstract_sentences[0], doc.sections[0].paragraphs[0],
                                   doc.abstract_sentences);
  c.expect(std::abs(v - 0.722593) <= 1e-6, "pr_isr = " + fmt(v));
  const double ln3 = ranking::isr({"gene"}, doc.abstract_sentences);
  const double ln2 = ranking::isr({"express"}, doc.abstract_sentences);
  c.expect(std::abs(ln3 - std::log(3.0)) <= 1e-12, "isr(gene) = " + fmt(ln3));
  c.expect(std::abs(ln2 - std::log(2.0)) <= 1e-12, "isr(express) = " + fmt(ln2));
}

void condenser_replay(Check& c) {
  synth::Rng rng(20261016);
  for (int i = 0; i < 200; ++i) {
    Document doc = synth::random_document(rng, "R" + std::to_string(i));
    ranking::CondensedText ct = ranking::condense(doc);
    const std::string violation = oracle::replay_violation(doc, ct);
    c.expect(violation.empty(), doc.doc_id + ": " + violation);
    std::set<std::string> seen;
    for (const auto& e : ct.entries) c.expect(seen.insert(e.paragraph_id).second, "duplicate paragraph");
  }
}

void io_correlation(Check& c) {
  const fs::path dir = testing::data_dir() / "synthetic_seed42";
  auto docs = load_corpus(dir / "corpus");
  auto labels = eval::parse_labels_tsv(read_file(dir / "labels.tsv"));
  eval::CorrelationReport r = eval::io_by_level(labels, docs);
  for (std::size_t l = 0; l < r.level_means.size(); ++l) {
    c.expect(r.level_means[l].has_value(), "level " + std::to_string(l + 1) + " has no labels");
  }
  for (std::size_t l = 1; l < r.level_means.size(); ++l) {
    if (r.level_means[l] && r.level_means[l - 1]) {
      c.expect(*r.level_means[l] >= *r.level_means[l - 1],
               "mean falls at level " + std::to_string(l + 1));
    }
  }
  c.expect(!r.degenerate && r.spearman_rho >= 0.9, "rho = " + fmt(r.spearman_rho));
}

void rouge_oracle(Check& c) {
  struct Case {
    const char* candidate;
    const char* reference;
    int n;
    double recall;
    double precision;
  };
  const Case cases[] = {
      {"the cat sat", "the cat ran", 1, 2.0 / 3.0, 2.0 / 3.0},
      {"the the the", "the cat", 1, 1.0 / 2.0, 1.0 / 3.0},
      {"a b c d", "a b x d", 2, 1.0 / 3.0, 1.0 / 3.0},
      {"cells divide", "cells divide rapidly in culture", 1, 2.0 / 5.0, 1.0},
      {"Gene expression, gene regulation.", "gene expression and gene silencing", 1, 3.0 / 5.0,
       3.0 / 4.0},
  };
  for (const Case& k : cases) {
    eval::RougeScore s = eval::rouge_n(k.candidate, k.reference, k.n);
    c.expect(std::abs(s.recall - k.recall) <= 1e-9 && std::abs(s.precision - k.precision) <= 1e-9,
             std::string(k.candidate) + ": " + fmt(s.recall) + "/" + fmt(s.precision));
  }
  eval::RougeScore same = eval::rouge_n("kinase signals drive growth", "kinase signals drive growth", 2);
  c.expect(same.recall == 1.0 && same.precision == 1.0 && same.f1 == 1.0, "identity");
  eval::RougeScore none = eval::rouge_n("alpha beta", "gamma delta", 1);
  c.expect(none.recall == 0.0 && none.precision == 0.0 && none.f1 == 0.0, "disjoint");
}

std::vector<std::string> hit_ids(const std::vector<search::SearchHit>& hits) {
  std::vector<std::string> out;
  for (const auto& h : hits) out.push_back(h.doc_id);
  std::sort(out.begin(), out.end());
  return out;
}

void search_oracle(Check& c) {
  synth::Rng rng(500);
  std::size_t total = 0;
  for (int corpus = 0; corpus < 10; ++corpus) {
    auto docs = synth::random_corpus(rng, 1 + rng.index(100));
    auto index = search::InvertedIndex::build(docs);
    std::vector<std::string> words = {"absentword", "the"};
    for (const auto& d : docs) {
      for (const auto& t : oracle::document_terms(d)) words.push_back(t);
    }
    oracle::QueryGenerator gen(rng, words, {docs[0].doc_id, docs.back().doc_id, "1"});
    for (int q = 0; q < 50; ++q, ++total) {
      const std::string text = gen.next();
      search::Query ast = search::parse_query(text);
      c.expect(hit_ids(search::execute(ast, index)) == oracle::linear_scan(ast, docs),
               "corpus " + std::to_string(corpus) + ": " + text);
    }
  }
  c.expect(total == 500, "ran " + std::to_string(total) + " queries");
}

search::IndexError::Kind load_error(const std::string& bytes) {
  try {
    search::deserialize_index(bytes);
  } catch (const search::IndexError& e) {
    return e.kind();
  }
  return static_cast<search::IndexError::Kind>(-1);
}

void index_persistence(Check& c) {
  synth::Rng rng(606);
  auto docs = synth::random_corpus(rng, 80);
  auto index = search::InvertedIndex::build(docs);
  testing::TempDir tmp;
  search::save_index(index, tmp.path() / "index.cndx");
  auto loaded = search::load_index(tmp.path() / "index.cndx");
  std::vector<std::string> words = {"absentword"};
  for (const auto& d : docs) {
    for (const auto& t : oracle::document_terms(d)) words.push_back(t);
  }
  oracle::QueryGenerator gen(rng, words, {docs[3].doc_id});
  for (int i = 0; i < 200; ++i) {
    const std::string q = gen.next();
    search::Query ast = search::parse_query(q);
    c.expect(search::execute(ast, loaded) == search::execute(ast, index), "hits differ: " + q);
  }
  const std::string good = read_file(tmp.path() / "index.cndx");
  using K = search::IndexError::Kind;
  std::string flipped = good;
  flipped[good.size() / 2] = static_cast<char>(flipped[good.size() / 2] ^ 0x01);
  c.expect(load_error(flipped) == K::kChecksumMismatch, "flipped byte accepted");
  c.expect(load_error(good.substr(0, good.size() - 7)) == K::kChecksumMismatch, "truncation accepted");
  std::string bumped = good;
  bumped[4] = '\x02';
  c.expect(load_error(bumped) == K::kFormatVersionMismatch, "version 2 accepted");
}

void ner_checks(Check& c) {
  auto has_pair = [](std::string_view text, std::string_view sf, std::string_view lf) {
    for (const auto& p : ner::find_abbreviations(text)) {
      if (p.short_form == sf && p.long_form == lf) return true;
    }
    return false;
  };
  c.expect(has_pair("deoxyribonucleic acid (DNA) is", "DNA", "deoxyribonucleic acid"), "DNA trace");
  c.expect(has_pair("heat shock protein (HSP)", "HSP", "heat shock protein"), "HSP trace");
  c.expect(ner::find_abbreviations("(see Figure 1)").empty(), "(see Figure 1) produced a pair");

  std::vector<ner::Lexicon> lex = ner::parse_lexicon_tsv(
      "Disease\tD1\tbreast cancer\nDisease\tD2\tcancer\n");
  auto hits = ner::match_lexicon("breast cancer risk", lex);
  c.expect(hits.size() == 1 && hits[0].surface == "breast cancer" && hits[0].normalized == "D1",
           "longest match");

  ner::LexiconMatcher matcher(ner::load_lexicons(testing::data_dir() / "lexicons"));
  static const std::vector<std::string> pieces = {
      "p53", "TP53", "heat shock protein", "(HSP)", "breast cancer", "rs334", "human", "(", ")",
      "deoxyribonucleic acid (DNA)", "(see Figure 1)", "cells", ",", "."};
  synth::Rng rng(707);
  std::size_t spans = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    const std::size_t n = rng.index(20);
    for (std::size_t k = 0; k < n; ++k) text += pieces[rng.index(pieces.size())] + (rng.chance(3, 4) ? " " : "");
    for (const ner::Entity& e : ner::annotate_text(text, matcher)) {
      ++spans;
      c.expect(e.start < e.end && e.end <= text.size() &&
                   text.substr(e.start, e.end - e.start) == e.surface,
               "bad span in '" + text + "'");
    }
  }
  c.expect(spans > 1000, "only " + std::to_string(spans) + " spans checked");
}

std::string pipeline_bytes(const fs::path& root, Check& c) {
  std::string bytes;
  auto step = [&](const std::vector<std::string>& args) {
    auto r = testing::run_cli(args);
    c.expect(r.exit_code == 0, args[0] + " exited " + std::to_string(r.exit_code) + ": " + r.err);
    bytes += r.out;
  };
  const fs::path corpus = root / "corpus";
  step({"ingest", (testing::data_dir() / "ingest_valid").string(), corpus.string()});
  step({"index", corpus.string(), (root / "index.cndx").string()});
  for (const Document& d : load_corpus(corpus)) {
    step({"condense", d.doc_id, "--corpus", corpus.string()});
    bytes += read_file(corpus / corpus_file_name(d.doc_id));
  }
  bytes += read_file(root / "index.cndx");
  return bytes;
}

void determinism(Check& c) {
  testing::TempDir a, b;
  const std::string first = pipeline_bytes(a.path(), c);
  const std::string second = pipeline_bytes(b.path(), c);
  c.expect(!first.empty(), "no output");
  c.expect(first == second, "outputs differ between runs");
}

service::Response call(const service::CorpusSnapshot& snapshot, const std::string& target) {
  std::size_t q = target.find('?');
  httplib::Params params;
  if (q != std::string::npos) httplib::detail::parse_query_text(target.substr(q + 1), params);
  return service::route(snapshot, target.substr(0, q), service::Params(params.begin(), params.end()));
}

void service_contract(Check& c) {
  auto snapshot = testing::service_snapshot();
  auto body_is = [&](const std::string& path, int status, const std::string& body) {
    service::Response r = call(*snapshot, path);
    c.expect(r.status == status && r.body == body, path + " -> " + std::to_string(r.status) + " " + r.body);
  };
  body_is("/api/health", 200, R"({"doc_count":5,"status":"ok"})");
  body_is("/api/articles/1002/condensed?qs=1", 200, R"({"doc_id":"1002","entry":null,"qs_index":1})");
  body_is("/api/articles/1002/condensed", 200,
          R"({"doc_id":"1002","entries":[{"paragraph_id":"0:0","qs_index":0,)"
          R"("rss":{"coverage":0.666667,"rss":0.666667,"spread":1.000000},)"
          R"("scores":{"io":0.666667,"pr_isr":0.447940},"section_id":0}],)"
          R"("rendered_paragraph_ids":["0:0"]})");
  body_is("/api/articles/1001/entities", 200,
          R"({"doc_id":"1001","entities":[{"class":"Gene","count":3,"key":"p53"},)"
          R"({"class":"SNP","count":1,"key":"rs334"}]})");
  Json search = Json::parse(call(*snapshot, "/api/search?q=p53").body);
  std::vector<std::string> ids;
  for (const Json& h : search["hits"]) ids.push_back(h["doc_id"]);
  std::sort(ids.begin(), ids.end());
  c.expect(ids == std::vector<std::string>{"1001", "1005"}, "search p53 -> " + search.dump());
  Json article = Json::parse(call(*snapshot, "/api/articles/1002").body);
  c.expect(article["title"] == "Kinase signalling" &&
               article["sections"][0]["paragraphs"][0]["text"] == "Kinase signals drive growth." &&
               article["abstract_sentences"].size() == 2,
           "article 1002 -> " + article.dump());
  c.expect(call(*snapshot, "/api/articles/404").status == 404, "unknown article");
  c.expect(call(*snapshot, "/api/search?q=%28").status == 400, "bad query");

  const auto paths = testing::service_request_paths();
  std::vector<service::Response> serial;
  for (const auto& p : paths) serial.push_back(call(*snapshot, p));
  service::Server server(snapshot);
  const int port = server.bind("127.0.0.1", 0);
  std::thread runner([&] { server.run(); });
  server.wait_until_ready();
  std::vector<int> mismatches(64, 0);
  std::vector<std::thread> clients;
  for (int k = 0; k < 64; ++k) {
    clients.emplace_back([&, k] {
      httplib::Client client("127.0.0.1", port);
      for (std::size_t j = 0; j < paths.size(); ++j) {
        const std::size_t i = (j + static_cast<std::size_t>(k)) % paths.size();
        auto res = client.Get(paths[i]);
        if (!res || res->status != serial[i].status || res->body != serial[i].body) ++mismatches[k];
      }
    });
  }
  for (auto& t : clients) t.join();
  server.stop();
  runner.join();
  int total = 0;
  for (int m : mismatches) total += m;
  c.expect(total == 0, std::to_string(total) + " concurrent responses differ from serial");
}

struct Criterion {
  const char* name;
  std::function<void(Check&)> run;
  double limit_seconds;  // 0 when the criterion has no time limit
};

}  // namespace
}  // namespace condensedly

int main() {
  using namespace condensedly;
  const Criterion criteria[] = {
      {"ranking arithmetic", ranking_arithmetic, 1.0},
      {"condenser replay", condenser_replay, 10.0},
      {"IO correlation", io_correlation, 5.0},
      {"ROUGE oracle", rouge_oracle, 0.0},
      {"search oracle equivalence", search_oracle, 30.0},
      {"index persistence", index_persistence, 0.0},
      {"NER", ner_checks, 0.0},
      {"end-to-end determinism", determinism, 0.0},
      {"service contract", service_contract, 0.0},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_seconds > 0) {
      check.expect(seconds < cr.limit_seconds,
                   "took " + fmt(seconds) + " s, limit " + fmt(cr.limit_seconds) + " s");
    }
    const bool ok = check.ok();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << cr.name << " (" << fmt(seconds) << " s)";
    if (!ok) std::cout << ": " << check.detail();
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
