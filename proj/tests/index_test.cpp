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

#include <gtest/gtest.h>

#include <cmath>

#include "condensedly/corpus.hpp"
#include "condensedly/index.hpp"
#include "condensedly/query.hpp"
#include "condensedly/synth.hpp"
#include "oracles/search_oracle.hpp"
#include "testing.hpp"

namespace condensedly::search {
namespace {

using testing::make_doc;

std::string parsed(std::string_view q) { return to_string(parse_query(q)); }

QueryError::Kind error_of(std::string_view q) {
  try {
    parse_query(q);
  } catch (const QueryError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "'" << q << "' parsed";
  return QueryError::Kind::kSyntaxError;
}

std::vector<std::string> ids(const std::vector<SearchHit>& hits) {
  std::vector<std::string> out;
  for (const auto& h : hits) out.push_back(h.doc_id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Document> toy_corpus() {
  return {make_doc("1", {"Alpha beta."}, {{"", {"alpha beta gamma"}}}, "one"),
          make_doc("2", {"Alpha only."}, {{"", {"alpha delta"}}}, "two"),
          make_doc("3", {"Beta only."}, {{"", {"beta beta beta"}}}, "three"),
          make_doc("4", {"Gamma delta."}, {{"", {"gamma"}}}, "four"),
          make_doc("5", {"Alpha beta gamma delta."}, {{"", {"everything here alpha"}}}, "five")};
}

TEST(Query, Precedence) {
  EXPECT_EQ(parsed("p53 AND cancer OR mouse"), "Or(And(p53,cancer),mou)");
  EXPECT_EQ(parsed("a1 OR b1 c1"), "Or(a1,And(b1,c1))");
  EXPECT_EQ(parsed("(a1 OR b1) c1"), "And(Or(a1,b1),c1)");
  EXPECT_EQ(parsed("gene AND NOT mouse"), "And(gene,Not(mou))");
  EXPECT_EQ(parsed("NOT mouse gene"), "And(Not(mou),gene)");
  EXPECT_EQ(parsed("pmid:12345"), "Pmid(12345)");
  EXPECT_EQ(parsed("PMID:7 OR genes"), "Or(Pmid(7),gene)");
}

TEST(Query, NormalizationAndOperators) {
  EXPECT_EQ(parsed("the genes"), "gene");
  EXPECT_EQ(parsed("p53-mediated"), "p53-mediat");
  EXPECT_EQ(parsed("genes and mice"), "And(gene,mice)");
  EXPECT_EQ(parsed("genes or mice"), "And(gene,mice)") << "lowercase operators are plain words";
}

TEST(Query, Errors) {
  EXPECT_EQ(error_of("NOT cancer"), QueryError::Kind::kPureNegation);
  EXPECT_EQ(error_of("NOT a1 OR b1"), QueryError::Kind::kPureNegation);
  EXPECT_EQ(error_of("(("), QueryError::Kind::kSyntaxError);
  EXPECT_EQ(error_of("a1 AND"), QueryError::Kind::kSyntaxError);
  EXPECT_EQ(error_of("a1 OR OR b1"), QueryError::Kind::kSyntaxError);
  EXPECT_EQ(error_of("(a1"), QueryError::Kind::kSyntaxError);
  EXPECT_EQ(error_of("a1)"), QueryError::Kind::kSyntaxError);
  EXPECT_EQ(error_of(""), QueryError::Kind::kSyntaxError);
  EXPECT_EQ(error_of("the of"), QueryError::Kind::kSyntaxError);
  EXPECT_EQ(error_of("pmid:12x"), QueryError::Kind::kSyntaxError);
}

TEST(Build, Statistics) {
  auto docs = toy_corpus();
  InvertedIndex index = InvertedIndex::build(docs);
  EXPECT_EQ(index.doc_count(), 5u);
  ASSERT_NE(index.postings("everyth"), nullptr);
  EXPECT_EQ(index.postings("everyth")->size(), 1u);
  const auto* beta = index.postings("beta");
  ASSERT_NE(beta, nullptr);
  EXPECT_EQ(beta->size(), 3u);
  EXPECT_EQ((*beta)[1].tf, 4u);  // doc 3: abstract once, body three times
  EXPECT_EQ(index.docs()[0].length, 1u + 2u + 3u);
  double total = 0;
  for (const auto& d : index.docs()) total += d.length;
  EXPECT_EQ(index.avg_doc_length(), total / 5.0);

  InvertedIndex empty = InvertedIndex::build(std::vector<Document>{});
  EXPECT_EQ(empty.doc_count(), 0u);
  EXPECT_EQ(empty.term_count(), 0u);

  docs.push_back(docs[0]);
  try {
    InvertedIndex::build(docs);
    FAIL();
  } catch (const IndexError& e) {
    EXPECT_EQ(e.kind(), IndexError::Kind::kDuplicateDocId);
  }
}

TEST(Execute, ToyCorpus) {
  auto docs = toy_corpus();
  InvertedIndex index = InvertedIndex::build(docs);
  auto run = [&](std::string_view q) { return execute(parse_query(q), index); };
  EXPECT_EQ(ids(run("alpha AND beta")), (std::vector<std::string>{"1", "5"}));
  EXPECT_TRUE(run("alpha AND NOT alpha").empty());
  EXPECT_TRUE(run("pmid:999").empty());
  auto pmid = run("pmid:3");
  ASSERT_EQ(pmid.size(), 1u);
  EXPECT_EQ(pmid[0].score, 1.0);
  EXPECT_EQ(pmid[0].title, "three");
  EXPECT_EQ(ids(run("beta AND NOT (alpha OR gamma)")), (std::vector<std::string>{"3"}));
  EXPECT_TRUE(run("unknownword").empty());
}

TEST(Execute, Bm25ByHand) {
  auto docs = toy_corpus();
  InvertedIndex index = InvertedIndex::build(docs);
  auto hits = execute(parse_query("everything"), index);
  ASSERT_EQ(hits.size(), 1u);
  // Doc 5: title "five" (1) + abstract (4) + body (3) = 8 tokens, tf 1.
  const double avg = index.avg_doc_length();
  const double idf = std::log(1.0 + (5.0 - 1.0 + 0.5) / (1.0 + 0.5));
  const double expected = idf * 1.0 * 2.2 / (1.0 + 1.2 * (0.25 + 0.75 * 8.0 / avg));
  EXPECT_NEAR(hits[0].score, expected, 1e-12);
}

TEST(Execute, OrderingIsScoreThenId) {
  auto docs = toy_corpus();
  InvertedIndex index = InvertedIndex::build(docs);
  auto hits = execute(parse_query("alpha OR beta OR gamma OR delta"), index);
  ASSERT_EQ(hits.size(), 5u);
  for (std::size_t i = 1; i < hits.size(); ++i) {
    EXPECT_TRUE(hits[i - 1].score > hits[i].score ||
                (hits[i - 1].score == hits[i].score && hits[i - 1].doc_id < hits[i].doc_id));
  }
}

TEST(Execute, MatchesLinearScanOnRandomCorpora) {
  synth::Rng rng(4242);
  for (int c = 0; c < 6; ++c) {
    auto docs = synth::random_corpus(rng, 1 + rng.index(60));
    InvertedIndex index = InvertedIndex::build(docs);
    std::vector<std::string> words;
    for (const auto& d : docs) {
      for (const auto& t : oracle::document_terms(d)) words.push_back(t);
    }
    words.push_back("absentword");
    words.push_back("the");
    std::vector<std::string> pmids = {docs[0].doc_id, "1"};
    oracle::QueryGenerator gen(rng, words, pmids);
    for (int i = 0; i < 100; ++i) {
      const std::string q = gen.next();
      Query ast = parse_query(q);
      auto hits = execute(ast, index);
      EXPECT_EQ(ids(hits), oracle::linear_scan(ast, docs)) << q;
      for (const auto& h : hits) {
        EXPECT_TRUE(std::isfinite(h.score));
        EXPECT_GE(h.score, 0.0);
      }
    }
  }
}

TEST(Execute, AddingDocumentsIsMonotoneForPositiveQueries) {
  synth::Rng rng(77);
  auto docs = synth::random_corpus(rng, 40);
  std::vector<Document> half(docs.begin(), docs.begin() + 20);
  InvertedIndex small = InvertedIndex::build(half);
  InvertedIndex large = InvertedIndex::build(docs);
  std::vector<std::string> words = {"absentword"};
  for (const auto& t : oracle::document_terms(docs[0])) words.push_back(t);
  for (const auto& t : oracle::document_terms(docs[25])) words.push_back(t);
  for (int i = 0; i < 200; ++i) {
    std::string q = words[rng.index(words.size())];
    if (rng.chance(1, 2)) q += (rng.chance(1, 2) ? " OR " : " ") + words[rng.index(words.size())];
    auto before = ids(execute(parse_query(q), small));
    auto after = ids(execute(parse_query(q), large));
    EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end())) << q;
  }
}

TEST(Persistence, RoundTrip) {
  auto docs = toy_corpus();
  InvertedIndex index = InvertedIndex::build(docs);
  testing::TempDir dir;
  save_index(index, dir.path() / "index.cndx");
  InvertedIndex loaded = load_index(dir.path() / "index.cndx");
  EXPECT_EQ(loaded.doc_count(), index.doc_count());
  EXPECT_EQ(loaded.avg_doc_length(), index.avg_doc_length());
  EXPECT_EQ(loaded.postings(), index.postings());
  EXPECT_EQ(loaded.docs(), index.docs());
  for (const char* q : {"alpha", "alpha AND beta", "beta AND NOT gamma", "pmid:2 OR delta"}) {
    EXPECT_EQ(execute(parse_query(q), loaded), execute(parse_query(q), index)) << q;
  }
  EXPECT_EQ(serialize_index(loaded), serialize_index(index));
}

TEST(Persistence, LayoutHeader) {
  InvertedIndex empty = InvertedIndex::build(std::vector<Document>{});
  const std::string bytes = serialize_index(empty);
  // magic, version 1, zero docs, zero terms, crc.
  ASSERT_EQ(bytes.size(), 4u + 2u + 4u + 4u + 4u);
  EXPECT_EQ(bytes.substr(0, 4), "CNDX");
  EXPECT_EQ(bytes[4], '\x01');
  EXPECT_EQ(bytes[5], '\x00');
  EXPECT_EQ(deserialize_index(bytes).doc_count(), 0u);
}

IndexError::Kind load_error(std::string bytes) {
  try {
    deserialize_index(bytes);
  } catch (const IndexError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "corrupt index accepted";
  return IndexError::Kind::kIo;
}

TEST(Persistence, CorruptionDetected) {
  const std::string good = serialize_index(InvertedIndex::build(toy_corpus()));
  EXPECT_EQ(load_error(good.substr(0, good.size() - 1)), IndexError::Kind::kChecksumMismatch);
  EXPECT_EQ(load_error(good.substr(0, 20)), IndexError::Kind::kChecksumMismatch);
  EXPECT_EQ(load_error(good.substr(0, 3)), IndexError::Kind::kChecksumMismatch);
  for (std::size_t pos : {std::size_t{8}, good.size() / 2, good.size() - 2}) {
    std::string flipped = good;
    flipped[pos] = static_cast<char>(flipped[pos] ^ 0x20);
    EXPECT_EQ(load_error(flipped), IndexError::Kind::kChecksumMismatch) << pos;
  }
  std::string bumped = good;
  bumped[4] = '\x02';
  EXPECT_EQ(load_error(bumped), IndexError::Kind::kFormatVersionMismatch);
  std::string magic = good;
  magic[0] = 'X';
  EXPECT_EQ(load_error(magic), IndexError::Kind::kFormatVersionMismatch);

  try {
    load_index("/nonexistent/dir/index.cndx");
    FAIL();
  } catch (const IndexError& e) {
    EXPECT_EQ(e.kind(), IndexError::Kind::kIo);
  }
  try {
    save_index(InvertedIndex{}, "/nonexistent/dir/index.cndx");
    FAIL();
  } catch (const IndexError& e) {
    EXPECT_EQ(e.kind(), IndexError::Kind::kIo);
  }
}

}  // namespace
}  // namespace condensedly::search
