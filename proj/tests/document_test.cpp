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

#include "condensedly/corpus.hpp"
#include "condensedly/document.hpp"
#include "condensedly/synth.hpp"
#include "testing.hpp"

namespace condensedly {
namespace {

using testing::data_dir;

Document load_jats(const std::string& name) {
  return parse_jats(read_file(data_dir() / "jats" / name));
}

DocumentError::Kind error_kind(const std::string& name) {
  try {
    load_jats(name);
  } catch (const DocumentError& e) {
    return e.kind();
  }
  ADD_FAILURE() << name << " parsed without error";
  return DocumentError::Kind::kInvalid;
}

TEST(Jats, MinimalFixture) {
  Document doc = load_jats("minimal.xml");
  EXPECT_EQ(doc.doc_id, "10001");
  EXPECT_EQ(doc.title, "Minimal kinase article");
  ASSERT_EQ(doc.abstract_sentences.size(), 2u);
  EXPECT_EQ(doc.abstract_sentences[0].text, "Kinase signals spread through cells.");
  EXPECT_EQ(doc.abstract_sentences[1].index, 1u);
  ASSERT_EQ(doc.sections.size(), 1u);
  EXPECT_EQ(doc.sections[0].title, "Methods");
  ASSERT_EQ(doc.sections[0].paragraphs.size(), 2u);
  EXPECT_EQ(doc.sections[0].paragraphs[1].paragraph_id, "0:1");
  EXPECT_EQ(doc.sections[0].paragraphs[1].text,
            "Kinase activity was measured with a luminescent assay.");
}

TEST(Jats, NestedSectionsAreFlattened) {
  Document doc = load_jats("nested.xml");
  ASSERT_EQ(doc.sections.size(), 2u);
  EXPECT_EQ(doc.sections[0].title, "Results");
  EXPECT_EQ(doc.sections[1].title, "Results / Subanalysis");
  EXPECT_EQ(doc.sections[1].section_id, 1u);
  EXPECT_EQ(doc.sections[1].paragraphs[0].paragraph_id, "1:0");
}

TEST(Jats, CaptionsReferencesAndMathExcluded) {
  Document doc = load_jats("excluded.xml");
  ASSERT_EQ(doc.abstract_sentences.size(), 2u);
  EXPECT_EQ(doc.abstract_sentences[0].text, "Gene expression was profiled in mice.");
  EXPECT_EQ(doc.abstract_sentences[1].text, "Levels rose e.g. after treatment.");
  ASSERT_EQ(doc.sections.size(), 2u);
  EXPECT_EQ(doc.sections[0].title, "");
  EXPECT_EQ(doc.sections[0].paragraphs[0].text, "Opening paragraph outside any section.");
  const std::string& results = doc.sections[1].paragraphs.at(0).text;
  EXPECT_NE(results.find("[math]"), std::string::npos) << results;
  ASSERT_EQ(doc.sections[1].paragraphs.size(), 1u);
  const std::string json = canonical_dump(document_to_json(doc));
  EXPECT_EQ(json.find("Caption text"), std::string::npos);
  EXPECT_EQ(json.find("Table caption"), std::string::npos);
  EXPECT_EQ(json.find("Figure 1"), std::string::npos);
  EXPECT_EQ(json.find("Reference text"), std::string::npos);
  EXPECT_EQ(json.find("Graphical"), std::string::npos);
}

TEST(Jats, Errors) {
  EXPECT_EQ(error_kind("noabstract.xml"), DocumentError::Kind::kMissingAbstract);
  EXPECT_EQ(error_kind("nobody.xml"), DocumentError::Kind::kEmptyBody);
  EXPECT_EQ(error_kind("malformed.xml"), DocumentError::Kind::kMalformedXml);
  EXPECT_THROW(parse_jats("<html><body/></html>", "x"), DocumentError);
  EXPECT_THROW(parse_jats(""), DocumentError);
}

TEST(Jats, FallbackIdWithoutPmid) {
  const std::string xml =
      "<article><front><article-meta><abstract><p>Short abstract.</p></abstract>"
      "</article-meta></front><body><p>Body text.</p></body></article>";
  EXPECT_EQ(parse_jats(xml, "file-7").doc_id, "file-7");
  try {
    parse_jats(xml);
    FAIL() << "expected an error without any id";
  } catch (const DocumentError& e) {
    EXPECT_EQ(e.kind(), DocumentError::Kind::kInvalid);
  }
}

TEST(Jats, DeterministicSerialization) {
  const std::string bytes = read_file(data_dir() / "jats" / "excluded.xml");
  EXPECT_EQ(canonical_dump(document_to_json(parse_jats(bytes))),
            canonical_dump(document_to_json(parse_jats(bytes))));
}

TEST(PlainText, BlocksAndHeaders) {
  Document doc = parse_plain_text(
      "# Title here\nFirst sentence. Second sentence.\n\n## Intro\nPara one.\n\n"
      "Para two without header.\n\n## Lonely header\n\nPara three.\n",
      "p1");
  EXPECT_EQ(doc.title, "Title here");
  EXPECT_EQ(doc.abstract_sentences.size(), 2u);
  ASSERT_EQ(doc.sections.size(), 3u);
  EXPECT_EQ(doc.sections[0].title, "Intro");
  EXPECT_EQ(doc.sections[1].title, "");
  EXPECT_EQ(doc.sections[2].title, "Lonely header");
  EXPECT_EQ(doc.sections[2].paragraphs[0].text, "Para three.");
}

TEST(PlainText, StandaloneTitleBlock) {
  Document doc = parse_plain_text("# Kinases\n\nKinase signals spread.\n\n## Results\nThey do.\n", "p2");
  EXPECT_EQ(doc.title, "Kinases");
  ASSERT_EQ(doc.abstract_sentences.size(), 1u);
  EXPECT_EQ(doc.abstract_sentences[0].text, "Kinase signals spread.");
  ASSERT_EQ(doc.sections.size(), 1u);
  EXPECT_EQ(doc.sections[0].title, "Results");
}

TEST(PlainText, Errors) {
  EXPECT_THROW(parse_plain_text("", "x"), DocumentError);
  EXPECT_THROW(parse_plain_text("Only an abstract.", "x"), DocumentError);
}

TEST(Builder, DerivedFieldsAgree) {
  Document doc = testing::make_doc("d", {"Genes act."}, {{"A", {"  Genes   act\n here. ", ""}}, {"Empty", {}}});
  ASSERT_EQ(doc.sections.size(), 1u);
  const Paragraph& p = doc.sections[0].paragraphs[0];
  EXPECT_EQ(p.text, "Genes act here.");
  EXPECT_EQ(p.keywords, keywords_of(p.tokens));
  EXPECT_EQ(doc.abstract_sentences[0].keywords, extract_keywords("Genes act."));
  EXPECT_EQ(doc.find_paragraph("0:0"), &p);
  EXPECT_EQ(doc.find_paragraph("0:1"), nullptr);
  EXPECT_EQ(doc.find_paragraph("junk"), nullptr);
}

TEST(Json, RoundTripOnRandomDocuments) {
  synth::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Document doc = synth::random_document(rng, "R" + std::to_string(i));
    const std::string first = canonical_dump(document_to_json(doc));
    const std::string second = canonical_dump(document_to_json(document_from_json(Json::parse(first))));
    EXPECT_EQ(first, second);
    for (const Section& s : doc.sections) {
      for (const Paragraph& p : s.paragraphs) {
        std::string joined;
        for (const Token& t : p.tokens) joined += (joined.empty() ? "" : " ") + t.surface;
        auto again = tokenize(joined);
        ASSERT_EQ(again.size(), p.tokens.size());
        for (std::size_t k = 0; k < again.size(); ++k) EXPECT_EQ(again[k].surface, p.tokens[k].surface);
      }
    }
  }
}

TEST(Json, CanonicalFloatsAndKeyOrder) {
  Json v = {{"b", 0.5}, {"a", 1}, {"c", -0.0}, {"d", {1.0 / 3.0}}};
  EXPECT_EQ(canonical_dump(v), R"({"a":1,"b":0.500000,"c":0.000000,"d":[0.333333]})");
}

TEST(Corpus, SaveAndLoad) {
  testing::TempDir dir;
  Document a = load_jats("minimal.xml");
  Document b = load_jats("nested.xml");
  save_document(b, dir.path());
  save_document(a, dir.path());
  auto docs = load_corpus(dir.path());
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].doc_id, "10001");
  EXPECT_EQ(canonical_dump(document_to_json(docs[1])), canonical_dump(document_to_json(b)));
  EXPECT_THROW(load_corpus(dir.path() / "missing"), DocumentError);
}

}  // namespace
}  // namespace condensedly
