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

#include "condensedly/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace condensedly {
namespace fs = std::filesystem;

namespace {

void dump_into(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::object: {
      out.push_back('{');
      bool first = true;
      // nlohmann's default object type is an ordered std::map.
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        out += Json(it.key()).dump();
        out.push_back(':');
        dump_into(it.value(), out);
      }
      out.push_back('}');
      break;
    }
    case Json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const Json& e : v) {
        if (!first) out.push_back(',');
        first = false;
        dump_into(e, out);
      }
      out.push_back(']');
      break;
    }
    case Json::value_t::number_float: {
      char buf[64];
      double d = v.get<double>();
      if (d == 0.0) d = 0.0;  // no "-0.000000"
      std::snprintf(buf, sizeof buf, "%.6f", d);
      out += buf;
      break;
    }
    default:
      out += v.dump(-1, ' ', false, Json::error_handler_t::replace);
  }
}

Json keywords_json(const KeywordSet& keywords) {
  Json arr = Json::array();
  for (const Keyword& k : keywords) arr.push_back(k.stem);
  return arr;
}

[[noreturn]] void invalid(const std::string& message) {
  throw DocumentError(DocumentError::Kind::kInvalid, message);
}

}  // namespace

std::string canonical_dump(const Json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

Json document_to_json(const Document& doc) {
  Json sentences = Json::array();
  for (const AbstractSentence& s : doc.abstract_sentences) {
    sentences.push_back({{"index", s.index},
                         {"keywords", keywords_json(s.keywords)},
                         {"text", s.text}});
  }
  Json sections = Json::array();
  for (const Section& sec : doc.sections) {
    Json paragraphs = Json::array();
    for (const Paragraph& p : sec.paragraphs) {
      Json tokens = Json::array();
      for (const Token& t : p.tokens) {
        tokens.push_back({{"end", t.end}, {"start", t.start}, {"surface", t.surface}});
      }
      paragraphs.push_back({{"keywords", keywords_json(p.keywords)},
                            {"paragraph_id", p.paragraph_id},
                            {"text", p.text},
                            {"tokens", std::move(tokens)}});
    }
    sections.push_back({{"paragraphs", std::move(paragraphs)},
                        {"section_id", sec.section_id},
                        {"title", sec.title}});
  }
  return {{"abstract_sentences", std::move(sentences)},
          {"doc_id", doc.doc_id},
          {"sections", std::move(sections)},
          {"title", doc.title}};
}

Document document_from_json(const Json& value) {
  try {
    DocumentBuilder builder(value.at("doc_id").get<std::string>());
    builder.title(value.at("title").get<std::string>());
    for (const Json& s : value.at("abstract_sentences")) {
      builder.abstract_sentence(s.at("text").get<std::string>());
    }
    for (const Json& sec : value.at("sections")) {
      builder.section(sec.at("title").get<std::string>());
      for (const Json& p : sec.at("paragraphs")) {
        builder.paragraph(p.at("text").get<std::string>());
      }
    }
    Document doc = std::move(builder).build();

    if (doc.abstract_sentences.size() != value.at("abstract_sentences").size() ||
        doc.sections.size() != value.at("sections").size()) {
      invalid(doc.doc_id + ": stored structure does not match its text");
    }
    for (std::size_t si = 0; si < doc.sections.size(); ++si) {
      const Json& paragraphs = value["sections"][si].at("paragraphs");
      if (paragraphs.size() != doc.sections[si].paragraphs.size()) {
        invalid(doc.doc_id + ": stored paragraphs do not match their text");
      }
      for (std::size_t pi = 0; pi < paragraphs.size(); ++pi) {
        if (paragraphs[pi].at("paragraph_id").get<std::string>() !=
            doc.sections[si].paragraphs[pi].paragraph_id) {
          invalid(doc.doc_id + ": paragraph id out of sequence");
        }
      }
    }
    return doc;
  } catch (const Json::exception& e) {
    invalid(std::string("bad document JSON: ") + e.what());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DocumentError(DocumentError::Kind::kIo,
                        "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DocumentError(DocumentError::Kind::kIo,
                        "cannot write " + path.string());
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw DocumentError(DocumentError::Kind::kIo,
                        "short write to " + path.string());
  }
}

Document load_document_file(const fs::path& path) {
  std::string bytes = read_file(path);
  std::string ext = ascii_lower(path.extension().string());
  std::string stem = path.stem().string();
  if (ext == ".xml" || ext == ".nxml") return parse_jats(bytes, stem);
  if (ext == ".txt") return parse_plain_text(bytes, stem);
  if (ext == ".json") {
    Json value = Json::parse(bytes, nullptr, false);
    if (value.is_discarded()) invalid(path.string() + ": not valid JSON");
    return document_from_json(value);
  }
  invalid(path.string() + ": unsupported file type");
}

std::string corpus_file_name(std::string_view doc_id) {
  std::string name;
  for (char c : doc_id) {
    bool safe = is_word_byte(c) || c == '-' || c == '_' || c == '.';
    name.push_back(safe && static_cast<unsigned char>(c) < 0x80 ? c : '_');
  }
  return name + ".json";
}

void save_document(const Document& doc, const fs::path& dir) {
  write_file(dir / corpus_file_name(doc.doc_id),
             canonical_dump(document_to_json(doc)) + "\n");
}

std::vector<Document> load_corpus(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw DocumentError(DocumentError::Kind::kIo,
                        dir.string() + " is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<Document> docs;
  std::set<std::string> seen;
  for (const fs::path& f : files) {
    Document doc = load_document_file(f);
    if (!seen.insert(doc.doc_id).second) {
      invalid("duplicate doc_id " + doc.doc_id + " in " + f.string());
    }
    docs.push_back(std::move(doc));
  }
  std::sort(docs.begin(), docs.end(),
            [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });
  return docs;
}

}  // namespace condensedly
