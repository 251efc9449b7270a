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

#include "condensedly/index.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <system_error>
#include <utility>

namespace condensedly::search {
namespace fs = std::filesystem;

namespace {

using DocSet = std::vector<std::uint32_t>;  // sorted positions

DocSet intersect(const DocSet& a, const DocSet& b) {
  DocSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

DocSet unite(const DocSet& a, const DocSet& b) {
  DocSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

DocSet subtract(const DocSet& a, const DocSet& b) {
  DocSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void flatten_and(const Query& q, std::vector<const Query*>& out) {
  if (q.kind == Query::Kind::kAnd) {
    flatten_and(q.children[0], out);
    flatten_and(q.children[1], out);
  } else {
    out.push_back(&q);
  }
}

// Returns the documents matching `q`, restricted to `universe` when given.
// A null universe is only legal for positive expressions.
DocSet evaluate(const Query& q, const InvertedIndex& index, const DocSet* universe) {
  switch (q.kind) {
    case Query::Kind::kTerm: {
      DocSet docs;
      if (const auto* list = index.postings(q.value)) {
        for (const Posting& p : *list) docs.push_back(p.doc);
      }
      return universe ? intersect(docs, *universe) : docs;
    }
    case Query::Kind::kPmid: {
      DocSet docs;
      if (auto pos = index.find_doc(q.value)) docs.push_back(*pos);
      return universe ? intersect(docs, *universe) : docs;
    }
    case Query::Kind::kNot: {
      if (!universe) throw std::logic_error("negation evaluated without a universe");
      return subtract(*universe, evaluate(q.children[0], index, universe));
    }
    case Query::Kind::kOr:
      return unite(evaluate(q.children[0], index, universe),
                   evaluate(q.children[1], index, universe));
    case Query::Kind::kAnd: {
      std::vector<const Query*> conjuncts;
      flatten_and(q, conjuncts);
      std::stable_partition(conjuncts.begin(), conjuncts.end(),
                            [](const Query* c) { return is_positive(*c); });
      std::optional<DocSet> current;
      if (universe) current = *universe;
      for (const Query* c : conjuncts) {
        current = evaluate(*c, index, current ? &*current : nullptr);
        if (current->empty()) break;
      }
      return *current;
    }
  }
  return {};
}

void collect_positive(const Query& q, bool negated, std::set<std::string>& terms,
                      std::set<std::string>& pmids) {
  switch (q.kind) {
    case Query::Kind::kTerm:
      if (!negated) terms.insert(q.value);
      break;
    case Query::Kind::kPmid:
      if (!negated) pmids.insert(q.value);
      break;
    case Query::Kind::kNot:
      collect_positive(q.children[0], !negated, terms, pmids);
      break;
    default:
      for (const Query& c : q.children) collect_positive(c, negated, terms, pmids);
  }
}

// --- binary I/O --------------------------------------------------------

class Writer {
 public:
  void U16(std::uint16_t v) {
    out_.push_back(static_cast<char>(v & 0xff));
    out_.push_back(static_cast<char>(v >> 8));
  }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void Str(std::string_view s) {
    U32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void Raw(std::string_view s) { out_.append(s); }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint16_t U16() {
    Need(2);
    auto v = static_cast<std::uint16_t>(Byte(0) | (Byte(1) << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(Byte(i)) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::string Str() {
    std::uint32_t n = U32();
    Need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::uint32_t Byte(int i) const {
    return static_cast<unsigned char>(in_[pos_ + static_cast<std::size_t>(i)]);
  }
  void Need(std::size_t n) const {
    if (in_.size() - pos_ < n) {
      throw IndexError(IndexError::Kind::kChecksumMismatch, "index file is truncated");
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

constexpr std::string_view kMagic = "CNDX";

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

InvertedIndex InvertedIndex::build(std::span<const Document> docs) {
  std::vector<const Document*> ordered;
  for (const Document& d : docs) ordered.push_back(&d);
  std::sort(ordered.begin(), ordered.end(),
            [](const Document* a, const Document* b) { return a->doc_id < b->doc_id; });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i]->doc_id == ordered[i - 1]->doc_id) {
      throw IndexError(IndexError::Kind::kDuplicateDocId,
                       "duplicate doc_id " + ordered[i]->doc_id);
    }
  }

  InvertedIndex index;
  for (std::size_t pos = 0; pos < ordered.size(); ++pos) {
    const Document& doc = *ordered[pos];
    std::map<std::string, std::uint32_t> tf;
    std::uint32_t length = 0;
    auto add_tokens = [&](const std::vector<Token>& tokens) {
      length += static_cast<std::uint32_t>(tokens.size());
      for (const Token& t : tokens) {
        if (auto stem = normalize_term(t.surface)) ++tf[*stem];
      }
    };
    add_tokens(tokenize(doc.title));
    for (const AbstractSentence& s : doc.abstract_sentences) add_tokens(tokenize(s.text));
    for (const Section& s : doc.sections) {
      for (const Paragraph& p : s.paragraphs) add_tokens(p.tokens);
    }
    index.docs_.push_back({doc.doc_id, doc.title, length});
    for (auto& [term, count] : tf) {
      index.postings_[term].push_back({static_cast<std::uint32_t>(pos), count});
    }
  }
  index.finish();
  return index;
}

InvertedIndex InvertedIndex::from_parts(std::vector<IndexedDoc> docs, PostingMap postings) {
  auto corrupt = [](const std::string& why) {
    return IndexError(IndexError::Kind::kChecksumMismatch, "inconsistent index: " + why);
  };
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (!(docs[i - 1].doc_id < docs[i].doc_id)) throw corrupt("documents out of order");
  }
  for (const auto& [term, list] : postings) {
    if (list.empty()) throw corrupt("empty postings for '" + term + "'");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].doc >= docs.size()) throw corrupt("posting past the document table");
      if (i > 0 && list[i].doc <= list[i - 1].doc) throw corrupt("postings out of order");
      if (list[i].tf == 0) throw corrupt("zero term frequency");
    }
  }
  InvertedIndex index;
  index.docs_ = std::move(docs);
  index.postings_ = std::move(postings);
  index.finish();
  return index;
}

void InvertedIndex::finish() {
  double total = 0.0;
  for (const IndexedDoc& d : docs_) total += d.length;
  avg_doc_length_ = docs_.empty() ? 0.0 : total / static_cast<double>(docs_.size());
}

const std::vector<Posting>* InvertedIndex::postings(std::string_view term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

std::optional<std::uint32_t> InvertedIndex::find_doc(std::string_view doc_id) const {
  auto it = std::lower_bound(docs_.begin(), docs_.end(), doc_id,
                             [](const IndexedDoc& d, std::string_view id) { return d.doc_id < id; });
  if (it == docs_.end() || it->doc_id != doc_id) return std::nullopt;
  return static_cast<std::uint32_t>(it - docs_.begin());
}

double InvertedIndex::bm25(std::string_view term, const Posting& posting) const {
  const auto* list = postings(term);
  if (!list) return 0.0;
  const double n = static_cast<double>(docs_.size());
  const double df = static_cast<double>(list->size());
  const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
  const double tf = posting.tf;
  const double dl = docs_[posting.doc].length;
  const double ratio = avg_doc_length_ > 0.0 ? dl / avg_doc_length_ : 1.0;
  const double norm = kBm25K1 * (1.0 - kBm25B + kBm25B * ratio);
  return idf * tf * (kBm25K1 + 1.0) / (tf + norm);
}

std::vector<SearchHit> execute(const Query& query, const InvertedIndex& index) {
  DocSet matched = evaluate(query, index, nullptr);

  std::set<std::string> terms;
  std::set<std::string> pmids;
  collect_positive(query, false, terms, pmids);

  std::vector<SearchHit> hits;
  hits.reserve(matched.size());
  for (std::uint32_t pos : matched) {
    const IndexedDoc& doc = index.docs()[pos];
    double score = 0.0;
    for (const std::string& t : terms) {
      const auto* list = index.postings(t);
      if (!list) continue;
      auto it = std::lower_bound(list->begin(), list->end(), pos,
                                 [](const Posting& p, std::uint32_t d) { return p.doc < d; });
      if (it != list->end() && it->doc == pos) score += index.bm25(t, *it);
    }
    if (pmids.contains(doc.doc_id)) score += 1.0;
    hits.push_back({doc.doc_id, score, doc.title});
  }
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  return hits;
}

std::string serialize_index(const InvertedIndex& index) {
  Writer w;
  w.Raw(kMagic);
  w.U16(kIndexFormatVersion);
  w.U32(static_cast<std::uint32_t>(index.doc_count()));
  for (const IndexedDoc& d : index.docs()) {
    w.Str(d.doc_id);
    w.Str(d.title);
    w.U32(d.length);
  }
  w.U32(static_cast<std::uint32_t>(index.term_count()));
  for (const auto& [term, list] : index.postings()) {
    w.Str(term);
    w.U32(static_cast<std::uint32_t>(list.size()));
    std::uint32_t prev = 0;
    for (const Posting& p : list) {
      w.U32(p.doc - prev);
      w.U32(p.tf);
      prev = p.doc;
    }
  }
  w.U32(crc_of(w.bytes()));
  return std::move(w.bytes());
}

InvertedIndex deserialize_index(std::string_view bytes) {
  if (bytes.size() < kMagic.size() + 2 + 4) {
    throw IndexError(IndexError::Kind::kChecksumMismatch, "index file is truncated");
  }
  if (bytes.substr(0, kMagic.size()) != kMagic) {
    throw IndexError(IndexError::Kind::kFormatVersionMismatch, "not an index file (bad magic)");
  }
  Reader header(bytes.substr(kMagic.size()));
  std::uint16_t version = header.U16();
  if (version != kIndexFormatVersion) {
    throw IndexError(IndexError::Kind::kFormatVersionMismatch,
                     "index format version " + std::to_string(version) + ", expected " +
                         std::to_string(kIndexFormatVersion));
  }
  std::string_view body = bytes.substr(0, bytes.size() - 4);
  Reader trailer(bytes.substr(bytes.size() - 4));
  if (trailer.U32() != crc_of(body)) {
    throw IndexError(IndexError::Kind::kChecksumMismatch, "index checksum mismatch");
  }

  Reader r(body.substr(kMagic.size() + 2));
  std::vector<IndexedDoc> docs(r.U32());
  for (IndexedDoc& d : docs) {
    d.doc_id = r.Str();
    d.title = r.Str();
    d.length = r.U32();
  }
  PostingMap postings;
  std::uint32_t term_count = r.U32();
  for (std::uint32_t t = 0; t < term_count; ++t) {
    std::string term = r.Str();
    std::vector<Posting> list(r.U32());
    std::uint32_t doc = 0;
    for (Posting& p : list) {
      doc += r.U32();
      p.doc = doc;
      p.tf = r.U32();
    }
    postings.emplace(std::move(term), std::move(list));
  }
  if (!r.done()) {
    throw IndexError(IndexError::Kind::kChecksumMismatch, "trailing bytes in index file");
  }
  return InvertedIndex::from_parts(std::move(docs), std::move(postings));
}

void save_index(const InvertedIndex& index, const fs::path& path) {
  fs::path tmp = path;
  tmp += ".tmp";
  try {
    write_file(tmp, serialize_index(index));
  } catch (const DocumentError& e) {
    throw IndexError(IndexError::Kind::kIo, e.what());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IndexError(IndexError::Kind::kIo, "cannot move index into " + path.string());
  }
}

InvertedIndex load_index(const fs::path& path) {
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const DocumentError& e) {
    throw IndexError(IndexError::Kind::kIo, e.what());
  }
  return deserialize_index(bytes);
}

Json hits_to_json(std::span<const SearchHit> hits) {
  Json arr = Json::array();
  for (const SearchHit& h : hits) {
    arr.push_back({{"doc_id", h.doc_id}, {"score", h.score}, {"title", h.title}});
  }
  return arr;
}

}  // namespace condensedly::search
