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

// Command-line driver. Exit status: 0 success, 1 user error (bad input,
// missing files, unusable arguments), 2 internal error.

#include <csignal>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "condensedly/corpus.hpp"
#include "condensedly/document.hpp"
#include "condensedly/eval.hpp"
#include "condensedly/index.hpp"
#include "condensedly/ner.hpp"
#include "condensedly/query.hpp"
#include "condensedly/ranking.hpp"
#include "condensedly/service.hpp"
#include "condensedly/synth.hpp"
#include "condensedly/text.hpp"

namespace fs = std::filesystem;
using namespace condensedly;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitInternal = 2;

class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_dir(const fs::path& dir, const char* what) {
  if (!fs::is_directory(dir)) throw UserError(std::string(what) + " " + dir.string() + " is not a directory");
}

void require_file(const fs::path& file, const char* what) {
  if (!fs::is_regular_file(file)) throw UserError(std::string(what) + " " + file.string() + " does not exist");
}

bool is_source_file(const fs::path& p) {
  const std::string ext = ascii_lower(p.extension().string());
  return ext == ".xml" || ext == ".nxml" || ext == ".txt";
}

int cmd_ingest(const fs::path& xml_dir, const fs::path& corpus_dir) {
  require_dir(xml_dir, "input");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(xml_dir)) {
    if (entry.is_regular_file() && is_source_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::error_code ec;
  fs::create_directories(corpus_dir, ec);
  if (ec) throw UserError("cannot create " + corpus_dir.string() + ": " + ec.message());

  std::set<std::string> seen;
  std::size_t parsed = 0;
  for (const fs::path& file : files) {
    try {
      Document doc = load_document_file(file);
      if (!seen.insert(doc.doc_id).second) {
        std::cerr << "warning: " << file.string() << ": duplicate doc_id " << doc.doc_id
                  << ", skipped\n";
        continue;
      }
      save_document(doc, corpus_dir);
      ++parsed;
    } catch (const DocumentError& e) {
      if (e.kind() == DocumentError::Kind::kIo && fs::exists(file)) throw;
      std::cerr << "warning: " << file.string() << ": " << e.what() << "\n";
    }
  }
  std::cout << "ingested " << parsed << " of " << files.size() << " documents\n";
  if (parsed == 0) throw UserError("no documents parsed from " + xml_dir.string());
  return kExitOk;
}

int cmd_index(const fs::path& corpus_dir, const fs::path& index_path) {
  require_dir(corpus_dir, "corpus");
  auto docs = load_corpus(corpus_dir);
  auto index = search::InvertedIndex::build(docs);
  search::save_index(index, index_path);
  std::cout << "doc_count " << index.doc_count() << " term_count " << index.term_count() << "\n";
  return kExitOk;
}

int cmd_condense(const std::string& target, const std::optional<fs::path>& corpus_dir) {
  std::optional<Document> doc;
  if (fs::is_regular_file(target)) {
    doc = load_document_file(target);
  } else {
    if (!corpus_dir) throw UserError(target + " is not a file and no --corpus was given");
    require_dir(*corpus_dir, "corpus");
    const fs::path file = *corpus_dir / corpus_file_name(target);
    if (!fs::is_regular_file(file)) throw UserError("no document " + target + " in " + corpus_dir->string());
    doc = load_document_file(file);
    if (doc->doc_id != target) throw UserError("no document " + target + " in " + corpus_dir->string());
  }
  std::cout << canonical_dump(ranking::condensed_to_json(ranking::condense(*doc))) << "\n";
  return kExitOk;
}

int cmd_eval(const fs::path& labels_path, const fs::path& corpus_dir) {
  require_file(labels_path, "labels file");
  require_dir(corpus_dir, "corpus");
  auto labels = eval::parse_labels_tsv(read_file(labels_path));
  auto docs = load_corpus(corpus_dir);
  std::cout << canonical_dump(eval::report_to_json(eval::io_by_level(labels, docs))) << "\n";
  return kExitOk;
}

int cmd_rouge(const fs::path& candidate, const fs::path& reference, int n) {
  require_file(candidate, "candidate");
  require_file(reference, "reference");
  auto score = eval::rouge_n(read_file(candidate), read_file(reference), n);
  std::cout << canonical_dump(eval::rouge_to_json(score)) << "\n";
  return kExitOk;
}

int cmd_serve(const fs::path& corpus_dir, const fs::path& index_path,
              const std::optional<fs::path>& lexicon_dir, const std::optional<fs::path>& static_dir,
              const std::string& host, int port) {
  require_dir(corpus_dir, "corpus");
  require_file(index_path, "index");
  if (lexicon_dir) require_dir(*lexicon_dir, "lexicon directory");
  if (static_dir) require_dir(*static_dir, "static directory");

  auto snapshot = std::make_shared<const service::CorpusSnapshot>(
      service::CorpusSnapshot::load(corpus_dir, index_path, lexicon_dir));

  // Block the stop signals before any worker thread exists so that only
  // sigwait below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::Server server(snapshot, static_dir);
  int bound;
  try {
    bound = server.bind(host, port);
  } catch (const std::runtime_error& e) {
    throw UserError(e.what());
  }
  std::thread worker([&server] { server.run(); });
  server.wait_until_ready();
  std::cout << "listening on http://" << host << ":" << bound << " (" << snapshot->doc_count()
            << " documents)" << std::endl;

  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  worker.join();
  return kExitOk;
}

int cmd_gen_fixtures(std::uint64_t seed, const fs::path& out, std::size_t docs) {
  auto corpus = synth::monotone_corpus(seed, docs);
  synth::write_labeled_corpus(corpus, out);
  std::cout << "wrote " << corpus.docs.size() << " documents and " << corpus.labels.size()
            << " labels to " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condensed-text reader for full-text articles"};
  app.require_subcommand(0, 1);
  bool print_stopwords = false;
  app.add_flag("--stopwords", print_stopwords, "Print the embedded stopword list and exit");

  std::string in_dir, out_dir, index_file, target, labels, cand, ref, host = "127.0.0.1";
  std::optional<std::string> corpus_opt, lexicons, static_dir;
  std::string corpus;
  int n = 1;
  int port = 8080;
  std::uint64_t seed = 42;
  std::size_t gen_docs = 40;

  auto* ingest = app.add_subcommand("ingest", "Parse article files into a corpus directory");
  ingest->add_option("xml_dir", in_dir, "Directory of .xml/.nxml/.txt files")->required();
  ingest->add_option("corpus_dir", out_dir, "Output corpus directory")->required();

  auto* index = app.add_subcommand("index", "Build the search index of a corpus");
  index->add_option("corpus_dir", in_dir, "Corpus directory")->required();
  index->add_option("index_file", index_file, "Index file to write")->required();

  auto* condense = app.add_subcommand("condense", "Print the condensed text of one document");
  condense->add_option("doc", target, "Document id or file path")->required();
  condense->add_option("--corpus", corpus_opt, "Corpus directory");

  auto* eval_cmd = app.add_subcommand("eval", "Correlate IO with importance labels");
  eval_cmd->add_option("--labels", labels, "Labels TSV")->required();
  eval_cmd->add_option("--corpus", corpus, "Corpus directory")->required();

  auto* rouge = app.add_subcommand("rouge", "ROUGE-N of a candidate against a reference");
  rouge->add_option("candidate", cand, "Candidate text file")->required();
  rouge->add_option("reference", ref, "Reference text file")->required();
  rouge->add_option("-n", n, "N-gram order")->check(CLI::PositiveNumber);

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--corpus", corpus, "Corpus directory")->required();
  serve->add_option("--index", index_file, "Index file")->required();
  serve->add_option("--lexicons", lexicons, "Lexicon directory");
  serve->add_option("--static", static_dir, "Web UI directory served under /");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port (0 picks a free port)")->check(CLI::Range(0, 65535));

  auto* gen = app.add_subcommand("gen-fixtures", "Write the seeded synthetic labeled corpus");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_option("--docs", gen_docs, "Number of documents")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUser;
  }

  auto opt_path = [](const std::optional<std::string>& s) -> std::optional<fs::path> {
    if (!s) return std::nullopt;
    return fs::path(*s);
  };

  try {
    if (print_stopwords) {
      for (std::string_view w : stopwords()) std::cout << w << "\n";
      return kExitOk;
    }
    if (ingest->parsed()) return cmd_ingest(in_dir, out_dir);
    if (index->parsed()) return cmd_index(in_dir, index_file);
    if (condense->parsed()) return cmd_condense(target, opt_path(corpus_opt));
    if (eval_cmd->parsed()) return cmd_eval(labels, corpus);
    if (rouge->parsed()) return cmd_rouge(cand, ref, n);
    if (serve->parsed()) {
      return cmd_serve(corpus, index_file, opt_path(lexicons), opt_path(static_dir), host, port);
    }
    if (gen->parsed()) return cmd_gen_fixtures(seed, out_dir, gen_docs);
    std::cerr << app.help();
    return kExitUser;
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const search::IndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const eval::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const ner::LexiconError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const service::SnapshotError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
