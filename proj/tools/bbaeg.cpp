// Copyright 2026 The BBAEG Authors
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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bbaeg/corpus.hpp"
#include "bbaeg/errors.hpp"
#include "bbaeg/evaluation.hpp"
#include "bbaeg/fixtures.hpp"
#include "bbaeg/remote_backends.hpp"
#include "bbaeg/stub_backends.hpp"

namespace {

namespace fs = std::filesystem;
using namespace bbaeg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBackend = 3;

struct CommonOptions {
  std::string dataset;
  std::string format = "auto";
  std::string backend = "stub";
  std::string endpoint_predict;
  std::string endpoint_propose;
  std::string endpoint_similarity;
  std::string endpoint_recognize;
  std::string lexicon_path;
  std::string gazetteer_path;
  std::string mlm_vocab_path;
  std::string out_dir = "out";
  std::vector<std::string> report_formats = {"json", "csv", "md"};
  int top_k = 10;
  double alpha = 0.75;
  int rotation_window = 2;
  std::uint64_t seed = 0;
  int workers = 1;
  int query_budget = 2000;
  bool skip_stopwords = false;
};

void add_common_options(CLI::App* cmd, CommonOptions* opt) {
  cmd->add_option("--dataset", opt->dataset, "dataset file (csv or jsonl)")->required();
  cmd->add_option("--format", opt->format, "dataset format: csv, jsonl, or auto (by extension)")
      ->check(CLI::IsMember({"csv", "jsonl", "auto"}));
  cmd->add_option("--backend", opt->backend, "model backends: stub or remote")
      ->check(CLI::IsMember({"stub", "remote"}));
  cmd->add_option("--endpoint-predict", opt->endpoint_predict, "victim predict endpoint URL");
  cmd->add_option("--endpoint-propose", opt->endpoint_propose, "masked-token proposer endpoint URL");
  cmd->add_option("--endpoint-similarity", opt->endpoint_similarity, "similarity endpoint URL");
  cmd->add_option("--endpoint-recognize", opt->endpoint_recognize, "entity recognizer endpoint URL");
  cmd->add_option("--lexicon", opt->lexicon_path, "lexicon fixture for the stub victim");
  cmd->add_option("--gazetteer", opt->gazetteer_path, "gazetteer/synonym fixture file");
  cmd->add_option("--mlm-vocab", opt->mlm_vocab_path, "proposal vocabulary for the stub proposer");
  cmd->add_option("--k", opt->top_k, "top-K masked-LM proposals per position");
  cmd->add_option("--alpha", opt->alpha, "similarity threshold for masked-LM replacements");
  cmd->add_option("--p", opt->rotation_window, "spelling-noise rotation window");
  cmd->add_option("--seed", opt->seed, "base random seed");
  cmd->add_option("--workers", opt->workers, "parallel attack workers");
  cmd->add_option("--query-budget", opt->query_budget, "max victim queries per document");
  cmd->add_option("--out", opt->out_dir, "output directory");
  cmd->add_option("--report", opt->report_formats, "report formats to write: json, csv, md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  cmd->add_flag("--skip-stopwords", opt->skip_stopwords, "exclude stopwords from ranking");
  // precedence: command-line flags override the config file, the config file
  // overrides built-in defaults
  cmd->set_config("--config", "", "key=value config file")->envname("BBAEG_CONFIG");
}

/// Owns whichever backend implementations the run selected.
struct BackendBundle {
  std::unique_ptr<VictimClassifier> victim;
  std::unique_ptr<MaskedTokenProposer> proposer;
  std::unique_ptr<EntityRecognizer> recognizer;
  std::unique_ptr<SynonymProvider> synonyms;
  std::unique_ptr<SimilarityScorer> scorer;
  std::unique_ptr<PosTagger> tagger;

  BackendSet set() const {
    return {victim.get(), proposer.get(), recognizer.get(),
            synonyms.get(), scorer.get(),  tagger.get()};
  }
};

BackendBundle build_backends(const CommonOptions& opt) {
  const Lexicon lexicon =
      opt.lexicon_path.empty() ? synth_lexicon() : Lexicon::load(opt.lexicon_path);
  const OntologyFixture ontology =
      opt.gazetteer_path.empty() ? synth_ontology() : OntologyFixture::load(opt.gazetteer_path);
  const MlmVocab vocab =
      opt.mlm_vocab_path.empty() ? synth_mlm_vocab() : MlmVocab::load(opt.mlm_vocab_path);

  BackendBundle b;
  b.synonyms = std::make_unique<FixtureSynonymProvider>(ontology);
  b.tagger = std::make_unique<SuffixPosTagger>();

  if (opt.backend == "remote") {
    if (opt.endpoint_predict.empty()) {
      throw UsageError("--backend remote requires --endpoint-predict");
    }
    b.victim = std::make_unique<RemoteVictim>(opt.endpoint_predict);
    // capabilities without an endpoint fall back to their stubs
    if (!opt.endpoint_propose.empty()) {
      b.proposer = std::make_unique<RemoteProposer>(opt.endpoint_propose);
    }
    if (!opt.endpoint_similarity.empty()) {
      b.scorer = std::make_unique<RemoteScorer>(opt.endpoint_similarity);
    }
    if (!opt.endpoint_recognize.empty()) {
      b.recognizer = std::make_unique<RemoteRecognizer>(opt.endpoint_recognize);
    }
  } else {
    b.victim = std::make_unique<KeywordClassifier>(lexicon);
  }
  if (!b.proposer) b.proposer = std::make_unique<StaticMaskedProposer>(vocab);
  if (!b.scorer) b.scorer = std::make_unique<TokenOverlapScorer>();
  if (!b.recognizer) {
    b.recognizer = std::make_unique<StaticRecognizer>(StaticRecognizer::from_fixture(ontology));
  }
  return b;
}

AttackConfig build_attack_config(const CommonOptions& opt) {
  AttackConfig config;
  config.top_k = opt.top_k;
  config.alpha = opt.alpha;
  config.noise.rotation_window = opt.rotation_window;
  config.query_budget = opt.query_budget;
  config.seed = opt.seed;
  config.skip_stopwords = opt.skip_stopwords;
  config.validate();
  return config;
}

std::vector<LabeledExample> load_examples(const CommonOptions& opt) {
  std::string format = opt.format;
  if (format == "auto") {
    format = opt.dataset.size() >= 6 && opt.dataset.substr(opt.dataset.size() - 6) == ".jsonl"
                 ? "jsonl"
                 : "csv";
  }
  const LoadResult loaded = load_dataset(opt.dataset, *dataset_format_from_string(format));
  for (const RejectedRow& reject : loaded.rejects) {
    std::cerr << "warning: rejected row " << reject.row << ": " << reject.reason << "\n";
  }
  if (loaded.examples.empty()) throw UsageError("dataset contains no usable examples");
  return loaded.examples;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << content;
}

void write_reports(const fs::path& dir, const std::string& stem, const EvalReport& report,
                   const std::vector<std::string>& formats) {
  const std::set<std::string> wanted(formats.begin(), formats.end());
  if (wanted.count("json") > 0) {
    write_file(dir / (stem + ".json"), render_report(report, ReportFormat::json));
  }
  if (wanted.count("csv") > 0) {
    write_file(dir / (stem + ".csv"), render_report(report, ReportFormat::csv));
  }
  if (wanted.count("md") > 0) {
    write_file(dir / (stem + ".md"), render_report(report, ReportFormat::markdown));
  }
}

int run_attack(const CommonOptions& opt) {
  const std::vector<LabeledExample> dataset = load_examples(opt);
  const BackendBundle bundle = build_backends(opt);
  const AttackConfig config = build_attack_config(opt);

  EvalOptions eval_options;
  eval_options.workers = opt.workers;
  std::vector<std::string> trace_lines;
  eval_options.trace_sink = &trace_lines;

  const EvalReport report = evaluate(dataset, bundle.set(), config, eval_options);

  fs::create_directories(opt.out_dir);
  write_reports(opt.out_dir, "report", report, opt.report_formats);
  std::string trace;
  for (const std::string& line : trace_lines) {
    trace += line;
    trace += '\n';
  }
  write_file(fs::path(opt.out_dir) / "trace.jsonl", trace);

  std::cout << "attacked " << report.dataset_size << " documents: " << report.successes
            << " flipped, " << report.skipped << " skipped, " << report.errors << " errors\n"
            << "before " << report.before_accuracy << " -> after " << report.after_accuracy
            << " (drop " << report.accuracy_drop << ")\n";
  if (report.errors > 0) {
    std::cerr << "error: " << report.errors << " documents failed on backend errors"
              << " (report flagged)\n";
    return kExitBackend;
  }
  return kExitOk;
}

struct NamedSieve {
  const char* flag;
  const char* label;
  const char* slug;
  SieveSet disabled;
};

const NamedSieve kSieveNames[] = {
    {"s1", "w/o synonym replacement (S1)", "wo_s1", {true, false, false, false}},
    {"s2-1", "w/o spelling noise N1 (S2-1)", "wo_s2_1", {false, true, false, false}},
    {"s2-2", "w/o spelling noise N2 (S2-2)", "wo_s2_2", {false, false, true, false}},
    {"s3", "w/o number replacement (S3)", "wo_s3", {false, false, false, true}},
};

int run_ablate(const CommonOptions& opt, const std::vector<std::string>& disables) {
  std::vector<std::string> selected = disables;
  if (selected.empty()) {
    for (const NamedSieve& s : kSieveNames) selected.push_back(s.flag);
  }

  std::set<std::string> distinct(selected.begin(), selected.end());
  if (distinct.size() == std::size(kSieveNames)) {
    throw UsageError("disabling every sieve leaves nothing enabled");
  }

  std::vector<AblationVariant> variants;
  std::vector<std::string> slugs;
  for (const std::string& flag : selected) {
    const NamedSieve* named = nullptr;
    for (const NamedSieve& s : kSieveNames) {
      if (flag == s.flag) named = &s;
    }
    if (named == nullptr) throw UsageError("unknown sieve name: " + flag);
    variants.push_back({named->label, named->disabled});
    slugs.push_back(named->slug);
  }

  const std::vector<LabeledExample> dataset = load_examples(opt);
  const BackendBundle bundle = build_backends(opt);
  const AttackConfig config = build_attack_config(opt);

  EvalOptions eval_options;
  eval_options.workers = opt.workers;

  const std::vector<EvalReport> reports =
      ablate(dataset, bundle.set(), config, variants, eval_options);

  fs::create_directories(opt.out_dir);
  write_reports(opt.out_dir, "report_full", reports.front(), opt.report_formats);
  for (std::size_t i = 0; i < slugs.size(); ++i) {
    write_reports(opt.out_dir, "report_" + slugs[i], reports[i + 1], opt.report_formats);
  }
  write_file(fs::path(opt.out_dir) / "ablation.md", render_ablation_markdown(reports));

  int errors = 0;
  std::cout << render_ablation_markdown(reports);
  for (const EvalReport& r : reports) errors += r.errors;
  if (errors > 0) {
    std::cerr << "error: " << errors << " documents failed on backend errors\n";
    return kExitBackend;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bbaeg: sieve-cascade adversarial attacks on text classifiers"};
  app.require_subcommand(1);

  CommonOptions attack_opt;
  CLI::App* attack_cmd =
      app.add_subcommand("attack", "attack every dataset document and write reports");
  add_common_options(attack_cmd, &attack_opt);

  CommonOptions ablate_opt;
  std::vector<std::string> disables;
  CLI::App* ablate_cmd =
      app.add_subcommand("ablate", "compare sieve ablations against the full configuration");
  add_common_options(ablate_cmd, &ablate_opt);
  ablate_cmd
      ->add_option("--disable", disables,
                   "sieve to disable in a variant (repeatable): s1, s2-1, s2-2, s3; "
                   "default runs all four single-sieve ablations")
      ->check(CLI::IsMember({"s1", "s2-1", "s2-2", "s3"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (attack_cmd->parsed()) return run_attack(attack_opt);
    if (ablate_cmd->parsed()) return run_ablate(ablate_opt, disables);
    return kExitUsage;
  } catch (const BackendUnavailableError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const ProtocolError& e) {
    std::cerr << "backend protocol error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
