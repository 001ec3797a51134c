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

#include "bbaeg/evaluation.hpp"

#include <atomic>
#include <cstdio>
#include <thread>

#include <json.hpp>

#include "bbaeg/errors.hpp"

namespace bbaeg {

namespace {

using njson = nlohmann::ordered_json;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

njson sieves_to_json(const SieveSet& s) {
  return njson{{"synonyms_and_mlm", s.synonyms_and_mlm},
               {"rotation", s.rotation},
               {"insertion", s.insertion},
               {"numerals", s.numerals}};
}

SieveSet sieves_from_json(const njson& j) {
  SieveSet s;
  s.synonyms_and_mlm = j.at("synonyms_and_mlm").get<bool>();
  s.rotation = j.at("rotation").get<bool>();
  s.insertion = j.at("insertion").get<bool>();
  s.numerals = j.at("numerals").get<bool>();
  return s;
}

njson config_to_json(const AttackConfig& c) {
  return njson{{"top_k", c.top_k},
               {"alpha", c.alpha},
               {"rotation_window", c.noise.rotation_window},
               {"symbol_alphabet", c.noise.symbol_alphabet},
               {"max_variants_per_token", c.noise.max_variants_per_token},
               {"sieves", sieves_to_json(c.sieves)},
               {"query_budget", c.query_budget},
               {"seed", c.seed},
               {"skip_stopwords", c.skip_stopwords}};
}

AttackConfig config_from_json(const njson& j) {
  AttackConfig c;
  c.top_k = j.at("top_k").get<int>();
  c.alpha = j.at("alpha").get<double>();
  c.noise.rotation_window = j.at("rotation_window").get<int>();
  c.noise.symbol_alphabet = j.at("symbol_alphabet").get<std::vector<std::string>>();
  c.noise.max_variants_per_token = j.at("max_variants_per_token").get<int>();
  c.sieves = sieves_from_json(j.at("sieves"));
  c.query_budget = j.at("query_budget").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.skip_stopwords = j.at("skip_stopwords").get<bool>();
  return c;
}

njson example_to_json(const ExampleRecord& e) {
  njson j{{"source_id", e.source_id},
          {"label", e.label},
          {"status", to_string(e.status)},
          {"sieve", e.sieve_used ? njson(to_string(*e.sieve_used)) : njson(nullptr)},
          {"queries", e.queries},
          {"perturbed_fraction", e.perturbed_fraction},
          {"similarity", e.similarity},
          {"original_text", e.original_text},
          {"final_text", e.final_text}};
  j["error"] = e.error;
  return j;
}

ExampleRecord example_from_json(const njson& j) {
  ExampleRecord e;
  e.source_id = j.at("source_id").get<std::string>();
  e.label = j.at("label").get<int>();
  e.status = attack_status_from_string(j.at("status").get<std::string>()).value();
  if (!j.at("sieve").is_null()) {
    e.sieve_used = sieve_from_string(j.at("sieve").get<std::string>()).value();
  }
  e.queries = j.at("queries").get<int>();
  e.perturbed_fraction = j.at("perturbed_fraction").get<double>();
  e.similarity = j.at("similarity").get<double>();
  e.original_text = j.at("original_text").get<std::string>();
  e.final_text = j.at("final_text").get<std::string>();
  e.error = j.value("error", "");
  return e;
}

njson report_to_json(const EvalReport& r) {
  njson examples = njson::array();
  for (const ExampleRecord& e : r.examples) examples.push_back(example_to_json(e));
  njson per_sieve = njson::object();
  for (const auto& [sieve, count] : r.per_sieve_successes) per_sieve[sieve] = count;
  return njson{{"variant", r.variant},
               {"dataset_size", r.dataset_size},
               {"before_correct", r.before_correct},
               {"successes", r.successes},
               {"skipped", r.skipped},
               {"errors", r.errors},
               {"before_accuracy", r.before_accuracy},
               {"after_accuracy", r.after_accuracy},
               {"accuracy_drop", r.accuracy_drop},
               {"success_rate", r.success_rate},
               {"mean_perturbed_fraction", r.mean_perturbed_fraction},
               {"mean_similarity", r.mean_similarity},
               {"total_queries", r.total_queries},
               {"per_sieve_successes", per_sieve},
               {"config", config_to_json(r.config)},
               {"workers", r.workers},
               {"examples", examples}};
}

}  // namespace

std::optional<ReportFormat> report_format_from_string(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "md" || name == "markdown") return ReportFormat::markdown;
  return std::nullopt;
}

EvalReport evaluate(const std::vector<LabeledExample>& dataset, const BackendSet& backends,
                    const AttackConfig& config, const EvalOptions& options) {
  if (dataset.empty()) throw UsageError("dataset is empty");
  if (options.workers < 1) throw UsageError("worker count must be at least 1");
  config.validate();

  const int n = static_cast<int>(dataset.size());
  std::vector<ExampleRecord> records(static_cast<std::size_t>(n));
  if (options.trace_sink != nullptr) options.trace_sink->assign(static_cast<std::size_t>(n), "");

  std::atomic<int> next{0};
  auto work = [&]() {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      const LabeledExample& example = dataset[static_cast<std::size_t>(i)];
      ExampleRecord rec;
      rec.source_id = example.source_id;
      rec.label = example.label;
      rec.original_text = example.text;
      try {
        AttackConfig per_doc = config;
        per_doc.seed = config.seed ^ static_cast<std::uint64_t>(i);
        const AttackResult r = attack(tokenize(example.text), example.label, backends, per_doc);
        rec.status = r.status;
        rec.sieve_used = r.sieve_used;
        rec.queries = r.queries_spent;
        rec.perturbed_fraction = r.perturbed_fraction;
        rec.similarity = r.similarity;
        rec.final_text = r.final_text;
        rec.error = r.error_message;
        if (options.trace_sink != nullptr) {
          (*options.trace_sink)[static_cast<std::size_t>(i)] =
              trace_jsonl_line(example.source_id, r);
        }
      } catch (const Error& e) {
        rec.status = AttackStatus::error;
        rec.error = e.what();
        rec.final_text = example.text;
        if (options.trace_sink != nullptr) {
          (*options.trace_sink)[static_cast<std::size_t>(i)] =
              std::string("{\"source_id\":\"") + example.source_id +
              "\",\"status\":\"error\",\"steps\":[]}";
        }
      }
      records[static_cast<std::size_t>(i)] = std::move(rec);
    }
  };

  if (options.workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(options.workers));
    for (int w = 0; w < options.workers; ++w) threads.emplace_back(work);
    for (std::thread& t : threads) t.join();
  }

  EvalReport report;
  report.dataset_size = n;
  report.config = config;
  report.workers = options.workers;
  report.examples = std::move(records);

  double fraction_sum = 0.0;
  double similarity_sum = 0.0;
  for (const ExampleRecord& rec : report.examples) {
    report.total_queries += rec.queries;
    switch (rec.status) {
      case AttackStatus::skipped_misclassified:
        ++report.skipped;
        break;
      case AttackStatus::success:
        ++report.successes;
        ++report.per_sieve_successes[to_string(*rec.sieve_used)];
        fraction_sum += rec.perturbed_fraction;
        similarity_sum += rec.similarity;
        break;
      case AttackStatus::error:
        ++report.errors;
        break;
      default:
        break;
    }
  }
  report.before_correct = n - report.skipped;

  const int denominator = options.count_skipped_as_incorrect ? n : report.before_correct;
  if (denominator > 0) {
    report.before_accuracy =
        static_cast<double>(report.before_correct) / static_cast<double>(denominator);
    report.after_accuracy =
        static_cast<double>(report.before_correct - report.successes) /
        static_cast<double>(denominator);
  }
  report.accuracy_drop = report.before_accuracy - report.after_accuracy;
  report.success_rate = report.before_correct > 0
                            ? static_cast<double>(report.successes) /
                                  static_cast<double>(report.before_correct)
                            : 0.0;
  if (report.successes > 0) {
    report.mean_perturbed_fraction = fraction_sum / report.successes;
    report.mean_similarity = similarity_sum / report.successes;
  }
  return report;
}

std::vector<EvalReport> ablate(const std::vector<LabeledExample>& dataset,
                               const BackendSet& backends, const AttackConfig& base_config,
                               const std::vector<AblationVariant>& variants,
                               const EvalOptions& options) {
  for (const AblationVariant& v : variants) {
    SieveSet remaining = base_config.sieves;
    if (v.disabled.synonyms_and_mlm) remaining.synonyms_and_mlm = false;
    if (v.disabled.rotation) remaining.rotation = false;
    if (v.disabled.insertion) remaining.insertion = false;
    if (v.disabled.numerals) remaining.numerals = false;
    if (!remaining.any()) {
      throw UsageError("ablation variant '" + v.name + "' disables every sieve");
    }
  }

  std::vector<EvalReport> reports;
  reports.reserve(variants.size() + 1);

  EvalReport baseline = evaluate(dataset, backends, base_config, options);
  baseline.variant = "full";
  reports.push_back(std::move(baseline));

  for (const AblationVariant& v : variants) {
    AttackConfig config = base_config;  // identical seeds across variants
    if (v.disabled.synonyms_and_mlm) config.sieves.synonyms_and_mlm = false;
    if (v.disabled.rotation) config.sieves.rotation = false;
    if (v.disabled.insertion) config.sieves.insertion = false;
    if (v.disabled.numerals) config.sieves.numerals = false;
    EvalReport report = evaluate(dataset, backends, config, options);
    report.variant = v.name;
    reports.push_back(std::move(report));
  }
  return reports;
}

std::string render_report(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return report_to_json(report).dump(2) + "\n";
    case ReportFormat::csv: {
      std::string out =
          "source_id,label,status,sieve,queries,perturbed_fraction,similarity,original_text,"
          "final_text\n";
      auto esc = [](const std::string& s) {
        if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
          if (c == '"') q += "\"\"";
          else q += c;
        }
        q += '"';
        return q;
      };
      for (const ExampleRecord& e : report.examples) {
        out += esc(e.source_id) + ',' + std::to_string(e.label) + ',' + to_string(e.status) + ',';
        out += e.sieve_used ? to_string(*e.sieve_used) : "";
        out += ',' + std::to_string(e.queries) + ',' + fixed6(e.perturbed_fraction) + ',' +
               fixed6(e.similarity) + ',' + esc(e.original_text) + ',' + esc(e.final_text) + '\n';
      }
      return out;
    }
    case ReportFormat::markdown: {
      std::string out = "# Attack evaluation (" + report.variant + ")\n\n";
      out += "| Config | Before-attack | After-attack | % | Similarity |\n";
      out += "|---|---|---|---|---|\n";
      out += "| " + report.variant + " | " + fixed6(report.before_accuracy) + " | " +
             fixed6(report.after_accuracy) + " | " + fixed6(report.mean_perturbed_fraction) +
             " | " + fixed6(report.mean_similarity) + " |\n\n";
      out += "- documents: " + std::to_string(report.dataset_size) + "\n";
      out += "- successes: " + std::to_string(report.successes) + "\n";
      out += "- skipped (misclassified): " + std::to_string(report.skipped) + "\n";
      out += "- errors: " + std::to_string(report.errors) + "\n";
      out += "- accuracy drop: " + fixed6(report.accuracy_drop) + "\n";
      out += "- success rate: " + fixed6(report.success_rate) + "\n";
      out += "- total victim queries: " + std::to_string(report.total_queries) + "\n";
      if (!report.per_sieve_successes.empty()) {
        out += "\n| Sieve | Successes |\n|---|---|\n";
        for (const auto& [sieve, count] : report.per_sieve_successes) {
          out += "| " + sieve + " | " + std::to_string(count) + " |\n";
        }
      }
      return out;
    }
  }
  throw UsageError("unknown report format");
}

EvalReport parse_report_json(const std::string& json_text) {
  njson j;
  try {
    j = njson::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid report json: ") + e.what());
  }
  EvalReport r;
  r.variant = j.at("variant").get<std::string>();
  r.dataset_size = j.at("dataset_size").get<int>();
  r.before_correct = j.at("before_correct").get<int>();
  r.successes = j.at("successes").get<int>();
  r.skipped = j.at("skipped").get<int>();
  r.errors = j.at("errors").get<int>();
  r.before_accuracy = j.at("before_accuracy").get<double>();
  r.after_accuracy = j.at("after_accuracy").get<double>();
  r.accuracy_drop = j.at("accuracy_drop").get<double>();
  r.success_rate = j.at("success_rate").get<double>();
  r.mean_perturbed_fraction = j.at("mean_perturbed_fraction").get<double>();
  r.mean_similarity = j.at("mean_similarity").get<double>();
  r.total_queries = j.at("total_queries").get<long long>();
  for (const auto& [sieve, count] : j.at("per_sieve_successes").items()) {
    r.per_sieve_successes[sieve] = count.get<int>();
  }
  r.config = config_from_json(j.at("config"));
  r.workers = j.at("workers").get<int>();
  for (const njson& e : j.at("examples")) r.examples.push_back(example_from_json(e));
  return r;
}

std::string render_ablation_markdown(const std::vector<EvalReport>& reports) {
  std::string out = "# Sieve ablations\n\n";
  out += "| Config | Before-attack | After-attack | Accuracy drop | % | Similarity |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const EvalReport& r : reports) {
    out += "| " + r.variant + " | " + fixed6(r.before_accuracy) + " | " +
           fixed6(r.after_accuracy) + " | " + fixed6(r.accuracy_drop) + " | " +
           fixed6(r.mean_perturbed_fraction) + " | " + fixed6(r.mean_similarity) + " |\n";
  }
  return out;
}

std::string trace_jsonl_line(const std::string& source_id, const AttackResult& result) {
  njson steps = njson::array();
  for (const TraceStep& step : result.trace) {
    njson candidates = njson::array();
    for (const Candidate& c : step.candidates) {
      candidates.push_back(njson{{"span", {c.span_start, c.span_end}},
                                 {"replacement", c.replacement},
                                 {"sieve", to_string(c.sieve)},
                                 {"similarity", c.similarity},
                                 {"prob_label", c.prob_label}});
    }
    njson js{{"unit", {{"start", step.unit.start},
                       {"end", step.unit.end},
                       {"entity", step.unit.is_entity},
                       {"score", step.unit.score}}},
             {"stage", to_string(step.stage)},
             {"action", to_string(step.action)},
             {"candidates", candidates}};
    if (!step.note.empty()) js["note"] = step.note;
    steps.push_back(std::move(js));
  }
  njson line{{"source_id", source_id},
             {"status", to_string(result.status)},
             {"label", result.label},
             {"queries", result.queries_spent},
             {"final_text", result.final_text},
             {"steps", steps}};
  return line.dump();
}

}  // namespace bbaeg
