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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "bbaeg/attack.hpp"
#include "bbaeg/corpus.hpp"

namespace bbaeg {

struct EvalOptions {
  int workers = 1;
  /// When set (the default), originally-misclassified examples count as
  /// incorrect both before and after the attack; otherwise they are
  /// excluded from both accuracy denominators.
  bool count_skipped_as_incorrect = true;
  /// When non-null, receives one trace json line per example (dataset order).
  std::vector<std::string>* trace_sink = nullptr;
};

/// Per-example outcome summary carried inside a report.
struct ExampleRecord {
  std::string source_id;
  int label = 0;
  AttackStatus status = AttackStatus::failed;
  std::optional<Sieve> sieve_used;
  int queries = 0;
  double perturbed_fraction = 0.0;
  double similarity = 1.0;
  std::string original_text;
  std::string final_text;
  std::string error;
};

struct EvalReport {
  std::string variant = "full";
  int dataset_size = 0;
  int before_correct = 0;
  int successes = 0;
  int skipped = 0;
  int errors = 0;
  double before_accuracy = 0.0;
  double after_accuracy = 0.0;
  double accuracy_drop = 0.0;
  double success_rate = 0.0;
  double mean_perturbed_fraction = 0.0;  // over successes
  double mean_similarity = 0.0;          // over successes
  long long total_queries = 0;
  std::map<std::string, int> per_sieve_successes;
  AttackConfig config;  // echo of the attack configuration
  int workers = 1;
  std::vector<ExampleRecord> examples;
};

/// Attacks every example and aggregates before/after accuracy, performance
/// drop, perturbation rate, and similarity. Per-document seeds are derived
/// as seed XOR index, so results are identical for any worker count.
EvalReport evaluate(const std::vector<LabeledExample>& dataset, const BackendSet& backends,
                    const AttackConfig& config, const EvalOptions& options = {});

/// One ablation variant: a human-readable name plus the channels it turns
/// off (which must leave at least one channel enabled).
struct AblationVariant {
  std::string name;
  SieveSet disabled;  // fields set to true are switched off
};

/// Baseline evaluation followed by one evaluation per variant, all under
/// identical seeds.
std::vector<EvalReport> ablate(const std::vector<LabeledExample>& dataset,
                               const BackendSet& backends, const AttackConfig& base_config,
                               const std::vector<AblationVariant>& variants,
                               const EvalOptions& options = {});

enum class ReportFormat { json, csv, markdown };

std::optional<ReportFormat> report_format_from_string(std::string_view name);

/// Renders a report: loss-free json, per-example csv (one row per example),
/// or a markdown summary with Before-attack / After-attack / % columns.
std::string render_report(const EvalReport& report, ReportFormat format);

/// Parses a report back from its json rendering.
EvalReport parse_report_json(const std::string& json_text);

/// Side-by-side markdown table over baseline + variants.
std::string render_ablation_markdown(const std::vector<EvalReport>& reports);

/// Trace of a whole attack as one json line (for the per-example trace file).
std::string trace_jsonl_line(const std::string& source_id, const AttackResult& result);

}  // namespace bbaeg
