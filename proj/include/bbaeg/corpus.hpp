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

#include <cstdint>
#include <string>
#include <vector>

#include "bbaeg/fixtures.hpp"

namespace bbaeg {

struct LabeledExample {
  std::string text;
  int label = 0;
  std::string source_id;

  bool operator==(const LabeledExample& other) const = default;
};

enum class DatasetFormat { csv, jsonl };

std::optional<DatasetFormat> dataset_format_from_string(std::string_view name);

/// A row that was syntactically readable but violated a value constraint.
struct RejectedRow {
  int row = 0;  // 1-based, counting the header for csv
  std::string reason;
};

/// Accepted examples in file order plus the rejected rows; together they
/// partition the data rows of the input.
struct LoadResult {
  std::vector<LabeledExample> examples;
  std::vector<RejectedRow> rejects;
};

/// Reads a dataset. csv needs a header with text and label columns (an id
/// column is honored when present); jsonl objects need "text" and "label"
/// fields. Schema violations (missing columns or fields, unparseable rows,
/// non-integer labels) throw FormatError with the offending row; value
/// violations (empty text, label outside {0,1}) land in the rejects list.
LoadResult load_dataset(const std::string& path, DatasetFormat format);

void save_dataset(const std::string& path, DatasetFormat format,
                  const std::vector<LabeledExample>& examples);

/// Deterministic synthetic corpus for desk-scale evaluation: templated
/// sentences mixing gazetteer mentions, weighted keywords, and digit tokens
/// so that every perturbation channel has documents it can (and some it
/// alone can) flip. Labels always equal the keyword stub's argmax on the
/// text, so before-attack accuracy is 1 by construction.
std::vector<LabeledExample> synth_fixture_corpus(int n, std::uint64_t seed, const Lexicon& lexicon,
                                                 const OntologyFixture& ontology);

}  // namespace bbaeg
