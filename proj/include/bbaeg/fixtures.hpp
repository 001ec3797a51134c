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

#include "bbaeg/backends.hpp"
#include "bbaeg/text.hpp"

namespace bbaeg {

/// One ontology record: canonical surface plus its synonym list.
struct OntologyEntry {
  std::string canonical;
  EntityType type = EntityType::disease;
  std::vector<std::string> synonyms;
};

/// Pluggable gazetteer/synonym fixture, serialized as a UTF-8 JSON object
/// mapping ontology id -> {"canonical", "type", "synonyms"}.
class OntologyFixture {
 public:
  OntologyFixture() = default;

  void add(const std::string& ontology_id, OntologyEntry entry);
  const OntologyEntry* find(const std::string& ontology_id) const;
  const std::map<std::string, OntologyEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  static OntologyFixture load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::map<std::string, OntologyEntry> entries_;  // ordered for reproducible iteration
};

/// Token weights for the keyword stub victim. Keys are lowercase.
struct Lexicon {
  std::map<std::string, double> weights;
  double bias = 0.0;

  static Lexicon load(const std::string& path);
  void save(const std::string& path) const;
};

/// Fixed proposal list for the stub masked-token proposer, sorted by score
/// descending.
struct MlmVocab {
  std::vector<ScoredToken> entries;

  static MlmVocab load(const std::string& path);
  void save(const std::string& path) const;
};

// Built-in fixture set used by the synthetic evaluation corpus and by the
// stub backends when no files are supplied.
Lexicon synth_lexicon();
OntologyFixture synth_ontology();
MlmVocab synth_mlm_vocab();

}  // namespace bbaeg
