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

#include "bbaeg/fixtures.hpp"

#include <fstream>

#include <json.hpp>

#include "bbaeg/errors.hpp"

namespace bbaeg {

namespace {

using njson = nlohmann::ordered_json;

njson load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open fixture file: " + path);
  njson j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const njson& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write fixture file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace

void OntologyFixture::add(const std::string& ontology_id, OntologyEntry entry) {
  entries_[ontology_id] = std::move(entry);
}

const OntologyEntry* OntologyFixture::find(const std::string& ontology_id) const {
  auto it = entries_.find(ontology_id);
  return it == entries_.end() ? nullptr : &it->second;
}

OntologyFixture OntologyFixture::load(const std::string& path) {
  const njson j = load_json_file(path);
  if (!j.is_object()) throw FormatError("ontology fixture must be a JSON object: " + path);
  OntologyFixture fixture;
  for (const auto& [id, value] : j.items()) {
    if (!value.is_object() || !value.contains("canonical") || !value.contains("type") ||
        !value.contains("synonyms")) {
      throw FormatError("ontology entry '" + id + "' must have canonical/type/synonyms");
    }
    OntologyEntry entry;
    entry.canonical = value.at("canonical").get<std::string>();
    auto type = entity_type_from_string(value.at("type").get<std::string>());
    if (!type) throw FormatError("ontology entry '" + id + "' has unknown type");
    entry.type = *type;
    entry.synonyms = value.at("synonyms").get<std::vector<std::string>>();
    fixture.add(id, std::move(entry));
  }
  return fixture;
}

void OntologyFixture::save(const std::string& path) const {
  njson j = njson::object();
  for (const auto& [id, entry] : entries_) {
    j[id] = {{"canonical", entry.canonical},
             {"type", to_string(entry.type)},
             {"synonyms", entry.synonyms}};
  }
  save_json_file(path, j);
}

Lexicon Lexicon::load(const std::string& path) {
  const njson j = load_json_file(path);
  if (!j.is_object() || !j.contains("weights")) {
    throw FormatError("lexicon fixture must be an object with a weights map: " + path);
  }
  Lexicon lex;
  lex.bias = j.value("bias", 0.0);
  for (const auto& [token, weight] : j.at("weights").items()) {
    lex.weights[to_lower(token)] = weight.get<double>();
  }
  return lex;
}

void Lexicon::save(const std::string& path) const {
  njson w = njson::object();
  for (const auto& [token, weight] : weights) w[token] = weight;
  save_json_file(path, njson{{"bias", bias}, {"weights", w}});
}

MlmVocab MlmVocab::load(const std::string& path) {
  const njson j = load_json_file(path);
  if (!j.is_object() || !j.contains("tokens") || !j.at("tokens").is_array()) {
    throw FormatError("MLM vocab fixture must be an object with a tokens array: " + path);
  }
  MlmVocab vocab;
  for (const auto& item : j.at("tokens")) {
    if (!item.contains("token") || !item.contains("score")) {
      throw FormatError("MLM vocab entries need token and score fields: " + path);
    }
    vocab.entries.push_back({item.at("token").get<std::string>(), item.at("score").get<double>()});
  }
  return vocab;
}

void MlmVocab::save(const std::string& path) const {
  njson tokens = njson::array();
  for (const auto& e : entries) tokens.push_back({{"token", e.token}, {"score", e.score}});
  save_json_file(path, njson{{"tokens", tokens}});
}

// ---------------------------------------------------------------------------
// Built-in synthetic fixture set.
//
// The weights are arranged so that each perturbation channel has documents it
// uniquely defeats: single-token disease mentions flip only through synonym
// substitution (their synonyms carry negative weight), weighted verbs flip
// through masked-LM proposals, weighted adverbs only through spelling noise
// (no adverb lives in the proposal vocabulary), and the numeral documents
// only through digit expansion (the number words carry negative weight while
// the sentence keeps enough residual mass that deleting any single token
// leaves the prediction unchanged).
// ---------------------------------------------------------------------------

Lexicon synth_lexicon() {
  Lexicon lex;
  lex.bias = -2.0;
  lex.weights = {
      // sentence-final period: stable mass that no token edit can remove
      {".", 2.4},
      // single-token diseases
      {"nausea", 2.5},
      {"headache", 2.5},
      {"dizziness", 2.5},
      {"rash", 2.5},
      // their synonyms (negative, so substitution flips the prediction)
      {"emesis", -1.0},
      {"queasiness", -1.0},
      {"cephalalgia", -1.0},
      {"vertigo", -1.0},
      {"exanthema", -1.0},
      // multi-word diseases, weight split across members
      {"pulmonary", 2.2},
      {"eosinophilia", 2.2},
      {"colorectal", 2.2},
      {"adenoma", 2.2},
      {"loeffler", -1.0},
      {"syndrome", -1.0},
      {"adenomatous", -1.0},
      {"polyp", -1.0},
      // weighted verbs (masked-LM targets)
      {"induced", 2.6},
      {"triggered", 2.6},
      // weighted adverbs (spelling-noise targets)
      {"daily", 2.6},
      {"severely", 2.6},
      // numeral documents: low-weight diseases with equal-weight synonyms
      {"insomnia", 1.5},
      {"fatigue", 1.5},
      {"sleeplessness", 1.5},
      {"tiredness", 1.5},
      // digit surfaces and their negative word forms
      {"20", 3.0},
      {"30", 3.0},
      {"15", 3.0},
      {"40", 3.0},
      {"60", 3.0},
      {"twenty", -4.0},
      {"thirty", -4.0},
      {"fifteen", -4.0},
      {"forty", -4.0},
      {"sixty", -4.0},
  };
  return lex;
}

OntologyFixture synth_ontology() {
  OntologyFixture fx;
  fx.add("MESH:D009325", {"nausea", EntityType::disease, {"emesis", "queasiness"}});
  fx.add("MESH:D006261", {"headache", EntityType::disease, {"cephalalgia"}});
  fx.add("MESH:D004244", {"dizziness", EntityType::disease, {"vertigo"}});
  fx.add("MESH:D005076", {"rash", EntityType::disease, {"exanthema"}});
  fx.add("MESH:D011657", {"pulmonary eosinophilia", EntityType::disease, {"Loeffler Syndrome"}});
  fx.add("MESH:D000236", {"colorectal adenoma", EntityType::disease, {"adenomatous polyp"}});
  fx.add("MESH:D007319", {"insomnia", EntityType::disease, {"sleeplessness"}});
  fx.add("MESH:D005221", {"fatigue", EntityType::disease, {"tiredness"}});
  fx.add("DB00363", {"clozapine", EntityType::drug, {"Clozapinum", "Leponex"}});
  fx.add("DB01050", {"ibuprofen", EntityType::drug, {"Advil"}});
  fx.add("DB00331", {"metformin", EntityType::drug, {"Glucophage"}});
  fx.add("DB00682", {"warfarin", EntityType::drug, {"Coumadin"}});
  fx.add("DB00945", {"aspirin", EntityType::drug, {"Acetylsalicylic acid"}});
  return fx;
}

MlmVocab synth_mlm_vocab() {
  MlmVocab vocab;
  vocab.entries = {
      {"caused", 0.90},
      {"observed", 0.85},
      {"mild", 0.80},
      {"relief", 0.75},
      {"the", 0.70},
  };
  return vocab;
}

}  // namespace bbaeg
