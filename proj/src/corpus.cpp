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

#include "bbaeg/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "bbaeg/errors.hpp"
#include "bbaeg/perturbers.hpp"
#include "bbaeg/stub_backends.hpp"
#include "bbaeg/text.hpp"

namespace bbaeg {

namespace {

using njson = nlohmann::ordered_json;

// --- csv plumbing (RFC 4180 style: comma-separated, double-quote escaping) ---

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;

  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in.peek() == '\n') in.get(c);
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (any || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

bool parse_int(const std::string& s, int& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  long value = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    value = value * 10 + (s[i] - '0');
    if (value > 1000000) return false;
  }
  out = static_cast<int>(s[0] == '-' ? -value : value);
  return true;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

// Accepts a parsed example or routes it to the rejects list.
void admit(LoadResult& result, int row, std::string text, int label, std::string source_id) {
  if (blank(text)) {
    result.rejects.push_back({row, "empty text"});
    return;
  }
  if (label != 0 && label != 1) {
    result.rejects.push_back({row, "label outside {0,1}"});
    return;
  }
  result.examples.push_back({std::move(text), label, std::move(source_id)});
}

LoadResult load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open dataset: " + path);
  const auto records = parse_csv(in);
  if (records.empty()) throw FormatError("csv file has no header: " + path);

  const std::vector<std::string>& header = records.front();
  auto column = [&header](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  const int text_col = column("text");
  const int label_col = column("label");
  const int id_col = column("id");
  if (text_col < 0 || label_col < 0) {
    throw FormatError("csv header must contain text and label columns", 1);
  }

  LoadResult result;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const int row = static_cast<int>(r) + 1;
    const std::vector<std::string>& rec = records[r];
    if (rec.size() == 1 && rec[0].empty()) continue;  // trailing blank line
    if (rec.size() != header.size()) {
      throw FormatError("csv row has " + std::to_string(rec.size()) + " fields, expected " +
                            std::to_string(header.size()),
                        row);
    }
    int label = 0;
    if (!parse_int(rec[static_cast<std::size_t>(label_col)], label)) {
      throw FormatError("label is not an integer", row);
    }
    std::string id = id_col >= 0 ? rec[static_cast<std::size_t>(id_col)]
                                 : "row-" + std::to_string(row);
    admit(result, row, rec[static_cast<std::size_t>(text_col)], label, std::move(id));
  }
  return result;
}

LoadResult load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open dataset: " + path);

  LoadResult result;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (blank(line)) continue;
    njson j;
    try {
      j = njson::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("invalid JSON: ") + e.what(), row);
    }
    if (!j.is_object() || !j.contains("text")) throw FormatError("missing \"text\" field", row);
    if (!j.contains("label")) throw FormatError("missing \"label\" field", row);
    if (!j.at("text").is_string()) throw FormatError("\"text\" must be a string", row);
    if (!j.at("label").is_number_integer()) throw FormatError("\"label\" must be an integer", row);
    std::string id = j.value("id", "row-" + std::to_string(row));
    admit(result, row, j.at("text").get<std::string>(), j.at("label").get<int>(), std::move(id));
  }
  return result;
}

}  // namespace

std::optional<DatasetFormat> dataset_format_from_string(std::string_view name) {
  if (name == "csv") return DatasetFormat::csv;
  if (name == "jsonl") return DatasetFormat::jsonl;
  return std::nullopt;
}

LoadResult load_dataset(const std::string& path, DatasetFormat format) {
  return format == DatasetFormat::csv ? load_csv(path) : load_jsonl(path);
}

void save_dataset(const std::string& path, DatasetFormat format,
                  const std::vector<LabeledExample>& examples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write dataset: " + path);
  if (format == DatasetFormat::csv) {
    out << "text,label,id\n";
    for (const LabeledExample& ex : examples) {
      out << csv_escape(ex.text) << ',' << ex.label << ',' << csv_escape(ex.source_id) << '\n';
    }
  } else {
    for (const LabeledExample& ex : examples) {
      out << njson{{"text", ex.text}, {"label", ex.label}, {"id", ex.source_id}}.dump() << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Synthetic corpus.
// ---------------------------------------------------------------------------

namespace {

enum class Family { entity, masked_lm, spelling, numeral, unflippable };

// Repeating 25-slot schedule; families stay proportional for any n.
Family family_for(int index) {
  static const Family kSchedule[25] = {
      Family::entity, Family::masked_lm, Family::spelling, Family::numeral, Family::unflippable,
      Family::entity, Family::masked_lm, Family::spelling, Family::numeral, Family::unflippable,
      Family::entity, Family::masked_lm, Family::spelling, Family::numeral, Family::unflippable,
      Family::entity, Family::masked_lm, Family::spelling, Family::numeral,
      Family::entity, Family::masked_lm, Family::spelling,
      Family::entity, Family::masked_lm,
      Family::entity};
  return kSchedule[index % 25];
}

template <typename T>
const T& pick(const std::vector<T>& pool, Rng& rng) {
  return pool[static_cast<std::size_t>(rng() % pool.size())];
}

}  // namespace

std::vector<LabeledExample> synth_fixture_corpus(int n, std::uint64_t seed, const Lexicon& lexicon,
                                                 const OntologyFixture& ontology) {
  if (n < 1) throw UsageError("corpus size must be at least 1");

  // Surface pools. The weighted words live in the lexicon fixture; the
  // pools only decide which of them a sentence uses.
  const std::vector<std::string> drugs = {"clozapine", "ibuprofen", "metformin", "warfarin",
                                          "aspirin"};
  const std::vector<std::string> diseases = {"nausea", "headache", "dizziness", "rash"};
  const std::vector<std::string> span_diseases = {"pulmonary eosinophilia", "colorectal adenoma"};
  const std::vector<std::string> verbs = {"induced", "triggered"};
  const std::vector<std::string> symptoms = {"discomfort", "cramping", "stiffness"};
  const std::vector<std::string> fillers = {"noted", "documented", "recorded"};
  const std::vector<std::string> spelling_templates = {
      "patient took tablets twice daily",
      "patient reacted severely after dosing",
  };
  const std::vector<std::string> numeral_diseases = {"insomnia", "fatigue"};
  const std::vector<std::string> numbers = {"20", "30", "15", "40", "60"};
  const std::vector<std::string> unflippable_templates = {
      "patient attended routine checkup visit",
      "clinic followup scheduled without concern",
      "records reviewed during routine visit",
  };

  KeywordClassifier stub(lexicon);
  (void)ontology;  // surfaces above must stay aligned with the gazetteer fixture

  Rng rng(seed);
  std::vector<LabeledExample> corpus;
  corpus.reserve(static_cast<std::size_t>(n));
  int entity_count = 0;

  for (int i = 0; i < n; ++i) {
    std::string text;
    switch (family_for(i)) {
      case Family::entity: {
        // every third entity sentence uses a multi-word mention
        if (entity_count % 3 == 2) {
          text = "history of " + pick(span_diseases, rng) + " " + pick(fillers, rng) + " .";
        } else {
          text = "challenge with " + pick(drugs, rng) + " brought " + pick(diseases, rng) +
                 " today .";
        }
        ++entity_count;
        break;
      }
      case Family::masked_lm:
        text = pick(drugs, rng) + " " + pick(verbs, rng) + " " + pick(symptoms, rng) +
               " in patients";
        break;
      case Family::spelling:
        text = pick(spelling_templates, rng);
        break;
      case Family::numeral:
        text = pick(numeral_diseases, rng) + " persisted for " + pick(numbers, rng) + " nights .";
        break;
      case Family::unflippable:
        text = pick(unflippable_templates, rng);
        break;
    }

    const int label = stub.predict({text}).front().argmax();
    corpus.push_back({text, label, "synth-" + std::to_string(i)});
  }
  return corpus;
}

}  // namespace bbaeg
