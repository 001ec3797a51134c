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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "bbaeg/errors.hpp"
#include "bbaeg/fixtures.hpp"
#include "bbaeg/stub_backends.hpp"

using namespace bbaeg;

namespace {

// Fixture F1: a tiny keyword victim used across the test suite.
Lexicon f1_lexicon() {
  Lexicon lex;
  lex.bias = -2.0;
  lex.weights = {{"nausea", 2.0}, {"induced", 1.5}, {"sickness", 2.0}};
  return lex;
}

// Reference matcher for the recognizer: enumerate every (start, length)
// window that hits the gazetteer, then select spans leftmost-longest.
std::vector<std::pair<int, int>> brute_force_spans(
    const Document& doc, const std::map<std::string, StaticRecognizer::GazetteerEntry>& gaz) {
  std::vector<std::pair<int, int>> all;
  for (int s = 0; s < doc.size(); ++s) {
    for (int len = 1; len <= 5 && s + len <= doc.size(); ++len) {
      bool clean = true;
      std::string phrase;
      for (int k = s; k < s + len; ++k) {
        if (doc.tokens[static_cast<std::size_t>(k)].is_punct) clean = false;
        if (!phrase.empty()) phrase += ' ';
        phrase += to_lower(doc.surface(k));
      }
      if (clean && gaz.count(phrase) > 0) all.emplace_back(s, len);
    }
  }
  std::vector<std::pair<int, int>> chosen;
  int cursor = 0;
  while (cursor < doc.size()) {
    int best_len = 0;
    for (const auto& [s, len] : all) {
      if (s == cursor && len > best_len) best_len = len;
    }
    if (best_len == 0) {
      ++cursor;
    } else {
      chosen.emplace_back(cursor, best_len);
      cursor += best_len;
    }
  }
  return chosen;
}

}  // namespace

TEST_SUITE("stub_backends") {
  TEST_CASE("keyword classifier matches direct logistic evaluation") {
    KeywordClassifier victim(f1_lexicon());
    const auto dists = victim.predict({"clozapine induced nausea", "clozapine induced", ""});
    CHECK(dists[0].prob(1) == doctest::Approx(0.817574).epsilon(1e-6));
    CHECK(dists[1].prob(1) == doctest::Approx(0.377541).epsilon(1e-6));
    CHECK(dists[2].prob(1) == doctest::Approx(0.119203).epsilon(1e-6));
  }

  TEST_CASE("distributions are valid and deterministic") {
    KeywordClassifier victim(f1_lexicon());
    const std::vector<std::string> texts = {"nausea", "x y z", "NAUSEA sickness", "", "a."};
    const auto first = victim.predict(texts);
    const auto second = victim.predict(texts);
    REQUIRE(first.size() == texts.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      CHECK(first[i].valid(1e-6));
      CHECK(first[i].probs == second[i].probs);  // pure function of inputs
    }
  }

  TEST_CASE("matching is case-insensitive and per occurrence") {
    KeywordClassifier victim(f1_lexicon());
    const double one = victim.predict({"nausea"}).front().prob(1);
    const double twice = victim.predict({"Nausea nausea"}).front().prob(1);
    CHECK(one == doctest::Approx(1.0 / (1.0 + std::exp(2.0 - 2.0))));
    CHECK(twice == doctest::Approx(1.0 / (1.0 + std::exp(2.0 - 4.0))));
  }

  TEST_CASE("token overlap similarity") {
    TokenOverlapScorer scorer;
    CHECK(scorer.similarity("clozapine induced nausea", "clozapine induced nausea") == 1.0);
    CHECK(scorer.similarity("clozapine induced nausea", "clozapine induced emesis") ==
          doctest::Approx(2.0 / 3.0));
    CHECK(scorer.similarity("aaa bbb", "ccc ddd") == 0.0);
  }

  TEST_CASE("overlap similarity is symmetric and maximal on self") {
    TokenOverlapScorer scorer;
    std::mt19937_64 rng(11);
    const std::vector<std::string> words = {"a", "bb", "ccc", "nausea", "19", "."};
    for (int i = 0; i < 50; ++i) {
      std::string a;
      std::string b;
      for (std::size_t k = 0; k < 1 + rng() % 5; ++k) a += (a.empty() ? "" : " ") + words[rng() % 6];
      for (std::size_t k = 0; k < 1 + rng() % 5; ++k) b += (b.empty() ? "" : " ") + words[rng() % 6];
      CHECK(scorer.similarity(a, b) == scorer.similarity(b, a));
      CHECK(scorer.similarity(a, a) >= scorer.similarity(a, b));
    }
  }

  TEST_CASE("recognizer finds a linked multi-token span") {
    std::map<std::string, StaticRecognizer::GazetteerEntry> gaz;
    gaz["pulmonary eosinophilia"] = {EntityType::disease, "MESH:D011657", "pulmonary eosinophilia"};
    StaticRecognizer recognizer(gaz);
    const auto spans = recognizer.recognize(tokenize("pulmonary eosinophilia ailment"));
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].start_token == 0);
    CHECK(spans[0].end_token == 1);
    CHECK(spans[0].entity_type == EntityType::disease);
    CHECK(spans[0].ontology_id == "MESH:D011657");
  }

  TEST_CASE("recognizer without hits returns nothing") {
    StaticRecognizer recognizer({});
    CHECK(recognizer.recognize(tokenize("no entities here")).empty());
  }

  TEST_CASE("longest match wins over nested phrases") {
    std::map<std::string, StaticRecognizer::GazetteerEntry> gaz;
    gaz["type one diabetes"] = {EntityType::disease, "MESH:LONG", "type one diabetes"};
    gaz["diabetes"] = {EntityType::disease, "MESH:SHORT", "diabetes"};
    StaticRecognizer recognizer(gaz);

    const Document doc = tokenize("patient with type one diabetes and diabetes history");
    const auto spans = recognizer.recognize(doc);
    const auto expected = brute_force_spans(doc, gaz);
    REQUIRE(spans.size() == expected.size());
    for (std::size_t i = 0; i < spans.size(); ++i) {
      CHECK(spans[i].start_token == expected[i].first);
      CHECK(spans[i].end_token == expected[i].first + expected[i].second - 1);
    }
    CHECK(spans[0].ontology_id == "MESH:LONG");
    CHECK(spans[1].ontology_id == "MESH:SHORT");
  }

  TEST_CASE("recognizer spans never overlap nor cross punctuation") {
    StaticRecognizer recognizer = StaticRecognizer::from_fixture(synth_ontology());
    std::mt19937_64 rng(99);
    const std::vector<std::string> pieces = {"nausea", "pulmonary", "eosinophilia", ".",
                                             "clozapine", ",", "rash", "insomnia", "x"};
    for (int i = 0; i < 100; ++i) {
      std::string text;
      for (std::size_t k = 0; k < 2 + rng() % 8; ++k) {
        if (!text.empty()) text += ' ';
        text += pieces[rng() % pieces.size()];
      }
      const Document doc = tokenize(text);
      const auto spans = recognizer.recognize(doc);
      std::vector<bool> taken(static_cast<std::size_t>(doc.size()), false);
      for (const EntitySpan& s : spans) {
        for (int t = s.start_token; t <= s.end_token; ++t) {
          CHECK_FALSE(taken[static_cast<std::size_t>(t)]);
          taken[static_cast<std::size_t>(t)] = true;
          CHECK_FALSE(doc.tokens[static_cast<std::size_t>(t)].is_punct);
        }
      }
    }
  }

  TEST_CASE("synonym provider excludes the canonical surface") {
    OntologyFixture fx;
    fx.add("MESH:X", {"nausea", EntityType::disease, {"Nausea", "emesis", "sickness"}});
    FixtureSynonymProvider provider(fx);
    const auto syns = provider.synonyms("MESH:X", EntityType::disease);
    REQUIRE(syns.size() == 2);
    CHECK(syns[0] == "emesis");
    CHECK(syns[1] == "sickness");
    CHECK(provider.synonyms("MESH:UNKNOWN", EntityType::disease).empty());
  }

  TEST_CASE("suffix tagger rules") {
    CHECK(SuffixPosTagger::tag_word("the") == PosTag::other);
    CHECK(SuffixPosTagger::tag_word("with") == PosTag::other);
    CHECK(SuffixPosTagger::tag_word(".") == PosTag::other);
    CHECK(SuffixPosTagger::tag_word("21") == PosTag::numeral);
    CHECK(SuffixPosTagger::tag_word("19th") == PosTag::numeral);
    CHECK(SuffixPosTagger::tag_word("daily") == PosTag::adverb);
    CHECK(SuffixPosTagger::tag_word("induced") == PosTag::verb);
    CHECK(SuffixPosTagger::tag_word("pulmonary") == PosTag::adjective);
    CHECK(SuffixPosTagger::tag_word("nausea") == PosTag::noun);
    CHECK(SuffixPosTagger::tag_word("emesis") == PosTag::noun);
    CHECK(SuffixPosTagger::tag_word("vomiting") == PosTag::noun);
  }

  TEST_CASE("tagger yields one tag per token") {
    SuffixPosTagger tagger;
    const Document doc = tokenize("A 21-year-old patient developed rhabdomyolysis daily .");
    CHECK(tagger.tag(doc).size() == doc.tokens.size());
  }

  TEST_CASE("static proposer honors k and the sentinel contract") {
    MlmVocab vocab;
    vocab.entries = {{"alpha", 0.5}, {"beta", 0.9}, {"gamma", 0.7}};
    StaticMaskedProposer proposer(vocab);

    const auto top2 = proposer.propose("a [MASK] c", 2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0].token == "beta");  // sorted by score descending
    CHECK(top2[1].token == "gamma");

    CHECK_THROWS_AS(proposer.propose("no mask here", 5), ProtocolError);
    CHECK_THROWS_AS(proposer.propose("[MASK] and [MASK]", 5), ProtocolError);
  }

  TEST_CASE("proposer overrides match on the exact masked text") {
    MlmVocab vocab;
    vocab.entries = {{"default", 1.0}};
    StaticMaskedProposer proposer(
        vocab, {{"clozapine induced [MASK]", {{"emesis", 0.9}, {"vomiting", 0.8}}}});
    const auto hits = proposer.propose("clozapine induced [MASK]", 10);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].token == "emesis");
    const auto misses = proposer.propose("something else [MASK]", 10);
    REQUIRE(misses.size() == 1);
    CHECK(misses[0].token == "default");
  }

  TEST_CASE("fixture files round trip") {
    const std::string dir = "/tmp/bbaeg_fixture_test";
    std::filesystem::create_directories(dir);

    const OntologyFixture fx = synth_ontology();
    fx.save(dir + "/onto.json");
    const OntologyFixture fx2 = OntologyFixture::load(dir + "/onto.json");
    REQUIRE(fx2.entries().size() == fx.entries().size());
    CHECK(fx2.find("DB00363")->canonical == "clozapine");
    CHECK(fx2.find("DB00363")->synonyms == fx.find("DB00363")->synonyms);

    const Lexicon lex = synth_lexicon();
    lex.save(dir + "/lex.json");
    const Lexicon lex2 = Lexicon::load(dir + "/lex.json");
    CHECK(lex2.bias == lex.bias);
    CHECK(lex2.weights == lex.weights);

    const MlmVocab vocab = synth_mlm_vocab();
    vocab.save(dir + "/vocab.json");
    const MlmVocab vocab2 = MlmVocab::load(dir + "/vocab.json");
    REQUIRE(vocab2.entries.size() == vocab.entries.size());
    CHECK(vocab2.entries[0].token == vocab.entries[0].token);
  }
}
