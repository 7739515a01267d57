#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "semcom/dou.hpp"
#include "semcom/random.hpp"
#include "semcom/similarity.hpp"
#include "support.hpp"

using namespace semcom;
using testing::kb;

TEST_CASE("bag of synsets") {
  CHECK(embed_bag_of_synsets(kb(), "").empty());
  CHECK(sdou(embed_bag_of_synsets(kb(), ""), embed_bag_of_synsets(kb(), "bank")) == 0.0);

  auto bank = embed_bag_of_synsets(kb(), "bank");
  CHECK(bank.weights() == std::map<std::string, double>{{"n:00001001", 0.5}, {"n:00001002", 0.5}});

  auto dep = embed_bag_of_synsets(kb(), "depository_institution");
  CHECK(dep.weights() == std::map<std::string, double>{{"n:00001001", 1.0}});
  CHECK(sdou(bank, dep) > 0.0);
  CHECK(sdou(bank, dep) == doctest::Approx(0.5 / std::sqrt(0.5)));

  SUBCASE("stopwords are skipped, unknown words keep their stem") {
    auto v = embed_bag_of_synsets(kb(), "The cats ran");
    CHECK(v.weights() == std::map<std::string, double>{{"stem:cat", 1.0}, {"stem:ran", 1.0}});
  }
  SUBCASE("stem fallback reaches lexicon senses") {
    auto v = embed_bag_of_synsets(kb(), "running");
    CHECK(v.size() == 3);
    CHECK(v.get("v:00002001") == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("weights accumulate") {
    auto v = embed_bag_of_synsets(kb(), "bank bank slope");
    CHECK(v.get("n:00001001") == doctest::Approx(1.0));
    CHECK(v.get("n:00001003") == doctest::Approx(0.5));
    CHECK(v.get("n:00001004") == doctest::Approx(0.5));
  }
}

TEST_CASE("sentence vector never stores zeros") {
  SentenceVector v;
  v.add("x", 0.0);
  CHECK(v.empty());
  v.add("x", 1.0);
  v.add("x", -1.0);
  CHECK(v.empty());
  v.set("y", 2.0);
  v.set("y", 0.0);
  CHECK(v.empty());
  CHECK(v.get("missing") == 0.0);
}

TEST_CASE("embedder properties over the corpus") {
  BagOfSynsetsEmbedder emb(kb());
  CHECK(emb.identity() == "bag-of-synsets/1");
  std::istringstream corpus(testing::slurp(testing::fixture("corpus.txt")));
  std::vector<std::string> lines;
  for (std::string l; std::getline(corpus, l);) lines.push_back(l);

  auto batch = emb.embed(lines);
  REQUIRE(batch.size() == lines.size());
  Xoshiro256StarStar rng(5);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    CAPTURE(lines[i]);
    // Deterministic, and equal to the one-at-a-time path.
    CHECK(batch[i] == embed_bag_of_synsets(kb(), lines[i]));
    CHECK(sdou(batch[i], batch[i]) == doctest::Approx(1.0));

    // A bag ignores order.
    auto toks = tokenize(lines[i]);
    std::vector<std::string> words;
    for (const auto& t : toks) words.push_back(t.surface);
    for (std::size_t j = words.size(); j > 1; --j) std::swap(words[j - 1], words[rng.uniform(j)]);
    std::string shuffled;
    for (const auto& w : words) shuffled += w + " ";
    CHECK(sdou(batch[i], emb.embed_one(shuffled)) == doctest::Approx(1.0));

    for (const auto& [k, w] : batch[i].weights()) CHECK(w > 0.0);
    for (std::size_t j = 0; j < lines.size(); j += 7) {
      double c = cosine(batch[i], batch[j]);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0 + 1e-12);
    }

    // Any lemma of a candidate synset keeps a shared, positively weighted dimension.
    for (const auto& u : extract_word_units(kb().lexicon, kb().stopwords, lines[i])) {
      for (const auto& id : u.candidates) {
        for (const auto& lemma : kb().lexicon.lemmas_of(id)) {
          auto original = embed_bag_of_synsets(kb(), u.surface);
          auto swapped = embed_bag_of_synsets(kb(), lemma);
          CHECK(original.get(to_string(id)) > 0.0);
          CHECK(swapped.get(to_string(id)) > 0.0);
        }
      }
    }
  }
}
