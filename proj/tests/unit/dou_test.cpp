#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "semcom/dou.hpp"
#include "semcom/errors.hpp"
#include "semcom/random.hpp"
#include "semcom/similarity.hpp"
#include "support.hpp"

using namespace semcom;
using testing::sid;

namespace {

MeaningSelection sel(std::initializer_list<SynsetId> ids) {
  MeaningSelection out;
  for (const auto& id : ids) out.emplace_back(id);
  return out;
}

DifficultyVector dv(std::vector<double> v) { return {std::move(v), {}, 0.0}; }

}  // namespace

TEST_CASE("match_vector") {
  auto a = sel({sid('n', 1001), sid('n', 2001), sid('n', 3001)});
  auto b = sel({sid('n', 1001), sid('n', 2002), sid('n', 3001)});
  auto c = sel({sid('v', 1), sid('v', 2), sid('v', 3)});
  CHECK(match_vector(a, a) == MatchVector{1, 1, 1});
  CHECK(match_vector(a, c) == MatchVector{0, 0, 0});
  CHECK(match_vector(a, b) == MatchVector{1, 0, 1});

  auto open = a;
  open[1].reset();
  CHECK(match_vector(open, a) == MatchVector{1, 0, 1});
  CHECK(match_vector(open, open) == MatchVector{1, 0, 1});
  CHECK_THROWS_AS(match_vector(a, sel({sid('n', 1001)})), LengthMismatch);
}

TEST_CASE("difficulty_vector") {
  auto d = difficulty_vector(std::vector<std::size_t>{2, 3, 5}).values;
  REQUIRE(d.size() == 3);
  CHECK(d[0] == doctest::Approx(0.2));
  CHECK(d[1] == doctest::Approx(0.3));
  CHECK(d[2] == doctest::Approx(0.5));
  CHECK(difficulty_vector(std::vector<std::size_t>{7}).values == std::vector{1.0});
  CHECK(difficulty_vector(std::vector<std::size_t>{4, 4}).values == std::vector{0.5, 0.5});
  CHECK_THROWS_AS(difficulty_vector(std::vector<std::size_t>{}), EmptyUnits);
  CHECK_THROWS_AS(difficulty_vector(std::span<const WordUnit>{}), EmptyUnits);

  SUBCASE("scaling every f leaves d unchanged") {
    Xoshiro256StarStar rng(11);
    for (int t = 0; t < 200; ++t) {
      std::vector<std::size_t> f(1 + rng.uniform(10));
      for (auto& x : f) x = 2 + rng.uniform(20);
      auto scaled = f;
      std::size_t k = 1 + rng.uniform(9);
      for (auto& x : scaled) x *= k;
      auto a = difficulty_vector(f).values;
      auto b = difficulty_vector(scaled).values;
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("wdou") {
  std::vector<double> ones{1, 1, 1};
  auto d = dv({0.2, 0.3, 0.5});
  CHECK(wdou(MatchVector{1, 1, 1}, ones, d) == doctest::Approx(1.0));
  CHECK(wdou(MatchVector{0, 0, 0}, std::vector<double>{0.3, 0.9, 0.1}, dv({0.1, 0.1, 0.8})) == 0.0);
  CHECK(wdou(MatchVector{1, 0, 1}, ones, d) == doctest::Approx(0.7));
  CHECK(wdou(MatchVector{1, 0, 1}, std::vector<double>{0.5, 1, 1}, d) == doctest::Approx(0.6));

  CHECK_THROWS_AS(wdou(MatchVector{1, 0}, ones, d), LengthMismatch);
  CHECK_THROWS_AS(wdou(MatchVector{1, 0, 1}, std::vector<double>{1, 1}, d), LengthMismatch);
  CHECK_THROWS_AS(wdou(MatchVector{1, 0, 1}, std::vector<double>{1, 1.5, 1}, d), DomainError);
  CHECK_THROWS_AS(wdou(MatchVector{1, 0, 1}, std::vector<double>{1, -0.1, 1}, d), DomainError);
}

TEST_CASE("wdou bounds and monotonicity on random inputs") {
  Xoshiro256StarStar rng(3);
  for (int t = 0; t < 500; ++t) {
    std::size_t n = 1 + rng.uniform(10);
    std::vector<std::size_t> f(n);
    for (auto& x : f) x = 2 + rng.uniform(8);
    auto d = difficulty_vector(f);
    std::vector<double> u(n);
    for (auto& x : u) x = rng.uniform01();
    MatchVector v(n);
    for (auto& x : v) x = static_cast<std::uint8_t>(rng.uniform(2));

    double cap = 0.0;
    for (std::size_t i = 0; i < n; ++i) cap += u[i] * d.values[i];
    double s = wdou(v, u, d);
    CHECK(s >= 0.0);
    CHECK(s <= cap + 1e-12);
    CHECK(cap <= 1.0 + 1e-12);

    for (std::size_t i = 0; i < n; ++i) {
      if (v[i]) continue;
      auto up = v;
      up[i] = 1;
      CHECK(wdou(up, u, d) >= s);
    }
  }
}

TEST_CASE("cosine and sdou") {
  SentenceVector a, b, z;
  a.set("x", 1);
  a.set("y", 1);
  b.set("x", 1);
  b.set("z", 1);
  CHECK(sdou(a, a) == doctest::Approx(1.0));
  CHECK(sdou(a, b) == doctest::Approx(0.5));
  CHECK(sdou(a, b) == sdou(b, a));
  CHECK(sdou(a, z) == 0.0);
  CHECK(sdou(z, z) == 0.0);

  SentenceVector p, q;
  p.set("x", 3);
  p.set("y", 4);
  q.set("x", 4);
  q.set("y", 3);
  CHECK(cosine(p, q) == doctest::Approx(0.96));

  SentenceVector neg;
  neg.set("x", -1);
  neg.set("y", -1);
  CHECK(cosine(a, neg) == doctest::Approx(-1.0));
  CHECK(sdou(a, neg) == 0.0);

  SentenceVector disjoint;
  disjoint.set("w", 2);
  CHECK(sdou(a, disjoint) == 0.0);
}

TEST_CASE("objective") {
  CHECK(objective(1.0, 1.0) == 0.0);
  CHECK(objective(0.0, 0.0) == 2.0);
  CHECK(objective(0.7, 0.9) == doctest::Approx(0.4));
  CHECK_THROWS_AS(objective(1.1, 0.5), DomainError);
  CHECK_THROWS_AS(objective(0.5, -0.01), DomainError);

  auto r = make_report(0.7, 0.9, 1);
  CHECK(r.objective_f == doctest::Approx((1 - r.sim_w) + (1 - r.sim_s)).epsilon(1e-12));
  CHECK_FALSE(r.sim_s_original);
}

TEST_CASE("score_word_level over fixture units") {
  auto units = extract_word_units(testing::lexicon(), testing::stopwords(),
                                  "the bank is steep and runs");
  REQUIRE(units.size() == 3);
  auto s = first_sense_selection(units);
  auto r = s;
  r[2] = units[2].candidates[1];

  // f = (2, 2, 3): d = (2/7, 2/7, 3/7)
  auto full = score_word_level(units, s, s);
  CHECK(full.sim_w == doctest::Approx(1.0));
  CHECK(full_match_score(units) == doctest::Approx(1.0));
  auto part = score_word_level(units, s, r);
  CHECK(part.sim_w == doctest::Approx(4.0 / 7.0));
  REQUIRE(part.detail.size() == 3);
  CHECK(part.detail[2].match == 0);
  CHECK(part.detail[2].difficulty == doctest::Approx(3.0 / 7.0));

  CHECK(score_word_level({}, {}, {}).sim_w == 1.0);

  auto bad = s;
  bad[0] = sid('v', 2001);
  CHECK_THROWS_AS(validate_selection(units, bad), UnknownSynset);
  CHECK_THROWS_AS(validate_selection(units, MeaningSelection(2)), LengthMismatch);
  CHECK_NOTHROW(validate_selection(units, MeaningSelection(3)));
}

TEST_CASE("full understanding scores exactly one") {
  Xoshiro256StarStar rng(8);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::size_t> f(1 + rng.uniform(30));
    for (auto& x : f) x = 1 + rng.uniform(9);
    std::vector<std::uint8_t> v(f.size(), 1);
    std::vector<double> u(f.size(), 1.0);
    CHECK(wdou(v, u, difficulty_vector(f)) == 1.0);
  }
}
