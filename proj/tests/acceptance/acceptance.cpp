// Acceptance run: one PASS/FAIL line per criterion, each checked at its full
// tolerance and time budget. Exit status is the number of failures.

#include <boost/multiprecision/cpp_int.hpp>

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "semcom/dou.hpp"
#include "semcom/errors.hpp"
#include "semcom/lexicon.hpp"
#include "semcom/paraphrase.hpp"
#include "semcom/protocol.hpp"
#include "semcom/random.hpp"
#include "semcom/session.hpp"
#include "semcom/sha256.hpp"
#include "semcom/simulator.hpp"

using namespace semcom;
using Rational = boost::multiprecision::cpp_rational;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SEMCOM_FIXTURE_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Every finite double is m * 2^e for integers m, e.
Rational exact(double x) {
  int e = 0;
  double m = std::frexp(x, &e);
  auto mi = static_cast<std::int64_t>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mi);
  if (e > 0) r *= Rational(boost::multiprecision::cpp_int(1) << e);
  if (e < 0) r /= Rational(boost::multiprecision::cpp_int(1) << -e);
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --- criteria -----------------------------------------------------------------

Outcome wdou_oracle() {
  Xoshiro256StarStar rng(3);
  std::size_t cases = 0, off_rational = 0;
  double worst = 0.0, float_worst = 0.0;
  for (std::size_t d = 1; d <= 10; ++d) {
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      std::vector<std::uint8_t> v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1u;
      for (int draw = 0; draw < 100; ++draw) {
        // Importances on a dyadic grid are exact in binary, so the rational
        // oracle sees the very values the implementation does.
        std::vector<double> u(d);
        std::vector<std::size_t> f(d);
        for (std::size_t i = 0; i < d; ++i) {
          u[i] = static_cast<double>(rng.uniform(1025)) / 1024.0;
          f[i] = 1 + rng.uniform(12);
        }
        auto dv = difficulty_vector(f);
        double got = wdou(v, u, dv);

        // u_i = k_i / 1024, so the sum is one integer fraction.
        std::int64_t num = 0, total = 0;
        for (std::size_t i = 0; i < d; ++i) {
          total += static_cast<std::int64_t>(f[i]);
          if (v[i]) num += static_cast<std::int64_t>(u[i] * 1024.0) * static_cast<std::int64_t>(f[i]);
        }
        Rational oracle(num, total * 1024);
        worst = std::max(worst, std::abs(got - to_double(oracle)));
        // Numerators here are exact in binary, so one division leaves the
        // result within half an ulp of the rational value.
        Rational g = exact(got);
        double toward = g < oracle ? 2.0 : -1.0;
        off_rational += abs(g - oracle) > abs(exact(std::nextafter(got, toward)) - g) / 2;

        // Independent floating loop over the normalized d_i.
        double fsum = 0.0;
        for (auto fi : f) fsum += static_cast<double>(fi);
        double loop = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
          if (v[i]) loop += u[i] * (static_cast<double>(f[i]) / fsum);
        }
        float_worst = std::max(float_worst, std::abs(loop - got));
        ++cases;
      }
    }
  }
  return {off_rational == 0 && worst <= 1e-12 && float_worst <= 1e-12,
          fmt("%zu cases, not the rounded rational = %zu, max |wdou - rational| = %.3g, "
              "max |wdou - float loop| = %.3g",
              cases, off_rational, worst, float_worst)};
}

Outcome difficulty_normalization() {
  Xoshiro256StarStar rng(11);
  double worst_sum = 0.0;
  std::size_t misrounded = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::size_t> f(1 + rng.uniform(40));
    for (auto& x : f) x = 1 + rng.uniform(60);
    auto d = difficulty_vector(f).values;
    double sum = 0.0;
    for (double x : d) sum += x;
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));

    // d_i must be f_i / sum f, rounded once: within half an ulp of the rational.
    Rational total = 0;
    for (auto x : f) total += x;
    for (std::size_t i = 0; i < f.size(); ++i) {
      Rational want = Rational(f[i]) / total;
      Rational err = abs(exact(d[i]) - want);
      Rational half_ulp = exact(std::nextafter(d[i], 2.0) - d[i]) / 2;
      misrounded += err > half_ulp;
    }
  }
  return {worst_sum <= 1e-9 && misrounded == 0,
          fmt("max |sum d - 1| = %.3g, entries off f_i/sum f by more than half an ulp = %zu",
              worst_sum, misrounded)};
}

SynsetId random_id(Xoshiro256StarStar& rng) {
  static constexpr Pos kPos[] = {Pos::noun, Pos::verb};
  // A small id space makes accidental equality common enough to test.
  return {kPos[rng.uniform(2)], static_cast<std::uint32_t>(rng.uniform(4))};
}

Outcome checksum_soundness() {
  Xoshiro256StarStar rng(5);
  std::size_t wrong = 0, equal_pairs = 0;
  for (int t = 0; t < 10'000; ++t) {
    std::vector<SynsetId> a(rng.uniform(4)), b;
    for (auto& id : a) id = random_id(rng);
    switch (rng.uniform(3)) {
      case 0: b = a; break;
      case 1:
        b = a;
        if (!b.empty()) b[rng.uniform(b.size())] = random_id(rng);
        break;
      default:
        b.resize(rng.uniform(4));
        for (auto& id : b) id = random_id(rng);
    }
    bool same = a == b;
    equal_pairs += same;
    wrong += (compute_checksum(a).digest == compute_checksum(b).digest) != same;
  }
  bool empty_ok = to_hex(compute_checksum(MeaningSelection{}).digest) ==
                  "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";
  return {wrong == 0 && empty_ok,
          fmt("10000 pairs (%zu equal), disagreements = %zu, empty digest %s", equal_pairs, wrong,
              empty_ok ? "ok" : "WRONG")};
}

std::vector<std::uint8_t> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome frame_round_trip(const StopwordList& sw) {
  FrameCodec codec(sw.digest_prefix());
  Xoshiro256StarStar rng(9);
  auto text = [&] {
    std::string s;
    for (auto n = rng.uniform(40); n > 0; --n) s += static_cast<char>(rng.uniform(256));
    return s;
  };
  static constexpr Pos kAllPos[] = {Pos::noun, Pos::verb, Pos::adj, Pos::adv, Pos::adj_satellite};
  auto checksum = [&] {
    std::vector<SynsetId> e(rng.uniform(10));
    for (auto& id : e) id = {kAllPos[rng.uniform(5)], static_cast<std::uint32_t>(rng.uniform(100'000'000))};
    return compute_checksum(e);
  };
  std::size_t bad = 0, total = 0;
  for (int t = 0; t < 7000; ++t) {
    Frame f;
    switch (t % 7) {
      case 0: f = DataFrame{text(), checksum()}; break;
      case 1: f = AckFrame{}; break;
      case 2: f = NackFrame{checksum()}; break;
      case 3: f = ParaphraseFrame{text()}; break;
      case 4: f = DouReportFrame{rng.uniform01(), rng.uniform01()}; break;
      case 5: f = RetryFrame{text(), checksum()}; break;
      default: f = CloseFrame{}; break;
    }
    bad += !(codec.decode(codec.encode(f)) == f);
    ++total;
  }

  MeaningSelection sender{SynsetId{Pos::noun, 1001}, SynsetId{Pos::adj, 3001}};
  MeaningSelection receiver{SynsetId{Pos::noun, 1002}, SynsetId{Pos::adj_satellite, 3002}};
  std::vector<std::pair<std::string, Frame>> goldens{
      {"data", DataFrame{"the bank is steep", compute_checksum(sender)}},
      {"ack", AckFrame{}},
      {"nack", NackFrame{compute_checksum(receiver)}},
      {"paraphrase", ParaphraseFrame{"the embankment is stiff"}},
      {"dou_report", DouReportFrame{0.5, 0.75}},
      {"retry", RetryFrame{"the depository institution is steep",
                           compute_checksum(MeaningSelection{SynsetId{Pos::adj, 3001}})}},
      {"close", CloseFrame{}},
  };
  std::size_t golden_bad = 0;
  for (const auto& [name, frame] : goldens) {
    auto bytes = read_bytes(kFixtures / "frames" / (name + ".bin"));
    golden_bad += bytes.empty() || codec.encode(frame) != bytes || !(codec.decode(bytes) == frame);
  }
  return {bad == 0 && golden_bad == 0,
          fmt("%zu random frames, %zu round-trip failures, %zu/7 goldens differ", total, bad, golden_bad)};
}

struct Env {
  LexicalDatabase db;
  StopwordList sw;
  SharedKnowledge kb() const { return {db, sw}; }
};

ExperimentConfig sweep_config(std::size_t length, std::size_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.corpus_path = kFixtures / "corpus.txt";
  c.sentence_length = length;
  c.sentences_per_cell = 12;
  c.trials_per_sentence = trials;
  c.base_seed = seed;
  c.wdou_levels = {0.0, 0.5, 1.0};
  return c;
}

Outcome trend_reproduction(const ExperimentEnv& env) {
  std::size_t mono = 0, order = 0, cells = 0;
  std::string summary;
  for (std::size_t length : {5u, 15u, 25u}) {
    auto r = run_experiment_a(env, sweep_config(length, 200, 42));
    std::map<double, std::map<std::size_t, double>> by;
    for (const auto& row : r.rows) by[row.wdou_level][row.mask_count] = row.mean_sdou;
    for (const auto& [w, series] : by) {
      double prev = 2.0;
      for (const auto& [m, mean] : series) {
        mono += mean > prev;
        prev = mean;
      }
    }
    for (const auto& [m, lo] : by[0.0]) {
      ++cells;
      order += !(by[1.0][m] >= by[0.5][m] && by[0.5][m] >= lo);
    }
    summary += fmt(" L=%zu: %.3f/%.3f/%.3f;", length, by[0.0][length], by[0.5][length], by[1.0][length]);
  }
  return {mono == 0 && order == 0,
          fmt("%zu cells, mask-count violations = %zu, level-order violations = %zu; all-masked w0/w0.5/w1:",
              cells, mono, order) +
              summary};
}

Outcome optimization_property(const ExperimentEnv& env) {
  std::size_t cells = 0, worse = 0, target = 0, improved = 0;
  for (std::uint64_t seed : {1u, 7u, 42u}) {
    for (std::size_t length : {5u, 15u, 25u}) {
      auto cfg = sweep_config(length, 30, seed);
      auto r = run_experiment_b(env, cfg);
      for (const auto& row : r.rows) {
        ++cells;
        worse += *row.optimized_mean < *row.baseline_mean;
        if (row.wdou_level < 1.0) {
          ++target;
          improved += *row.optimized_mean > *row.baseline_mean;
        }
      }
    }
  }
  bool ok = worse == 0 && improved * 10 >= target * 9;
  return {ok, fmt("%zu cells, optimized < baseline in %zu; strictly improved at w in {0, 0.5}: %zu/%zu",
                  cells, worse, improved, target)};
}

Outcome perfect_sessions(const Env& e, const EmbeddingProvider& emb) {
  auto lines = load_corpus(kFixtures / "corpus.txt");
  PerfectReceiver perfect;
  std::size_t bad = 0;
  for (const auto& s : lines) {
    // No paraphraser: the sender puts the sentence itself on the wire.
    auto r = run_local_session(e.kb(), first_sense_transmission(e.kb(), s), {emb, nullptr},
                               SessionPolicy{}, perfect);
    bad += !(r.sender.checksum_matched && r.sender.rounds == 1 && r.sender.dou.sim_s == 1.0 &&
             r.sender.dou.objective_f == 0.0);
  }
  return {bad == 0 && !lines.empty(), fmt("%zu sentences, %zu imperfect", lines.size(), bad)};
}

Outcome determinism(const ExperimentEnv& env) {
  auto dir = fs::temp_directory_path() / ("semcom-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto cfg = sweep_config(15, 100, 2026);
  std::vector<std::string> texts;
  for (std::size_t threads : {1u, 1u, 4u, 4u}) {
    cfg.threads = threads;
    auto path = dir / ("run" + std::to_string(texts.size()) + ".csv");
    write_csv(run_experiment_a(env, cfg), path);
    std::ifstream in(path, std::ios::binary);
    texts.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  fs::remove_all(dir);
  bool same = texts[0] == texts[1] && texts[0] == texts[2] && texts[0] == texts[3];
  return {same && !texts[0].empty(),
          fmt("4 runs (1, 1, 4, 4 threads), %zu bytes each, %s", texts[0].size(),
              same ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  Env e{load_lexicon_dir(kFixtures / "mini-wndb"), StopwordList::load(kFixtures / "stopwords.txt")};
  BagOfSynsetsEmbedder emb(e.kb());
  SynonymParaphraser para(e.kb());
  ExperimentEnv env{e.kb(), emb, para};

  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"word-level DoU equals exact oracle", 5, wdou_oracle},
      {"difficulty normalization", 1, difficulty_normalization},
      {"checksum soundness", 5, checksum_soundness},
      {"frame round-trip and goldens", 5, [&] { return frame_round_trip(e.sw); }},
      {"SDoU trends over mask count and WDoU level", 120, [&] { return trend_reproduction(env); }},
      {"paraphrase optimization never loses, usually wins", 180,
       [&] { return optimization_property(env); }},
      {"perfect session over every corpus sentence", 10, [&] { return perfect_sessions(e, emb); }},
      {"experiment A is byte-deterministic", 120, [&] { return determinism(env); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("threw: ") + ex.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < c.budget_s;
    bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s  %-50s %7.2fs / %.0fs  %s%s\n", pass ? "PASS" : "FAIL", c.name, secs, c.budget_s,
                o.detail.c_str(), in_time ? "" : "  [over time budget]");
    std::fflush(stdout);
  }
  return failures;
}
