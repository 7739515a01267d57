// semcom: lexicon inspection, DoU scoring, protocol sessions and experiment
// sweeps over the library. JSON goes to stdout, diagnostics to stderr.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "semcom/channel.hpp"
#include "semcom/errors.hpp"
#include "semcom/lexicon.hpp"
#include "semcom/paraphrase.hpp"
#include "semcom/pipeline.hpp"
#include "semcom/report_json.hpp"
#include "semcom/session.hpp"
#include "semcom/similarity.hpp"
#include "semcom/simulator.hpp"

namespace {

using namespace semcom;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : std::move(fallback);
}

struct Globals {
  std::string lexicon = env_or("SEMCOM_LEXICON_PATH", SEMCOM_DEFAULT_LEXICON);
  std::string stopwords = SEMCOM_DEFAULT_STOPWORDS;
  std::string model_server = env_or("SEMCOM_MODEL_SERVER_URL", "");
};

// Loaded lazily so usage errors never pay for parsing the lexicon.
struct Context {
  LexicalDatabase db;
  StopwordList stopwords;
  std::unique_ptr<EmbeddingProvider> embedder;
  std::unique_ptr<ParaphraseProvider> paraphraser;

  SharedKnowledge kb() const { return {db, stopwords}; }

  explicit Context(const Globals& g)
      : db(load_lexicon_dir(g.lexicon)), stopwords(StopwordList::load(g.stopwords)) {
    if (g.model_server.empty()) {
      embedder = std::make_unique<BagOfSynsetsEmbedder>(kb());
      paraphraser = std::make_unique<SynonymParaphraser>(kb());
    } else {
      embedder = std::make_unique<RemoteEmbedder>(g.model_server);
      paraphraser = std::make_unique<RemoteParaphraser>(g.model_server);
    }
  }
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path, 1, e.what());
  }
}

// --- lexicon inspect --------------------------------------------------------

void cmd_lexicon_inspect(const Globals& g, const std::string& lemma) {
  Context ctx(g);
  std::cout << to_json(ctx.db, lemma).dump(2) << '\n';
}

// --- dou score --------------------------------------------------------------

struct ScoreArgs {
  std::string sentence;
  std::string receiver_selection;
  std::string sender_selection;
  std::string receiver_sentence;
};

void cmd_dou_score(const Globals& g, const ScoreArgs& a) {
  Context ctx(g);
  auto units = extract_word_units(ctx.db, ctx.stopwords, a.sentence);
  auto sender = a.sender_selection.empty() ? first_sense_selection(units)
                                           : selection_from_json(read_json_file(a.sender_selection));
  auto receiver = selection_from_json(read_json_file(a.receiver_selection));
  validate_selection(units, sender);
  validate_selection(units, receiver);

  auto word = score_word_level(units, sender, receiver);
  const auto& theirs = a.receiver_sentence.empty() ? a.sentence : a.receiver_sentence;
  double sim_s = sdou(ctx.embedder->embed_one(a.sentence), ctx.embedder->embed_one(theirs));
  auto report = make_report(word.sim_w, sim_s, 1, word.detail);

  auto out = to_json(report);
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < units.size(); ++i) {
    list.push_back({{"surface", units[i].surface},
                    {"lemma", units[i].lookup_lemma},
                    {"sense_count", units[i].sense_count()},
                    {"sender", to_string(*sender[i])},
                    {"receiver", receiver[i] ? nlohmann::json(to_string(*receiver[i])) : nullptr}});
  }
  out["units"] = std::move(list);
  std::cout << out.dump(2) << '\n';
}

// --- session run ------------------------------------------------------------

struct SessionArgs {
  std::string role;
  std::string transport = "stdio";
  std::string sentence;
  std::string selection;
  std::string report;
  std::size_t max_rounds = 3;
  double f_threshold = 0.1;
  std::string sender_mode = "paraphrase";
  std::uint64_t seed = 0;
  std::size_t mask_count = 0;
  bool mask_all = false;
  double wdou_level = 1.0;
  bool smoothing = false;
};

std::pair<std::string, std::uint16_t> parse_tcp(const std::string& transport) {
  auto spec = transport.substr(4);
  auto colon = spec.rfind(':');
  if (colon == std::string::npos) throw UsageError("transport must be tcp:<host>:<port>");
  auto host = spec.substr(0, colon);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
    host = host.substr(1, host.size() - 2);
  }
  int port = 0;
  try {
    port = std::stoi(spec.substr(colon + 1));
  } catch (const std::exception&) {
    port = 0;
  }
  if (port <= 0 || port > 65535) throw UsageError("bad port in " + transport);
  return {host, static_cast<std::uint16_t>(port)};
}

void cmd_session_run(const Globals& g, const SessionArgs& a) {
  const bool sender = a.role == "sender";
  if (sender && a.sentence.empty()) throw UsageError("--sentence is required for the sender");
  const bool tcp = a.transport.rfind("tcp:", 0) == 0;
  if (!tcp && a.transport != "stdio") throw UsageError("transport must be stdio or tcp:<addr>");
  std::pair<std::string, std::uint16_t> addr;
  if (tcp) addr = parse_tcp(a.transport);

  Context ctx(g);
  FrameCodec codec(ctx.stopwords.digest_prefix());
  std::unique_ptr<StreamChannel> channel;
  if (tcp) {
    int fd = sender ? tcp_connect(addr.first, addr.second) : tcp_accept_one(addr.first, addr.second);
    channel = std::make_unique<StreamChannel>(fd, fd, codec, true);
  } else {
    channel = std::make_unique<StreamChannel>(STDIN_FILENO, STDOUT_FILENO, codec);
  }

  SessionReport report;
  if (sender) {
    auto tx = first_sense_transmission(ctx.kb(), a.sentence);
    if (!a.selection.empty()) tx.selection = selection_from_json(read_json_file(a.selection));
    SessionPolicy policy;
    policy.max_rounds = a.max_rounds;
    policy.f_threshold = a.f_threshold;
    policy.sender_mode = a.sender_mode == "original" ? SenderMode::original : SenderMode::paraphrase;
    policy.seed = a.seed;
    report = sender_run(ctx.kb(), std::move(tx), {*ctx.embedder, ctx.paraphraser.get()}, policy,
                        *channel);
  } else if (a.mask_all || a.mask_count > 0) {
    ImpairedReceiver behavior(ctx.kb(), {a.mask_count, a.mask_all, a.wdou_level, a.seed, a.smoothing},
                              ctx.paraphraser.get());
    report = receiver_run(ctx.kb(), behavior, *channel);
  } else {
    PerfectReceiver behavior;
    report = receiver_run(ctx.kb(), behavior, *channel);
  }

  auto out = to_json(report);
  out["role"] = a.role;
  auto text = out.dump(2) + "\n";
  if (!a.report.empty()) {
    std::ofstream f(a.report, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text)) throw IoError("cannot write " + a.report);
  } else if (tcp) {
    std::cout << text;
  } else {
    // stdout carries frames; keep it clean.
    std::cerr << text;
  }
}

// --- experiment -------------------------------------------------------------

struct ExperimentArgs {
  std::string config;
  std::string csv;
  std::string svg;
  int threads = -1;
};

void cmd_experiment(const Globals& g, ExperimentKind kind, const ExperimentArgs& a) {
  auto cfg = load_experiment_config(a.config);
  if (!a.csv.empty()) cfg.csv_path = a.csv;
  if (!a.svg.empty()) cfg.svg_path = a.svg;
  if (a.threads >= 0) cfg.threads = static_cast<std::size_t>(a.threads);

  Context ctx(g);
  ExperimentEnv env{ctx.kb(), *ctx.embedder, *ctx.paraphraser};
  auto result = kind == ExperimentKind::a ? run_experiment_a(env, cfg) : run_experiment_b(env, cfg);

  if (cfg.csv_path) {
    write_csv(result, *cfg.csv_path);
    std::cerr << "wrote " << cfg.csv_path->string() << '\n';
  } else {
    std::cout << to_csv(result);
  }
  if (cfg.svg_path) {
    render_chart(result, *cfg.svg_path);
    std::cerr << "wrote " << cfg.svg_path->string() << '\n';
  }
}

// --- corpus filter ----------------------------------------------------------

void cmd_corpus_filter(const std::string& corpus, std::size_t length) {
  for (const auto& s : filter_by_length(load_corpus(corpus), length)) std::cout << s << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGPIPE, SIG_IGN);

  CLI::App app{"semcom: degree-of-understanding tools for semantic communication"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--lexicon", g.lexicon, "wndb directory (env SEMCOM_LEXICON_PATH)");
  app.add_option("--stopwords", g.stopwords, "stopword list shared by both parties");
  app.add_option("--model-server", g.model_server,
                 "model server URL for embeddings and paraphrases (env SEMCOM_MODEL_SERVER_URL)");

  std::function<void()> action;

  auto* lexicon = app.add_subcommand("lexicon", "Inspect the lexical database");
  lexicon->require_subcommand(1);
  auto* inspect = lexicon->add_subcommand("inspect", "Senses, sense count and synonyms of a lemma");
  std::string lemma;
  inspect->add_option("lemma", lemma)->required();
  inspect->callback([&] { action = [&] { cmd_lexicon_inspect(g, lemma); }; });

  auto* dou = app.add_subcommand("dou", "Degree-of-understanding scoring");
  dou->require_subcommand(1);
  auto* score = dou->add_subcommand("score", "Score a receiver selection against a sentence");
  ScoreArgs sa;
  score->add_option("--sentence", sa.sentence)->required();
  score->add_option("--receiver-selection", sa.receiver_selection, "JSON array of synset ids")
      ->required();
  score->add_option("--sender-selection", sa.sender_selection, "default: first senses");
  score->add_option("--receiver-sentence", sa.receiver_sentence, "default: the sentence itself");
  score->callback([&] { action = [&] { cmd_dou_score(g, sa); }; });

  auto* session = app.add_subcommand("session", "Protocol sessions");
  session->require_subcommand(1);
  auto* run = session->add_subcommand("run", "Run one endpoint of a session");
  SessionArgs ss;
  run->add_option("--role", ss.role)->required()->check(CLI::IsMember({"sender", "receiver"}));
  run->add_option("--transport", ss.transport, "stdio or tcp:<host>:<port>");
  run->add_option("--sentence", ss.sentence, "sentence to transmit (sender)");
  run->add_option("--selection", ss.selection, "sender selection JSON (default: first senses)");
  run->add_option("--report", ss.report, "write the session report here");
  run->add_option("--max-rounds", ss.max_rounds)->check(CLI::PositiveNumber);
  run->add_option("--f-threshold", ss.f_threshold)->check(CLI::Range(0.0, 2.0));
  run->add_option("--sender-mode", ss.sender_mode)
      ->check(CLI::IsMember({"original", "paraphrase"}));
  run->add_option("--seed", ss.seed);
  run->add_option("--mask-count", ss.mask_count, "receiver: tokens to mask");
  run->add_flag("--mask-all", ss.mask_all, "receiver: mask every token");
  run->add_option("--wdou-level", ss.wdou_level)->check(CLI::Range(0.0, 1.0));
  run->add_flag("--smoothing", ss.smoothing);
  run->callback([&] { action = [&] { cmd_session_run(g, ss); }; });

  auto* experiment = app.add_subcommand("experiment", "Seeded experiment sweeps");
  experiment->require_subcommand(1);
  ExperimentArgs ea;
  for (auto [name, kind] : {std::pair{"a", ExperimentKind::a}, std::pair{"b", ExperimentKind::b}}) {
    auto* sub = experiment->add_subcommand(
        name, kind == ExperimentKind::a ? "SDoU vs masked words" : "paraphrase optimization");
    sub->add_option("--config", ea.config)->required()->check(CLI::ExistingFile);
    sub->add_option("--csv", ea.csv, "override output.csv");
    sub->add_option("--svg", ea.svg, "override output.svg");
    sub->add_option("--threads", ea.threads, "worker threads, 0 = all cores");
    sub->callback([&, kind = kind] { action = [&, kind] { cmd_experiment(g, kind, ea); }; });
  }

  auto* corpus = app.add_subcommand("corpus", "Corpus utilities");
  corpus->require_subcommand(1);
  auto* filter = corpus->add_subcommand("filter", "Sentences with exactly n tokens");
  std::size_t length = 0;
  std::string corpus_path = SEMCOM_DEFAULT_CORPUS;
  filter->add_option("--length", length)->required();
  filter->add_option("--corpus", corpus_path);
  filter->callback([&] { action = [&] { cmd_corpus_filter(corpus_path, length); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
