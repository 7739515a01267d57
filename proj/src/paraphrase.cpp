#include "semcom/paraphrase.hpp"

#include <algorithm>

#include "http_client.hpp"
#include "semcom/errors.hpp"
#include "semcom/random.hpp"

namespace semcom {

namespace {

std::string render_lemma(std::string_view lemma) {
  std::string out(lemma);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

}  // namespace

VariantSet synonym_paraphrase(const SharedKnowledge& kb, std::string_view sentence,
                              std::size_t count, std::uint64_t seed) {
  if (count == 0) throw DomainError("paraphrase count must be at least 1");
  const auto tokens = tokenize(sentence);

  // Candidate senses per substitutable token, resolved once.
  std::vector<std::vector<SynsetId>> senses(tokens.size());
  for (const auto& tok : tokens) {
    if (kb.stopwords.contains(tok.surface)) continue;
    senses[tok.index] = kb.lexicon.senses(lookup_lemma_for(kb.lexicon, tok.surface));
  }

  VariantSet out;
  out.original = std::string(sentence);
  out.generator = "synonym-substitution/1";
  out.seed = seed;
  out.variants.reserve(count);

  std::vector<TokenReplacement> replacements;
  for (std::size_t v = 0; v < count; ++v) {
    replacements.clear();
    for (const auto& tok : tokens) {
      const auto& cands = senses[tok.index];
      if (cands.empty()) continue;
      Xoshiro256StarStar rng(derive_seed(seed, {v, tok.index}));
      if (rng.bernoulli(0.5)) continue;
      const auto& synset = cands[rng.uniform(cands.size())];
      const auto& lemmas = kb.lexicon.lemmas_of(synset);
      const auto& lemma = lemmas[rng.uniform(lemmas.size())];
      if (lemma == tok.surface) continue;
      replacements.push_back({tok.index, render_lemma(lemma)});
    }
    out.variants.push_back(splice_tokens(sentence, tokens, replacements));
  }
  return out;
}

VariantSet remote_paraphrase(const std::string& endpoint, const std::string& sentence,
                             std::size_t count, std::chrono::milliseconds timeout,
                             std::optional<std::uint64_t> seed) {
  nlohmann::json request{{"text", sentence}, {"n", count}};
  if (seed) request["seed"] = *seed;
  auto reply = detail::post_json(endpoint, "/paraphrase", request, timeout);

  if (!reply.is_object() || !reply.contains("variants") || !reply["variants"].is_array()) {
    throw ProtocolError("/paraphrase reply lacks a 'variants' array");
  }
  const auto& variants = reply["variants"];
  if (variants.size() != count) {
    throw ProtocolError("/paraphrase returned " + std::to_string(variants.size()) +
                        " variants, expected " + std::to_string(count));
  }
  VariantSet out;
  out.original = sentence;
  out.generator = reply.contains("model") && reply["model"].is_string()
                      ? "remote:" + reply["model"].get<std::string>()
                      : "remote:" + endpoint;
  out.seed = seed.value_or(0);
  for (const auto& v : variants) {
    if (!v.is_string()) throw ProtocolError("/paraphrase variant is not a string");
    out.variants.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<ScoredVariant> filter_top_k(const std::string& original, const VariantSet& variants,
                                        const EmbeddingProvider& provider, std::size_t k) {
  if (k == 0) throw DomainError("top-k needs k >= 1");
  std::vector<std::string> batch;
  batch.reserve(variants.variants.size() + 1);
  batch.push_back(original);
  batch.insert(batch.end(), variants.variants.begin(), variants.variants.end());
  auto vectors = provider.embed(batch);
  if (vectors.size() != batch.size()) {
    throw ProtocolError("embedding provider returned wrong vector count");
  }

  std::vector<ScoredVariant> scored;
  scored.reserve(variants.variants.size());
  for (std::size_t i = 0; i < variants.variants.size(); ++i) {
    scored.push_back({i, variants.variants[i], sdou(vectors[0], vectors[i + 1])});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.similarity > b.similarity; });
  scored.resize(std::min(k, scored.size()));
  return scored;
}

TransmissionChoice select_best_transmission(const std::string& original,
                                            std::span<const std::string> candidates,
                                            const TransmissionTrial& trial) {
  auto evaluate = [&](std::size_t index, const std::string& sentence) {
    try {
      return trial(sentence);
    } catch (const CandidateError&) {
      throw;
    } catch (const std::exception& e) {
      throw CandidateError(index, sentence, e.what());
    }
  };

  TransmissionChoice best{0, original, evaluate(0, original)};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto report = evaluate(i + 1, candidates[i]);
    if (report.objective_f < best.report.objective_f) {
      best = {i + 1, candidates[i], std::move(report)};
    }
  }
  return best;
}

}  // namespace semcom
