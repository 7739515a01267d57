#include "semcom/similarity.hpp"

#include <cmath>

#include "http_client.hpp"
#include "semcom/errors.hpp"
#include "semcom/porter.hpp"

namespace semcom {

void SentenceVector::add(const std::string& key, double weight) {
  if (weight == 0.0) return;
  auto [it, inserted] = weights_.emplace(key, weight);
  if (!inserted) {
    it->second += weight;
    if (it->second == 0.0) weights_.erase(it);
  }
}

void SentenceVector::set(const std::string& key, double weight) {
  if (weight == 0.0) weights_.erase(key);
  else weights_[key] = weight;
}

double SentenceVector::get(const std::string& key) const {
  auto it = weights_.find(key);
  return it == weights_.end() ? 0.0 : it->second;
}

double cosine(const SentenceVector& a, const SentenceVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [_, w] : a.weights()) na += w * w;
  for (const auto& [_, w] : b.weights()) nb += w * w;
  // Merge walk over the two sorted key sets.
  auto ia = a.weights().begin(), ib = b.weights().begin();
  while (ia != a.weights().end() && ib != b.weights().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

SentenceVector EmbeddingProvider::embed_one(const std::string& sentence) const {
  auto out = embed(std::span(&sentence, 1));
  if (out.size() != 1) throw ProtocolError("embedding provider returned wrong vector count");
  return std::move(out.front());
}

SentenceVector embed_bag_of_synsets(const SharedKnowledge& kb, std::string_view sentence) {
  SentenceVector v;
  for (const auto& tok : remove_stopwords(tokenize(sentence), kb.stopwords)) {
    auto senses = kb.lexicon.senses(lookup_lemma_for(kb.lexicon, tok.surface));
    if (senses.empty()) {
      v.add("stem:" + porter_stem(tok.surface), 1.0);
      continue;
    }
    const double w = 1.0 / static_cast<double>(senses.size());
    for (const auto& id : senses) v.add(to_string(id), w);
  }
  return v;
}

std::vector<SentenceVector> BagOfSynsetsEmbedder::embed(
    std::span<const std::string> sentences) const {
  std::vector<SentenceVector> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(embed_bag_of_synsets(kb_, s));
  return out;
}

std::vector<SentenceVector> remote_embed(const std::string& endpoint,
                                         std::span<const std::string> sentences,
                                         std::chrono::milliseconds timeout) {
  nlohmann::json request{{"texts", std::vector<std::string>(sentences.begin(), sentences.end())}};
  auto reply = detail::post_json(endpoint, "/embed", request, timeout);

  if (!reply.is_object() || !reply.contains("vectors") || !reply["vectors"].is_array()) {
    throw ProtocolError("/embed reply lacks a 'vectors' array");
  }
  const auto& vectors = reply["vectors"];
  if (vectors.size() != sentences.size()) {
    throw ProtocolError("/embed returned " + std::to_string(vectors.size()) + " vectors for " +
                        std::to_string(sentences.size()) + " texts");
  }
  std::vector<SentenceVector> out;
  out.reserve(vectors.size());
  std::size_t dim = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& vec = vectors[i];
    if (!vec.is_array()) throw ProtocolError("/embed vector " + std::to_string(i) + " is not an array");
    if (i == 0) dim = vec.size();
    else if (vec.size() != dim) throw ProtocolError("/embed vectors differ in length");
    SentenceVector sv;
    for (std::size_t k = 0; k < vec.size(); ++k) {
      if (!vec[k].is_number()) throw ProtocolError("/embed vector holds a non-number");
      double x = vec[k].get<double>();
      if (!std::isfinite(x)) throw ProtocolError("/embed vector holds a non-finite number");
      sv.set("e" + std::to_string(k), x);
    }
    out.push_back(std::move(sv));
  }
  return out;
}

}  // namespace semcom
