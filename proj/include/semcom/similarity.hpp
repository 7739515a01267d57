#pragma once

#include <chrono>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "semcom/pipeline.hpp"

namespace semcom {

/// Sparse feature vector keyed by dimension name. Zero weights are never stored.
class SentenceVector {
 public:
  SentenceVector() = default;

  void add(const std::string& key, double weight);
  void set(const std::string& key, double weight);
  double get(const std::string& key) const;

  bool empty() const noexcept { return weights_.empty(); }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::map<std::string, double>& weights() const noexcept { return weights_; }

  friend bool operator==(const SentenceVector&, const SentenceVector&) = default;

 private:
  std::map<std::string, double> weights_;
};

/// sum a_k b_k / (|a| |b|); 0 when either side is the zero vector.
double cosine(const SentenceVector& a, const SentenceVector& b);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<SentenceVector> embed(std::span<const std::string> sentences) const = 0;
  virtual std::string identity() const = 0;

  SentenceVector embed_one(const std::string& sentence) const;
};

/// Bag of candidate synsets: each known word adds 1/f to each of its f
/// synset dimensions ("n:00001001"); unknown words add 1 to "stem:<stem>".
SentenceVector embed_bag_of_synsets(const SharedKnowledge& kb, std::string_view sentence);

class BagOfSynsetsEmbedder final : public EmbeddingProvider {
 public:
  explicit BagOfSynsetsEmbedder(SharedKnowledge kb) : kb_(kb) {}

  std::vector<SentenceVector> embed(std::span<const std::string> sentences) const override;
  std::string identity() const override { return "bag-of-synsets/1"; }

 private:
  SharedKnowledge kb_;
};

constexpr std::chrono::milliseconds kDefaultRemoteTimeout{10'000};

/// POST {endpoint}/embed. Dense components become keys "e0", "e1", ...
/// Throws TransportError, ServerError or ProtocolError.
std::vector<SentenceVector> remote_embed(const std::string& endpoint,
                                         std::span<const std::string> sentences,
                                         std::chrono::milliseconds timeout = kDefaultRemoteTimeout);

class RemoteEmbedder final : public EmbeddingProvider {
 public:
  explicit RemoteEmbedder(std::string endpoint,
                          std::chrono::milliseconds timeout = kDefaultRemoteTimeout)
      : endpoint_(std::move(endpoint)), timeout_(timeout) {}

  std::vector<SentenceVector> embed(std::span<const std::string> sentences) const override {
    return remote_embed(endpoint_, sentences, timeout_);
  }
  std::string identity() const override { return "remote:" + endpoint_; }

 private:
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

}  // namespace semcom
