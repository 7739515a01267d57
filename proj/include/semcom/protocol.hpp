#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "semcom/dou.hpp"
#include "semcom/lexicon.hpp"
#include "semcom/sha256.hpp"

namespace semcom {

/// Ordered sense choices plus the SHA-256 of their canonical rendering.
/// Decoded frames may carry a digest that does not match the entries; that
/// is exactly what the receiver checks.
struct SemanticChecksum {
  std::vector<SynsetId> entries;
  Digest digest{};

  friend bool operator==(const SemanticChecksum&, const SemanticChecksum&) = default;
};

/// "n:00001001;v:00002002". Throws UnresolvedEntry.
std::string canonical_string(const MeaningSelection& selection);
SemanticChecksum compute_checksum(const MeaningSelection& selection);
SemanticChecksum compute_checksum(std::span<const SynsetId> entries);

MeaningSelection to_selection(std::span<const SynsetId> entries);

enum class FrameType : std::uint8_t {
  data = 0x01,
  ack = 0x02,
  nack = 0x03,
  paraphrase = 0x04,
  dou_report = 0x05,
  retry = 0x06,
  close = 0x07,
};

const char* to_string(FrameType type) noexcept;

struct DataFrame {
  std::string sentence;
  SemanticChecksum checksum;
  friend bool operator==(const DataFrame&, const DataFrame&) = default;
};

struct AckFrame {
  friend bool operator==(const AckFrame&, const AckFrame&) = default;
};

/// Carries the receiver's full selection so the sender can evaluate v.
struct NackFrame {
  SemanticChecksum checksum;
  friend bool operator==(const NackFrame&, const NackFrame&) = default;
};

struct ParaphraseFrame {
  std::string sentence;
  friend bool operator==(const ParaphraseFrame&, const ParaphraseFrame&) = default;
};

struct DouReportFrame {
  double sim_w = 0.0;
  double sim_s = 0.0;
  friend bool operator==(const DouReportFrame&, const DouReportFrame&) = default;
};

struct RetryFrame {
  std::string sentence;
  SemanticChecksum checksum;
  friend bool operator==(const RetryFrame&, const RetryFrame&) = default;
};

struct CloseFrame {
  friend bool operator==(const CloseFrame&, const CloseFrame&) = default;
};

using Frame = std::variant<DataFrame, AckFrame, NackFrame, ParaphraseFrame, DouReportFrame,
                           RetryFrame, CloseFrame>;

FrameType frame_type(const Frame& frame) noexcept;

inline constexpr std::array<std::uint8_t, 4> kFrameMagic{'S', 'M', 'C', 'M'};
inline constexpr std::uint8_t kFrameVersion = 0x01;
inline constexpr std::size_t kFrameHeaderSize = 14;

using DigestPrefix = std::array<std::uint8_t, 4>;

/// Header-only view, enough to size the rest of a frame on a byte stream.
struct FrameHeader {
  FrameType type = FrameType::data;
  std::uint32_t payload_length = 0;
};

/// Encodes and decodes frames for one stopword list. Every header carries the
/// list's digest prefix; decoding a frame stamped with another prefix fails
/// with stopword_digest_mismatch.
class FrameCodec {
 public:
  explicit FrameCodec(DigestPrefix prefix) : prefix_(prefix) {}

  const DigestPrefix& prefix() const noexcept { return prefix_; }

  /// Throws FrameError(length_overflow) when a field exceeds its width.
  std::vector<std::uint8_t> encode(const Frame& frame) const;

  /// `bytes` must hold exactly one frame.
  Frame decode(std::span<const std::uint8_t> bytes) const;

  /// Validates magic, version, type and prefix. Needs kFrameHeaderSize bytes.
  FrameHeader decode_header(std::span<const std::uint8_t> bytes) const;

 private:
  DigestPrefix prefix_;
};

/// Size of the encoded frame in bytes, header included.
std::size_t encoded_size(const Frame& frame);

}  // namespace semcom
