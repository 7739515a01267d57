#include "semcom/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <limits>

#include "semcom/errors.hpp"

namespace semcom {

const char* to_string(FrameErrorCode code) noexcept {
  switch (code) {
    case FrameErrorCode::bad_magic: return "bad magic";
    case FrameErrorCode::unknown_version: return "unknown version";
    case FrameErrorCode::unknown_frame_type: return "unknown frame type";
    case FrameErrorCode::stopword_digest_mismatch: return "stopword digest mismatch";
    case FrameErrorCode::truncated: return "truncated";
    case FrameErrorCode::length_overflow: return "length overflow";
    case FrameErrorCode::malformed: return "malformed";
  }
  return "unknown";
}

const char* to_string(FrameType type) noexcept {
  switch (type) {
    case FrameType::data: return "DATA";
    case FrameType::ack: return "CHECKSUM_ACK";
    case FrameType::nack: return "CHECKSUM_NACK";
    case FrameType::paraphrase: return "PARAPHRASE";
    case FrameType::dou_report: return "DOU_REPORT";
    case FrameType::retry: return "RETRY";
    case FrameType::close: return "CLOSE";
  }
  return "?";
}

std::string canonical_string(const MeaningSelection& selection) {
  std::string out;
  out.reserve(selection.size() * 11);
  char buf[16];
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (!selection[i]) throw UnresolvedEntry("entry " + std::to_string(i) + " is unresolved");
    std::snprintf(buf, sizeof buf, "%c:%08u", to_char(selection[i]->pos),
                  static_cast<unsigned>(selection[i]->offset));
    if (i) out.push_back(';');
    out += buf;
  }
  return out;
}

SemanticChecksum compute_checksum(const MeaningSelection& selection) {
  SemanticChecksum c;
  c.digest = sha256(canonical_string(selection));
  c.entries.reserve(selection.size());
  for (const auto& e : selection) c.entries.push_back(*e);
  return c;
}

SemanticChecksum compute_checksum(std::span<const SynsetId> entries) {
  return compute_checksum(to_selection(entries));
}

MeaningSelection to_selection(std::span<const SynsetId> entries) {
  return MeaningSelection(entries.begin(), entries.end());
}

FrameType frame_type(const Frame& frame) noexcept {
  return static_cast<FrameType>(frame.index() + 1);
}

namespace {

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::size_t v, const char* what) {
    if (v > 0xffff) {
      throw FrameError(FrameErrorCode::length_overflow, std::string(what) + " exceeds 65535");
    }
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(v >> shift));
  }
  void u64(std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(v >> shift));
  }
  void bytes(const void* p, std::size_t n) {
    auto b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void text(const std::string& s) {
    u16(s.size(), "sentence length");
    bytes(s.data(), s.size());
  }
  void checksum(const SemanticChecksum& c) {
    u16(c.entries.size(), "entry count");
    for (const auto& e : c.entries) {
      u8(static_cast<std::uint8_t>(to_char(e.pos)));
      u32(e.offset);
    }
    bytes(c.digest.data(), c.digest.size());
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t remaining() const noexcept { return in_.size() - pos_; }

  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>((in_[pos_] << 8) | in_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_++];
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | in_[pos_++];
    return v;
  }
  std::string text() {
    std::size_t n = u16();
    need(n);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  SemanticChecksum checksum() {
    SemanticChecksum c;
    std::size_t n = u16();
    need(n * 5 + c.digest.size());
    c.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto pos = pos_from_char(static_cast<char>(u8()));
      if (!pos) throw FrameError(FrameErrorCode::malformed, "bad part-of-speech byte");
      auto offset = u32();
      if (offset > SynsetId::kMaxOffset) {
        throw FrameError(FrameErrorCode::malformed, "synset offset exceeds 8 digits");
      }
      c.entries.push_back({*pos, offset});
    }
    std::memcpy(c.digest.data(), in_.data() + pos_, c.digest.size());
    pos_ += c.digest.size();
    return c;
  }

 private:
  // The outer length is already checked, so running short here means the
  // payload contradicts its own inner lengths.
  void need(std::size_t n) const {
    if (remaining() < n) throw FrameError(FrameErrorCode::malformed, "payload field overruns payload");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void encode_payload(const Frame& frame, Writer& w) {
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DataFrame> || std::is_same_v<T, RetryFrame>) {
          w.text(f.sentence);
          w.checksum(f.checksum);
        } else if constexpr (std::is_same_v<T, NackFrame>) {
          w.checksum(f.checksum);
        } else if constexpr (std::is_same_v<T, ParaphraseFrame>) {
          w.text(f.sentence);
        } else if constexpr (std::is_same_v<T, DouReportFrame>) {
          w.u64(std::bit_cast<std::uint64_t>(f.sim_w));
          w.u64(std::bit_cast<std::uint64_t>(f.sim_s));
        }
      },
      frame);
}

Frame decode_payload(FrameType type, Reader& r) {
  switch (type) {
    case FrameType::data: {
      DataFrame f;
      f.sentence = r.text();
      f.checksum = r.checksum();
      return f;
    }
    case FrameType::retry: {
      RetryFrame f;
      f.sentence = r.text();
      f.checksum = r.checksum();
      return f;
    }
    case FrameType::ack: return AckFrame{};
    case FrameType::nack: return NackFrame{r.checksum()};
    case FrameType::paraphrase: return ParaphraseFrame{r.text()};
    case FrameType::dou_report: {
      DouReportFrame f;
      f.sim_w = std::bit_cast<double>(r.u64());
      f.sim_s = std::bit_cast<double>(r.u64());
      return f;
    }
    case FrameType::close: return CloseFrame{};
  }
  throw FrameError(FrameErrorCode::unknown_frame_type, "unreachable");
}

std::size_t payload_size(const Frame& frame) {
  auto checksum_size = [](const SemanticChecksum& c) { return 2 + c.entries.size() * 5 + 32; };
  return std::visit(
      [&](const auto& f) -> std::size_t {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DataFrame> || std::is_same_v<T, RetryFrame>) {
          return 2 + f.sentence.size() + checksum_size(f.checksum);
        } else if constexpr (std::is_same_v<T, NackFrame>) {
          return checksum_size(f.checksum);
        } else if constexpr (std::is_same_v<T, ParaphraseFrame>) {
          return 2 + f.sentence.size();
        } else if constexpr (std::is_same_v<T, DouReportFrame>) {
          return 16;
        } else {
          return 0;
        }
      },
      frame);
}

}  // namespace

std::size_t encoded_size(const Frame& frame) { return kFrameHeaderSize + payload_size(frame); }

std::vector<std::uint8_t> FrameCodec::encode(const Frame& frame) const {
  std::vector<std::uint8_t> payload;
  payload.reserve(payload_size(frame));
  Writer pw(payload);
  encode_payload(frame, pw);
  if (payload.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw FrameError(FrameErrorCode::length_overflow, "payload exceeds 2^32-1 bytes");
  }

  std::vector<std::uint8_t> out;
  out.reserve(kFrameHeaderSize + payload.size());
  Writer w(out);
  w.bytes(kFrameMagic.data(), kFrameMagic.size());
  w.u8(kFrameVersion);
  w.u8(static_cast<std::uint8_t>(frame_type(frame)));
  w.bytes(prefix_.data(), prefix_.size());
  w.u32(static_cast<std::uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

FrameHeader FrameCodec::decode_header(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() < kFrameHeaderSize) {
    throw FrameError(FrameErrorCode::truncated,
                     "header needs 14 bytes, got " + std::to_string(bytes.size()));
  }
  if (!std::equal(kFrameMagic.begin(), kFrameMagic.end(), bytes.begin())) {
    throw FrameError(FrameErrorCode::bad_magic, "expected \"SMCM\"");
  }
  if (bytes[4] != kFrameVersion) {
    throw FrameError(FrameErrorCode::unknown_version, "version " + std::to_string(bytes[4]));
  }
  if (bytes[5] < 0x01 || bytes[5] > 0x07) {
    throw FrameError(FrameErrorCode::unknown_frame_type, "type " + std::to_string(bytes[5]));
  }
  if (!std::equal(prefix_.begin(), prefix_.end(), bytes.begin() + 6)) {
    throw FrameError(FrameErrorCode::stopword_digest_mismatch,
                     "peer stopword list " + to_hex(bytes.subspan(6, 4)) + ", ours " +
                         to_hex(prefix_));
  }
  FrameHeader h;
  h.type = static_cast<FrameType>(bytes[5]);
  for (int i = 10; i < 14; ++i) h.payload_length = (h.payload_length << 8) | bytes[i];
  return h;
}

Frame FrameCodec::decode(std::span<const std::uint8_t> bytes) const {
  auto header = decode_header(bytes);
  const auto body = bytes.subspan(kFrameHeaderSize);
  if (body.size() < header.payload_length) {
    throw FrameError(FrameErrorCode::truncated,
                     "payload declares " + std::to_string(header.payload_length) + " bytes, got " +
                         std::to_string(body.size()));
  }
  if (body.size() > header.payload_length) {
    throw FrameError(FrameErrorCode::malformed, "trailing bytes after payload");
  }
  Reader r(body);
  auto frame = decode_payload(header.type, r);
  if (r.remaining() != 0) {
    throw FrameError(FrameErrorCode::malformed, std::string(to_string(header.type)) +
                                                    " payload has trailing bytes");
  }
  return frame;
}

}  // namespace semcom
