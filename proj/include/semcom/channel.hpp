#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "semcom/protocol.hpp"

namespace semcom {

/// Reliable, ordered, frame-at-a-time duplex link.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(const Frame& frame) = 0;
  /// Blocks until a frame arrives. Throws ChannelClosed once the peer is gone.
  virtual Frame receive() = 0;
};

/// Two connected in-process endpoints. Frames cross as encoded bytes, so the
/// codec is exercised exactly as on a socket. Safe to drive from two threads.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_memory_channel_pair(
    const FrameCodec& codec);

/// Framing over a pair of file descriptors (pipes or a socket). Does not own
/// the descriptors unless `owns` is set.
class StreamChannel final : public Channel {
 public:
  static constexpr std::uint32_t kMaxPayload = 16u << 20;

  StreamChannel(int read_fd, int write_fd, FrameCodec codec, bool owns = false);
  ~StreamChannel() override;

  StreamChannel(const StreamChannel&) = delete;
  StreamChannel& operator=(const StreamChannel&) = delete;

  void send(const Frame& frame) override;
  Frame receive() override;

 private:
  int read_fd_;
  int write_fd_;
  FrameCodec codec_;
  bool owns_;
};

/// Connects to host:port. Throws TransportError.
int tcp_connect(const std::string& host, std::uint16_t port);
/// Listens on host:port and accepts one peer. Throws TransportError.
int tcp_accept_one(const std::string& host, std::uint16_t port);

}  // namespace semcom
