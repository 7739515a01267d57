#include "semcom/channel.hpp"

#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <vector>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

struct Mailbox {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::vector<std::uint8_t>> queue;
  bool closed = false;
};

class MemoryChannel final : public Channel {
 public:
  MemoryChannel(std::shared_ptr<Mailbox> in, std::shared_ptr<Mailbox> out, FrameCodec codec)
      : in_(std::move(in)), out_(std::move(out)), codec_(codec) {}

  ~MemoryChannel() override {
    std::lock_guard lock(out_->mu);
    out_->closed = true;
    out_->cv.notify_all();
  }

  void send(const Frame& frame) override {
    auto bytes = codec_.encode(frame);
    std::lock_guard lock(out_->mu);
    out_->queue.push_back(std::move(bytes));
    out_->cv.notify_all();
  }

  Frame receive() override {
    std::unique_lock lock(in_->mu);
    in_->cv.wait(lock, [&] { return !in_->queue.empty() || in_->closed; });
    if (in_->queue.empty()) throw ChannelClosed("peer closed the in-memory channel");
    auto bytes = std::move(in_->queue.front());
    in_->queue.pop_front();
    lock.unlock();
    return codec_.decode(bytes);
  }

 private:
  std::shared_ptr<Mailbox> in_;
  std::shared_ptr<Mailbox> out_;
  FrameCodec codec_;
};

// Reads exactly n bytes; false on clean EOF before the first byte.
bool read_exact(int fd, std::uint8_t* p, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    ssize_t r = ::read(fd, p + got, n - got);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("read: ") + std::strerror(errno));
    }
    if (r == 0) {
      if (got == 0) return false;
      throw FrameError(FrameErrorCode::truncated, "stream ended inside a frame");
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

void write_all(int fd, const std::uint8_t* p, std::size_t n) {
  while (n > 0) {
    ssize_t w = ::write(fd, p, n);
    if (w < 0) {
      if (errno == EINTR) continue;
      if (errno == EPIPE) throw ChannelClosed("peer closed the stream");
      throw TransportError(std::string("write: ") + std::strerror(errno));
    }
    p += w;
    n -= static_cast<std::size_t>(w);
  }
}

addrinfo* resolve(const std::string& host, std::uint16_t port, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  auto service = std::to_string(port);
  int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints, &res);
  if (rc != 0) throw TransportError("resolve " + host + ": " + ::gai_strerror(rc));
  return res;
}

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_memory_channel_pair(
    const FrameCodec& codec) {
  auto a_to_b = std::make_shared<Mailbox>();
  auto b_to_a = std::make_shared<Mailbox>();
  return {std::make_unique<MemoryChannel>(b_to_a, a_to_b, codec),
          std::make_unique<MemoryChannel>(a_to_b, b_to_a, codec)};
}

StreamChannel::StreamChannel(int read_fd, int write_fd, FrameCodec codec, bool owns)
    : read_fd_(read_fd), write_fd_(write_fd), codec_(codec), owns_(owns) {}

StreamChannel::~StreamChannel() {
  if (!owns_) return;
  ::close(read_fd_);
  if (write_fd_ != read_fd_) ::close(write_fd_);
}

void StreamChannel::send(const Frame& frame) {
  auto bytes = codec_.encode(frame);
  write_all(write_fd_, bytes.data(), bytes.size());
}

Frame StreamChannel::receive() {
  std::vector<std::uint8_t> buf(kFrameHeaderSize);
  if (!read_exact(read_fd_, buf.data(), buf.size())) throw ChannelClosed("peer closed the stream");
  auto header = codec_.decode_header(buf);
  if (header.payload_length > kMaxPayload) {
    throw FrameError(FrameErrorCode::length_overflow,
                     "payload of " + std::to_string(header.payload_length) + " bytes");
  }
  buf.resize(kFrameHeaderSize + header.payload_length);
  if (header.payload_length > 0 &&
      !read_exact(read_fd_, buf.data() + kFrameHeaderSize, header.payload_length)) {
    throw FrameError(FrameErrorCode::truncated, "stream ended before the payload");
  }
  return codec_.decode(buf);
}

int tcp_connect(const std::string& host, std::uint16_t port) {
  addrinfo* res = resolve(host, port, false);
  int fd = -1;
  for (auto* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    throw TransportError("connect " + host + ":" + std::to_string(port) + ": " +
                         std::strerror(errno));
  }
  return fd;
}

int tcp_accept_one(const std::string& host, std::uint16_t port) {
  addrinfo* res = resolve(host, port, true);
  int lfd = -1;
  for (auto* ai = res; ai; ai = ai->ai_next) {
    lfd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (lfd < 0) continue;
    int one = 1;
    ::setsockopt(lfd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(lfd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(lfd, 1) == 0) break;
    ::close(lfd);
    lfd = -1;
  }
  ::freeaddrinfo(res);
  if (lfd < 0) {
    throw TransportError("listen " + host + ":" + std::to_string(port) + ": " +
                         std::strerror(errno));
  }
  int fd;
  do {
    fd = ::accept(lfd, nullptr, nullptr);
  } while (fd < 0 && errno == EINTR);
  int saved = errno;
  ::close(lfd);
  if (fd < 0) throw TransportError(std::string("accept: ") + std::strerror(saved));
  return fd;
}

}  // namespace semcom
