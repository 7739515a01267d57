#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace semcom {

/// Base of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed lexicon, corpus or config line. Carries the 1-based line number.
class FormatError : public Error {
 public:
  FormatError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), source_(source), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class DanglingReference : public Error {
 public:
  using Error::Error;
};

class UnknownSynset : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyUnits : public Error {
 public:
  using Error::Error;
};

class UnresolvedEntry : public Error {
 public:
  using Error::Error;
};

enum class FrameErrorCode {
  bad_magic,
  unknown_version,
  unknown_frame_type,
  stopword_digest_mismatch,
  truncated,
  length_overflow,
  malformed,
};

const char* to_string(FrameErrorCode code) noexcept;

class FrameError : public Error {
 public:
  FrameError(FrameErrorCode code, const std::string& what)
      : Error(std::string(to_string(code)) + ": " + what), code_(code) {}

  FrameErrorCode code() const noexcept { return code_; }

 private:
  FrameErrorCode code_;
};

class ChannelClosed : public Error {
 public:
  using Error::Error;
};

/// Peer violated the session contract (unexpected frame, wrong entry count).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Connection refused, reset, or timed out talking to a remote provider.
class TransportError : public Error {
 public:
  using Error::Error;
};

class ServerError : public Error {
 public:
  ServerError(int status, const std::string& what)
      : Error("HTTP " + std::to_string(status) + ": " + what), status_(status) {}

  int status() const noexcept { return status_; }

 private:
  int status_;
};

class MaskTooLarge : public Error {
 public:
  using Error::Error;
};

class InsufficientCorpus : public Error {
 public:
  using Error::Error;
};

/// A trial failed while evaluating one transmission candidate.
class CandidateError : public Error {
 public:
  CandidateError(std::size_t index, std::string candidate, const std::string& cause)
      : Error("candidate " + std::to_string(index) + " (\"" + candidate + "\"): " + cause),
        index_(index),
        candidate_(std::move(candidate)) {}

  std::size_t index() const noexcept { return index_; }
  const std::string& candidate() const noexcept { return candidate_; }

 private:
  std::size_t index_;
  std::string candidate_;
};

}  // namespace semcom
