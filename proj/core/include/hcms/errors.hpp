#pragma once

#include <stdexcept>
#include <string>

namespace hcms {

// Root of every error raised by the library. The CLI maps each subclass to
// its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input is shorter than a kernel or pooling window; callers must pad.
class SequenceTooShortError : public Error {
 public:
  using Error::Error;
};

// Self-attention was asked to attend over an empty key set.
class AttentionDomainError : public Error {
 public:
  using Error::Error;
};

class VocabularyError : public Error {
 public:
  using Error::Error;
};

// A target vector is not one-hot.
class LabelError : public Error {
 public:
  using Error::Error;
};

// Training or evaluation was handed unusable data (e.g. an empty corpus).
class DataError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  enum class Kind { kVersion, kCorrupt, kShape };

  CheckpointError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace hcms
