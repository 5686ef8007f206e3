#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace driftbench {

// Values double as process exit codes for the command-line tool.
enum class ErrorKind : int {
  usage = 1,
  data = 2,
  numerical = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class EncodingError : public DataError {
 public:
  explicit EncodingError(std::size_t offset)
      : DataError("invalid UTF-8 at byte offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class LookupError : public DataError {
 public:
  explicit LookupError(const std::string& word)
      : DataError("unknown word '" + word + "'"), word_(word) {}

  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

class EmptyVocabularyError : public DataError {
 public:
  explicit EmptyVocabularyError(const std::string& why = "no token survives vocabulary filtering")
      : DataError(why) {}
};

class ConfigError : public UsageError {
 public:
  explicit ConfigError(const std::string& what) : UsageError(what) {}
};

}  // namespace driftbench
