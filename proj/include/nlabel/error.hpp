#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlabel {

// Base of every error the toolkit raises. Callers that only care about
// "something went wrong" catch this; the CLI maps it to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed CSV input. `record()` is the 1-based record number, counting the
// header as record 1 (0 when the failure is not tied to a record).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t record = 0)
      : Error(what), record_(record) {}

  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

// Inconsistent or incomplete command/option configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A profiler or model could not produce a payload for the given data.
class ProfileError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlabel
