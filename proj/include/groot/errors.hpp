#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace groot {

// Base for all library errors so callers can catch the whole family at once.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedBracket : Error {
  MalformedBracket(const std::string& what, std::size_t offset)
      : Error(what + " (byte offset " + std::to_string(offset) + ")"), byte_offset(offset) {}
  std::size_t byte_offset;
};

struct SequenceTooLong : Error {
  using Error::Error;
};

struct BadRow : Error {
  BadRow(const std::string& what, long line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
  long line_number;
};

struct TokenMismatch : Error {
  using Error::Error;
};

struct UnknownToken : Error {
  using Error::Error;
};

struct NonFiniteGradient : Error {
  using Error::Error;
};

struct MarginOrderViolation : Error {
  using Error::Error;
};

struct BeamTooSmall : Error {
  using Error::Error;
};

struct DegenerateBeam : Error {
  using Error::Error;
};

struct EmptyGeneration : Error {
  EmptyGeneration(const std::string& what, int iter)
      : Error(what + " (iteration " + std::to_string(iter) + ")"), iteration(iter) {}
  int iteration;
};

struct MissingInitialCheckpoint : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct FormatError : Error {
  FormatError(const std::string& what, long line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
  long line_number;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace groot
