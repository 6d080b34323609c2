#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tetroc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or vector that must lie in the FCC lattice has an odd coordinate sum.
class LatticeError : public Error {
 public:
  using Error::Error;
};

class BlockError : public Error {
 public:
  enum class Kind { invalid_params, duplicate_cell, disconnected, empty };
  BlockError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Two placements of an assembly share a honeycomb cell.
class OverlapError : public Error {
 public:
  OverlapError(std::size_t first, std::size_t second, const std::string& what)
      : Error(what), first_(first), second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class InterlockError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  enum class Kind {
    open_failed,
    malformed_header,
    truncated,
    count_mismatch,
    malformed_ascii,
    schema,
    parity,
    rotation,
  };
  IoError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace tetroc
