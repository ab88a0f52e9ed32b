#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflab {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExactModeUnavailable : public Error {
 public:
  using Error::Error;
};

class SliceTooLarge : public Error {
 public:
  SliceTooLarge(std::size_t cap, int depth)
      : Error("root slice exceeds cap of " + std::to_string(cap) + " roots at depth " +
              std::to_string(depth)),
        cap_(cap),
        depth_(depth) {}
  std::size_t cap() const noexcept { return cap_; }
  int depth() const noexcept { return depth_; }

 private:
  std::size_t cap_;
  int depth_;
};

class DegenerateQuadratic : public Error {
 public:
  DegenerateQuadratic() : Error("segment lies entirely in the isotropic cone") {}
};

class RankUnsupported : public Error {
 public:
  explicit RankUnsupported(int rank)
      : Error("operation requires rank 3, got rank " + std::to_string(rank)) {}
};

class ClosureEscapesSlice : public Error {
 public:
  using Error::Error;
};

class EqualNormalizedCoordinates : public Error {
 public:
  EqualNormalizedCoordinates(std::uint32_t a, std::uint32_t b)
      : Error("roots " + std::to_string(a) + " and " + std::to_string(b) +
              " have equal normalized coordinates") {}
};

class NotAnInversionPrefix : public Error {
 public:
  explicit NotAnInversionPrefix(std::size_t index)
      : Error("order prefix is not an inversion sequence at position " + std::to_string(index)),
        index_(index) {}
  /// 1-based position of the first element that failed to peel.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class InsufficientCandidates : public Error {
 public:
  using Error::Error;
};

class NotFiniteType : public Error {
 public:
  using Error::Error;
};

class WordNotReduced : public Error {
 public:
  explicit WordNotReduced(std::size_t index)
      : Error("word is not reduced at letter " + std::to_string(index)), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotAPartition : public Error {
 public:
  using Error::Error;
};

class BlockViolation : public Error {
 public:
  BlockViolation(const std::string& what, std::vector<std::uint32_t> ids)
      : Error(what), ids_(std::move(ids)) {}
  const std::vector<std::uint32_t>& ids() const noexcept { return ids_; }

 private:
  std::vector<std::uint32_t> ids_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace reflab
