#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace coarse {

// Stable point identifier. Identity across truncations is by id, never by
// coordinates.
using PointId = std::int64_t;

// Distances are stored as doubles but every corpus generator emits integers,
// so comparisons are exact.
using Length = double;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something malformed (bad JSON, unknown name, bad flag).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An operation's precondition does not hold (n = 0, non-disjoint family,
// bounded set where an unbounded one is required, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Work cap reached before an answer was found.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Planar lattice points are packed as x * 2^32 + (y + 2^31). The packing is
// monotone in (x, y) lexicographic order, so the largest id of a set of
// lattice points is the one with the largest x, then largest y.
constexpr PointId encode_xy(std::int64_t x, std::int64_t y) {
  return x * (PointId{1} << 32) + (y + (PointId{1} << 31));
}

constexpr std::pair<std::int64_t, std::int64_t> decode_xy(PointId id) {
  const std::int64_t x = id >> 32;
  const std::int64_t y = (id & 0xffffffffLL) - (std::int64_t{1} << 31);
  return {x, y};
}

}  // namespace coarse
