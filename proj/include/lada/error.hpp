#pragma once

#include <stdexcept>
#include <string>

namespace lada {

// Error codes shared with the C API (see include/lada.h, same numeric values).
enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  Disconnected = 2,
  EmptySector = 3,     // some directional degree d_i^l is zero
  EmptyCluster = 4,    // tessellation produced an unoccupied square
  NotConverged = 5,    // iteration budget exhausted
  TooLarge = 6,        // instance exceeds a desk-scale cap
  Degenerate = 7,      // numerical degeneracy (vanishing weight sum)
  NoCut = 8,           // no admissible conductance cut
  Io = 9,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace lada
