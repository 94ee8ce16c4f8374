#pragma once

#include <stdexcept>
#include <string>

namespace conjlab {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input fails a domain precondition (range, sign, strict inequality).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A grid node coincides with a jump of a step symbol.
class NodeAtJumpError : public Error {
public:
  explicit NodeAtJumpError(const std::string& what) : Error(what) {}
};

// Evaluation point coincides with a breakpoint of a step symbol.
class AtBreakpointError : public Error {
public:
  explicit AtBreakpointError(const std::string& what) : Error(what) {}
};

// Evaluation point coincides with the jump of a jump symbol.
class AtJumpError : public Error {
public:
  explicit AtJumpError(const std::string& what) : Error(what) {}
};

// Spectral or quadrature routine requires a uniform power-of-two grid.
class GridNotUniformError : public Error {
public:
  explicit GridNotUniformError(const std::string& what) : Error(what) {}
};

// Principal-value evaluation point collides with a quadrature node.
class SingularNodeError : public Error {
public:
  explicit SingularNodeError(const std::string& what) : Error(what) {}
};

// Disk evaluation point too close to the boundary for the available samples.
class TooCloseToBoundaryError : public Error {
public:
  explicit TooCloseToBoundaryError(const std::string& what) : Error(what) {}
};

// Requested series accuracy needs more than the hard term cap.
class TooExpensiveError : public Error {
public:
  explicit TooExpensiveError(const std::string& what) : Error(what) {}
};

// Grid cell weights do not sum to the full circle measure.
class WeightMismatchError : public Error {
public:
  explicit WeightMismatchError(const std::string& what) : Error(what) {}
};

// Too few grid cells support a measured quantity for a stable fit.
class InsufficientSupportError : public Error {
public:
  explicit InsufficientSupportError(const std::string& what) : Error(what) {}
};

// Malformed CLI arguments or config file.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace conjlab
