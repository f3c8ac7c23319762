#pragma once

#include <stdexcept>
#include <string>

namespace latticeprop {

// Base of every error raised by the library. The cli maps
// capacity-like failures to exit status 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error { using Error::Error; };
class UnsupportedSpaceError : public Error { using Error::Error; };
class ReversedTimeError : public Error { using Error::Error; };
class CapacityError : public Error { using Error::Error; };
class MembershipError : public Error { using Error::Error; };
class NonGenerableError : public Error { using Error::Error; };
class UnsupportedAxesError : public Error { using Error::Error; };

// Series ran out of degree budget; bound is the tail estimate reached.
class TruncationError : public Error {
public:
  TruncationError(const std::string& what, double bound) : Error(what), bound_(bound) {}
  double bound() const { return bound_; }
private:
  double bound_;
};

class QuadratureError : public Error {
public:
  QuadratureError(const std::string& what, double change) : Error(what), change_(change) {}
  double change() const { return change_; }
private:
  double change_;
};

} // namespace latticeprop
