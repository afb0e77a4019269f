#pragma once

#include <stdexcept>
#include <string>

namespace poslp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that has to be inverted is singular or too ill-conditioned.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// A state matrix is not Hurwitz (or no copositive Lyapunov vector exists).
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// Input violates a structural sign requirement (Metzler / nonnegative).
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// A linear program or input document is malformed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The simplex iteration cap was reached.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A polynomial exceeds the degree a routine can handle.
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// An enumeration (vertices, Handelman products) exceeds its size cap.
class CombinatorialError : public Error {
 public:
  using Error::Error;
};

/// I - Delta F00 is singular somewhere on the uncertainty domain.
class WellPosednessError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter is outside of its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Required model data is missing (e.g. no control input matrix).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A finite LP that encodes a necessary and sufficient condition is infeasible.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace poslp
