#pragma once

#include <stdexcept>

namespace entroinv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed sizes, non-finite entries, inconsistent shapes.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A point violates the open-box (interior-margin) requirement.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

// An exp-map tangent pushes the angular chart outside (0, pi)^N.
class TangentOutOfRange : public Error {
 public:
  using Error::Error;
};

// An operation needs an invertible induced metric or a full-row-rank operator.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

// A surface-geodesic endpoint whose dual image is not in range(A^T).
class NotOnSurface : public Error {
 public:
  using Error::Error;
};

// The reference solver found no strictly interior feasible point.
class OracleInfeasible : public Error {
 public:
  using Error::Error;
};

// A banded-problem datum lies outside the attainable interval of some row.
class BandViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace entroinv
