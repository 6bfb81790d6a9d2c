#pragma once

#include <stdexcept>
#include <string>

namespace irw {

/// A node was asked to hold more targets than it has leaves.
class CapacityError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An observation has zero density under one of the two hypotheses.
class InfiniteLlrError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested pair of distributions is not supported (e.g. mixed families).
class UnsupportedPairError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation that needs children was called on a leaf.
class LeafError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// No sample size up to the configured cap meets the requested confidence.
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment configuration is invalid. what() lists the offending fields.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace irw
