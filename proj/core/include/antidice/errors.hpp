#pragma once

#include <stdexcept>
#include <string>

namespace antidice {

/// Invalid input: malformed dice, empty ranges, violated preconditions.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The die has no skew, so the leading Edgeworth term vanishes.
class NoLeadingTerm : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Span/shift combination the threshold certificate does not cover.
class UnsupportedSpan : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised between convolution steps once a stop was requested.
class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("operation cancelled") {}
};

}  // namespace antidice
