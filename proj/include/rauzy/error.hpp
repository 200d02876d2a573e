#pragma once

#include <stdexcept>
#include <string>

namespace rauzy {

/// Arguments outside an operation's domain (bad base, out-of-range parameter, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed digit file or JSON document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A source sequence is too short for the requested output.
class LengthError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The brute-force oracle refuses to enumerate more functions than its cap.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Markov chain has more than one closed class, so its stationary law is not unique.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rauzy
