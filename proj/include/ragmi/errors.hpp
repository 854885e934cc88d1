#pragma once

#include <stdexcept>
#include <string>

namespace ragmi {

/// Bad or inconsistent configuration: malformed templates, missing files,
/// invalid flag combinations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scoring backend failed (transport error, exhausted retries, ...).
/// Carries the number of attempts made so callers can report retry metadata.
class ScorerError : public std::runtime_error {
 public:
  explicit ScorerError(const std::string& what, int attempts = 1)
      : std::runtime_error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

/// The backend answered, but the response violates the wire contract.
/// Keeps the raw body for debugging.
class ProtocolError : public ScorerError {
 public:
  ProtocolError(const std::string& what, std::string raw_body)
      : ScorerError(what), raw_body_(std::move(raw_body)) {}
  const std::string& raw_body() const { return raw_body_; }

 private:
  std::string raw_body_;
};

/// A probability fixture violates one of its construction constraints.
class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ragmi
