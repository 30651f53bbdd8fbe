#pragma once

#include <stdexcept>
#include <string>

namespace hamrsim {

/// A value violated a documented precondition or type invariant.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A curve fit could not be performed on the given samples.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// Integration produced a non-finite state. Carries the offending step index.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, long step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"),
        step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

/// Problem in a config file, annotated with the offending location.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line, const std::string& section,
              const std::string& key)
      : std::runtime_error(format(what, line, section, key)),
        line_(line),
        section_(section),
        key_(key) {}

  int line() const { return line_; }
  const std::string& section() const { return section_; }
  const std::string& key() const { return key_; }

 private:
  static std::string format(const std::string& what, int line,
                            const std::string& section,
                            const std::string& key) {
    std::string msg = "line " + std::to_string(line) + ": [" + section + "]";
    if (!key.empty()) msg += " " + key;
    return msg + ": " + what;
  }

  int line_;
  std::string section_;
  std::string key_;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hamrsim
