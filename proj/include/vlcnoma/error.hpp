#pragma once

#include <stdexcept>
#include <string>

namespace vlcnoma {

// Errors caused by bad inputs. The CLI maps these to exit code 1; anything
// else escaping a command is a runtime failure (exit code 2).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidParameter : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidGeometry : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidConstellation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
public:
    ConfigError(const std::string& message, int line = 0)
        : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    // 1-based line in the offending file, 0 when the error is not tied to a line.
    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace vlcnoma
