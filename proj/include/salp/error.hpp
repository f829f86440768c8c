// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace salp {

enum class ErrorCode {
  Structural,
  Syntax,
  Semantic,
  PrecisionExhausted,
  Budget,
  NoSchedule,
  TransformFailed,
  IntegerValidityFailed,
  InvalidArgument,
  Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors carry a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : Error(ErrorCode::Syntax,
              std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column), message_(message) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

[[noreturn]] inline void structural(const std::string& what) {
  throw Error(ErrorCode::Structural, what);
}

}  // namespace salp
