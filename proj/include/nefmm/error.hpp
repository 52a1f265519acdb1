#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nefmm {

// Domain failures carry a stable machine-readable code next to the human
// message.  Codes are slash-scoped, e.g. "nef/not-reflexive".
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// Bad user input: malformed JSON, rank mismatches, unknown fields.  The CLI
// maps these to exit code 2; every other Error maps to exit code 1.
class InputError : public Error {
public:
  using Error::Error;
};

}  // namespace nefmm
