#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gof {

// All library failures throw this. `code` is a stable machine-readable token
// (e.g. "empty_sample", "bracket_failure"); `what()` carries the human detail.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

}  // namespace gof
