#pragma once

#include <stdexcept>
#include <string>

namespace gencode {

// Families map one-to-one onto CLI exit codes.
enum class ErrorFamily {
  Usage,     // bad flags or config, exit 2
  Data,      // malformed datasets, parse failures, IO, exit 3
  Scorer,    // external scorer / protocol failures, exit 4
  Internal,  // everything else, exit 1
};

class Error : public std::runtime_error {
 public:
  Error(ErrorFamily family, std::string code, const std::string& message)
      : std::runtime_error(message), family_(family), code_(std::move(code)) {}

  ErrorFamily family() const noexcept { return family_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorFamily family_;
  std::string code_;
};

}  // namespace gencode
