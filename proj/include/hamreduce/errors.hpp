#pragma once

#include <stdexcept>
#include <string>

namespace hamreduce {

// Error categories map onto CLI exit codes: input errors -> 2,
// resource-cap errors -> 3, promise violations -> 4.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

  // Stable machine-readable condition name, e.g. "TautologicalClause".
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class CapError : public Error {
 public:
  using Error::Error;
};

class PromiseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hamreduce
