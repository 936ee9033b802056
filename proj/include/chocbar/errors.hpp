#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace chocbar {

// Base of every error the library throws. `code()` is the stable token used by
// the CLI and the HTTP error payloads.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error("invalid_argument", message) {}
};

class IllegalMove : public Error {
 public:
  explicit IllegalMove(const std::string& message)
      : Error("illegal_move", message) {}
};

class NoMove : public Error {
 public:
  explicit NoMove(const std::string& message) : Error("no_move", message) {}
};

class ResourceLimit : public Error {
 public:
  ResourceLimit(std::uint64_t budget, std::uint64_t requested)
      : Error("resource_limit",
              "state budget exceeded: budget=" + std::to_string(budget) +
                  " requested=" + std::to_string(requested)),
        budget_(budget),
        requested_(requested) {}
  std::uint64_t budget() const { return budget_; }
  std::uint64_t requested() const { return requested_; }

 private:
  std::uint64_t budget_;
  std::uint64_t requested_;
};

class FamilyMismatch : public Error {
 public:
  explicit FamilyMismatch(const std::string& message)
      : Error("family_mismatch", message) {}
};

class OutOfDomain : public Error {
 public:
  explicit OutOfDomain(const std::string& message)
      : Error("out_of_domain", message) {}
};

class NotApplicable : public Error {
 public:
  explicit NotApplicable(const std::string& message)
      : Error("not_applicable", message) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& message) : Error("not_found", message) {}
};

// A session-state conflict: game over, or not this side's turn.
class Conflict : public Error {
 public:
  Conflict(std::string code, const std::string& message)
      : Error(std::move(code), message) {}
};

}  // namespace chocbar
