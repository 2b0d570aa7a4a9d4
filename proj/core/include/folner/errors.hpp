#pragma once

#include <stdexcept>
#include <string>

namespace folner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index outside the lattice index set, or an argument outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The expression lacks the structure the operation needs (e.g. a uniform
// band when a Cuntz isometry is present, or an unbounded block support).
class StructureError : public Error {
 public:
  using Error::Error;
};

// A configured size cap would be exceeded; the message names the cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// An operation precondition failed (e.g. self-adjointness of the input).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed operator DSL document; carries the JSON pointer of the node.
class DslError : public Error {
 public:
  DslError(std::string pointer, const std::string& what)
      : Error(what + " [at " + (pointer.empty() ? std::string("/") : pointer) + "]"),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace folner
