#ifndef PBRACK_ERRORS_HPP
#define PBRACK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pbrack {

// Base class for every error the engine raises on bad input.
// Internal invariant violations use assert/logic_error instead.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  SyntaxError(const std::string& what, std::size_t line, bool /*line_tag*/)
      : Error(what + " (line " + std::to_string(line) + ")"), position_(line) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_ = 0;
};

class UnknownName : public Error {
public:
  explicit UnknownName(const std::string& name, std::size_t position = 0)
      : Error("unknown name '" + name + "'"), name_(name), position_(position) {}
  const std::string& name() const { return name_; }
  std::size_t position() const { return position_; }

private:
  std::string name_;
  std::size_t position_;
};

class CyclicDefinition : public Error {
public:
  explicit CyclicDefinition(const std::string& name)
      : Error("cyclic definition of '" + name + "'") {}
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class NonIntegerExponent : public Error {
public:
  explicit NonIntegerExponent(std::size_t position)
      : Error("exponent must be an integer; use sqrt() for half powers (at offset " +
              std::to_string(position) + ")") {}
};

class NonPolynomialRadicand : public Error {
public:
  NonPolynomialRadicand()
      : Error("sqrt argument must be polynomial: no nested radicals or exponentials") {}
};

class NonPolynomialArgument : public Error {
public:
  explicit NonPolynomialArgument(const std::string& what) : Error(what) {}
};

class DuplicateDefinition : public Error {
public:
  DuplicateDefinition(const std::string& name, std::size_t line)
      : Error("duplicate definition of '" + name + "' (line " + std::to_string(line) + ")") {}
};

class MissingDimension : public Error {
public:
  MissingDimension() : Error("session must declare 'dimension N' before anything else") {}
};

class UnknownVariable : public Error {
public:
  explicit UnknownVariable(const std::string& name)
      : Error("cannot differentiate with respect to '" + name +
              "': not a coordinate or momentum") {}
};

class SpaceMismatch : public Error {
public:
  SpaceMismatch() : Error("operands belong to different phase-space workspaces") {}
};

class PoleAtPoint : public Error {
public:
  explicit PoleAtPoint(const std::string& what) : Error(what) {}
};

}  // namespace pbrack

#endif
