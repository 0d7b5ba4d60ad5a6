#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quatfun {

// Base for every error the library raises. `domain_error()` distinguishes
// mathematical failures (poles, zero sets, failed preconditions) from
// malformed input, which matters for CLI exit codes.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &what, bool domain = true)
      : std::runtime_error(what), domain_(domain) {}
  bool domain_error() const noexcept { return domain_; }

private:
  bool domain_;
};

class ZeroDivision : public Error {
public:
  ZeroDivision() : Error("division by the zero quaternion") {}
};

class PoleError : public Error {
public:
  explicit PoleError(const std::string &what = "denominator vanishes at the evaluation point")
      : Error(what) {}
};

class IdenticallyZero : public Error {
public:
  IdenticallyZero() : Error("function is identically zero") {}
};

class NotHyperholomorphic : public Error {
public:
  explicit NotHyperholomorphic(const std::string &which)
      : Error(which + " is not hyperholomorphic") {}
};

class NotHypermeromorphic : public Error {
public:
  explicit NotHypermeromorphic(const std::string &which)
      : Error(which + " is not hypermeromorphic") {}
};

class UnknownName : public Error {
public:
  explicit UnknownName(const std::string &name)
      : Error("unknown catalogue entry '" + name + "'", false) {}
};

class TooCoarse : public Error {
public:
  explicit TooCoarse(const std::string &what) : Error(what, false) {}
};

class PoleOnDomain : public Error {
public:
  explicit PoleOnDomain(const std::string &what) : Error(what) {}
};

class NotRealValued : public Error {
public:
  explicit NotRealValued(const std::string &what) : Error(what) {}
};

class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string &expected, const std::string &found)
      : Error("parse error at position " + std::to_string(position) + ": expected " +
                  expected + ", found " + found,
              false),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

} // namespace quatfun
