#pragma once

#include <stdexcept>
#include <string>

namespace hyperel {

// A parameter value makes a Pochhammer factor, operator coefficient or
// Gamma ratio vanish.
class DegenerateParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonTerminating : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OutOfDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class TableTooSmall : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class PoleAtPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ZeroPolynomial : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value that is provably an integer came out fractional. Always a bug in
// the engine (or a counterexample to the statement being verified); never
// caught inside the library.
class IntegralityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hyperel
