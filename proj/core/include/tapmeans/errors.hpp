#pragma once

#include <stdexcept>
#include <string>

namespace tapmeans {

/// A parameter lies outside the domain of the operation (p < 1, rho outside
/// [0,1], t outside [0,1], ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of the operation does not hold for otherwise
/// well-formed arguments (aliasing degree, rho below 1/2 in the Lemma-2 bounds).
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Experiment configuration could not be parsed or validated.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An experiment refused to run because a hypothesis on its inputs fails
/// (for instance the modulus violates a Zygmund-type condition).
class ExperimentRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tapmeans
