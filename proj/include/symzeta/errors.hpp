#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace symzeta {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (bad dimension, b = 0, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Evaluation requested outside the region where an evaluator is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numerical parameter (Bernoulli order, sample set) cannot deliver convergence.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure did not reach its tolerance; carries the achieved estimate.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

// Raised when a contour sweep detects a pole of order greater than one.
class PoleOrderError : public Error {
 public:
  using Error::Error;
};

// Evaluation failed at a contour point; the original message is kept.
class ContourError : public Error {
 public:
  ContourError(const std::string& what, std::complex<double> z) : Error(what), z_(z) {}
  std::complex<double> z() const { return z_; }

 private:
  std::complex<double> z_;
};

}  // namespace symzeta
