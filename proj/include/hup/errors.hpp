#pragma once

#include <stdexcept>
#include <string>

namespace hup {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or limit process failed to reach the requested tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double estimate, double error)
      : Error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class OrbitHitsZero : public Error {
 public:
  OrbitHitsZero(const std::string& what, int step) : Error(what), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

class TailNotControlled : public Error {
 public:
  using Error::Error;
};

// Evaluation point coincides with a declared jump; the transform is log-singular there.
class JumpPoint : public Error {
 public:
  using Error::Error;
};

class UnknownCampaign : public Error {
 public:
  using Error::Error;
};

}  // namespace hup
