#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace gvi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Op = std::function<Vec(const Vec&)>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An operator returned NaN/inf.
class NumericDomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSetError : public Error {
 public:
  using Error::Error;
};

class InfeasibleSetError : public Error {
 public:
  using Error::Error;
};

// A required capability (g_inverse, jacobians, ...) was not supplied.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, Vec last, int iteration)
      : Error(what), last_iterate(std::move(last)), iteration(iteration) {}
  Vec last_iterate;
  int iteration;
};

class LineSearchError : public Error {
 public:
  using Error::Error;
};

class InnerDivergenceError : public Error {
 public:
  using Error::Error;
};

class OracleContractError : public Error {
 public:
  using Error::Error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class AssemblyError : public Error {
 public:
  AssemblyError(const std::string& what, int row) : Error(what), row(row) {}
  int row;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace gvi
