#pragma once

#include <stdexcept>
#include <string>

namespace nlsscat {

// Precondition violations throw std::invalid_argument. The types below cover
// the named failure modes of the solvers and estimators.

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergedIterate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientHorizon : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlsscat
