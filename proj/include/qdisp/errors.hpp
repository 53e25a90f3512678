#pragma once
#include <stdexcept>
#include <string>

namespace qdisp {

// Convention mismatch detected while assembling an operator (an object failing
// its own self-check, e.g. the R-matrix intertwiner test).
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Predicted eigenvalues too close for Lagrange interpolation at this q.
struct DegenerateSpectrumError : std::runtime_error {
  explicit DegenerateSpectrumError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computed quantity violates a mathematical bound or came out non-finite.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// No optimizer restart reached the gradient-norm stopping test. This is an
// exit path (exhausted iteration budget), not a wrong numerical answer.
struct ConvergenceError : NumericalError {
  explicit ConvergenceError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace qdisp
