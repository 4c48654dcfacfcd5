#pragma once

#include <stdexcept>

namespace gln {

/// Numerical knobs shared across the decomposition and eigensolver routines.
struct ToleranceConfig {
  double ortho_tol = 1e-10;  // max-entry bound on B*B^T - I for orthogonality
  double minor_tol = 1e-12;  // cutoff below which a minor counts as zero
  double eig_tol = 1e-12;    // relative off-diagonal target for the eigensolver
  int max_sweeps = 50;       // Jacobi sweep budget

  void validate() const {
    if (!(ortho_tol > 0.0) || !(minor_tol > 0.0) || !(eig_tol > 0.0)) {
      throw std::invalid_argument("tolerances must be strictly positive");
    }
    if (max_sweeps < 1) {
      throw std::invalid_argument("max_sweeps must be at least 1");
    }
  }
};

}  // namespace gln
