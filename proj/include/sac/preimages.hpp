#pragma once

#include <vector>

#include "sac/mapspec.hpp"

namespace sac {

struct PreimageOptions {
  double verify_tol = 1e-9;   // forward-verification tolerance
  double dedupe_tol = 1e-8;   // roots closer than this are one solution
  double cluster_tol = 1e-6;  // distinct roots closer than this: degenerate
  int max_polish_iters = 60;
};

// All solutions of map(x) = target inside target's chart, found by a
// Sylvester-resultant elimination (determinant interpolated at scaled roots
// of unity, companion-matrix roots) followed by a 2D Newton polish and a
// forward-verification pass.  Throws DegenerateTarget when verified roots
// cluster ambiguously, RootFindingFailure when elimination degenerates.
std::vector<ChartPoint> preimages(const MapSpec& m, const ChartPoint& target,
                                  const PreimageOptions& opt = {});

// Roots of a univariate complex polynomial (companion-matrix eigenvalues);
// trailing near-zero leading coefficients are trimmed first.
std::vector<cd> poly_roots(std::vector<cd> coeffs, double trim_rel = 1e-12);

}  // namespace sac
