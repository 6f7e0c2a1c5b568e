#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sac/eval.hpp"

namespace sac {

struct PhiOptions {
  double tol = 1e-12;      // truncation tolerance for the telescoping product
  int n_max = 96;          // product factor budget
  bool experimental = false;  // allow maps with a < b (guards raise errors)
  int working_digits = 40;    // orbit precision (deep iterates underflow doubles)
};

struct BottcherResult {
  cd value;
  cd log_value;            // log of value (principal), exact carrier for |value|^huge
  double truncation_bound = 0;
  int terms = 0;
};

// Telescoping product phi = s0 * prod (s_{n+1}/s_n^b)^(1/b^{n+1}) in the
// normal frame chart; every factor must satisfy the guard |ratio - 1| < 1/2
// (or the reciprocal form on the other end of the line), and truncation stops
// when the geometric tail bound log(2)/(b^{n+1}(b-1)) drops below tol.
BottcherResult bottcher_phi(const MapSpec& m, const ChartPoint& x,
                            const PhiOptions& opt = {});

// psi = log|phi|; the stable manifold of the circle is the zero level set.
double bottcher_psi(const MapSpec& m, const ChartPoint& x,
                    const PhiOptions& opt = {});

struct RegionParams {
  double eps1 = 0.3, eps2 = 0.3;    // disc radii at the two ends of the line
  double delta1 = 0.3, delta2 = 0.3;  // aperture bounds on |w|/|z|^b
  double K = 0.5;                   // guard bound the region must maintain
  double tube = 0.3;                // transverse radius of the middle band V

  std::string to_json() const;
  static RegionParams from_json(const std::string& text);
};

// Membership in Omega = U1 ∪ U2 ∪ V for a frame-chart point.
bool in_region(const MapSpec& m, const RegionParams& r, const ChartPoint& p);

struct RegionSampleRow {
  cd z, w;
  double guard = 0;
  bool violated = false;
};

struct RegionReport {
  int n_samples = 0;
  int violations = 0;
  double guard_max = 0;
  bool success = false;
  bool vacuous = false;  // empty region: vacuous success
  std::vector<RegionSampleRow> rows;  // populated when keep_rows
};

RegionReport validate_region(const MapSpec& m, const RegionParams& r,
                             int n_samples, std::uint64_t seed = 0,
                             bool keep_rows = false);

// Geometric shrinking search (factor 1/2 from 0.3, floor 1e-4); throws
// NoValidRegion when the floor is reached without a validating region.
RegionParams search_region(const MapSpec& m, double K,
                           int n_samples = 20000, std::uint64_t seed = 0);

// Fiber-averaged extension over n-fold preimages (the map must have
// topological degree declared; intended for the renormalization map):
// value = deg^{-n} * sum phi(y_i)^{b^n}.
BottcherResult averaging_phi(const MapSpec& m, const ChartPoint& x, int n,
                             const RegionParams& base, double tol);

}  // namespace sac
