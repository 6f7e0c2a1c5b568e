#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sac/bottcher.hpp"
#include "sac/preimages.hpp"

namespace sac {

enum class OrbitClass { ToCircle, ToPInfinity, ToOtherAttractor, Undecided };

std::string orbit_class_name(OrbitClass c);

struct ClassifyOptions {
  int budget = 200;
  double basin_radius = 1e-3;  // attractor disc radii
  double circle_tol = 0.05;    // end-of-budget circle proximity
};

// Trichotomy of forward orbits near the invariant line: falls into one of the
// two superattracting basins, stays near the invariant circle for the whole
// budget, or remains undecided.
OrbitClass classify(const MapSpec& m, const ChartPoint& x,
                    const ClassifyOptions& opt = {});

struct SliceSample {
  cd fiber;
  std::vector<double> thetas;
  std::vector<double> radii;
  double tol = 0;
};

struct SliceOptions {
  double r_lo = 0.5, r_hi = 1.5;  // radial bracket on each ray
  ClassifyOptions cls;
  int retry_budget = 2000;  // second chance for undecided midpoints
};

// Basin-boundary radius per angle along radial rays in the frame chart at a
// fixed transverse fiber; the endpoints of the bracket must classify into
// different basins (BracketFailure otherwise).  Each ray performs at most
// ceil(log2(width/tol)) midpoint classifications.
SliceSample bisect_slice(const MapSpec& m, cd fiber, int n_thetas, double tol,
                         const SliceOptions& opt = {});

// Zero level set of psi = log|phi| along the same rays, located by a sign
// bisection on the partial telescoping sum guarded by its geometric tail
// bound (with an escape-direction fallback once the product guard breaks).
SliceSample psi_zero_slice(const MapSpec& m, cd fiber, int n_thetas,
                           double tol, const SliceOptions& opt = {});

struct ConeSpec {
  int gamma = 1;  // B_{1,1} is the horizontal cone
  double c = 1.0;
};

// Bullet membership |p| >= c |q|^gamma in the pq-style chart.
bool in_bullet(const ChartPoint& x, const ConeSpec& cone);

struct BulletReport {
  int gamma = 0;
  double eps = 0;
  int n_samples = 0;
  int checked_preimages = 0;  // preimages found inside the eps-bidisc
  int violations = 0;         // of those, how many left the bullet
  int preimage_failures = 0;  // targets whose solve failed (logged, non-fatal)
  bool success = false;       // no preimage found outside the bullet
};

// Monte-Carlo check of backward invariance of the bullet intersected with the
// eps-bidisc for the renormalization map: preimages of bullet points that
// land back in the bidisc must stay in the bullet.
BulletReport bullet_backward_invariance_check(int gamma, double eps,
                                              int n_samples,
                                              std::uint64_t seed = 0);

struct DistortionReport {
  int gamma = 0;
  double eps = 0;
  int n_used = 0;
  double ratio_min = 0, ratio_max = 0;      // |p_n| / |p_0|^(4^n), bullet side
  double q_ratio_min = 0, q_ratio_max = 0;  // |q_n| / |q_0|^(2^n), off-bullet
  int samples = 0;    // surviving bullet samples
  int q_samples = 0;  // surviving off-bullet samples
};

// Samples whose full n-orbit stays inside the bullet (resp. its complement in
// the eps-bidisc) and the observed spread of the normalized first (resp.
// second) coordinate; big-float orbits, the ratios come from exact logs.
DistortionReport distortion_check(int gamma, double eps, int n, int n_samples,
                                  std::uint64_t seed = 0);

struct TensionReport {
  double eps = 0;
  int k = 0;
  int gamma = 0;  // bullet exponent used for the seed, 2k + 3
  // Vertical preorbit: k cone-filtered preimage steps inside |p| <= |q|,
  // all inside the eps-bidisc.  Magnitudes reported as log10 (they underflow
  // doubles for larger k).
  int vertical_len = 0;
  double vertical_p_log10 = 0;
  double vertical_q_log10 = 0;
  // Horizontal preorbit: preimage steps inside |q| <= |p|, truncated at the
  // last element still inside the eps-bidisc.
  int horizontal_len = 0;
  bool horizontal_exited = false;  // the next step left the bidisc
  double horizontal_p_abs = 0;
  double horizontal_q_abs = 0;
};

// Preorbit tension probe for the renormalization map: seeds a point just
// below the bullet boundary near p-infinity (|q0| = (0.9 eps)^(2^k),
// |p0| = |q0|^(2k+3) / 2) and follows one vertical and one horizontal
// cone-filtered preorbit by branch-selected big-float Newton steps.  The
// vertical endpoint sinks toward p-infinity while the horizontal chain is
// pushed out of the bidisc with first coordinate bounded below (~ eps^4).
TensionReport tension_experiment(double eps, int k);

}  // namespace sac
