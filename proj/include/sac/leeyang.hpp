#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sac/mapspec.hpp"

namespace sac {

// Point on the cylinder C = {|z| = 1, t in [0,1]}, z = exp(i theta).
struct CylinderPoint {
  double theta = 0.0;  // in [0, 2pi)
  double t = 0.0;      // in [0, 1]
};

// One application of R restricted to the cylinder.  At t = 0 the map is the
// analytic circle extension theta -> 4 theta; otherwise the physical-chart
// formulas are used and the image is checked to stay on the cylinder
// (| |z'| - 1 | <= 1e-12, t' in [0,1]), re-evaluating at 256 bits before
// giving up with a DomainError.
CylinderPoint cyl_eval(const MapSpec& m, const CylinderPoint& x);

struct ZeroSet {
  int level = 0;
  std::vector<CylinderPoint> points;
  std::string seed_id;
  int skipped = 0;  // cumulative preimage failures over all pullback steps
};

// Default (non-physical, configurable) seed: the vertical curve
// {theta = theta_seed, t in [0,1]} sampled at n_points heights.
ZeroSet seed_zeros(int n_points, double theta_seed,
                   const std::string& seed_id);

struct PullbackOptions {
  double cyl_tol = 1e-8;         // cylinder-membership filter
  double verify_tol = 1e-8;      // one-step forward verification
  std::size_t max_points = 8000; // deterministic stride subsampling above this
};

// Level n -> n+1: all preimages under the full map of each point, filtered to
// the cylinder and forward-verified; failing targets are skipped and counted.
ZeroSet pullback_zeros(const MapSpec& m, const ZeroSet& zs,
                       const PullbackOptions& opt = {});

// True when `level` cylinder iterations of x land on the seed curve
// {theta = theta_seed} within tol.
bool lands_in_seed(const MapSpec& m, const CylinderPoint& x, int level,
                   double theta_seed, double tol);

// Holonomy leaf of the central foliation through (theta0, t = 0).
struct Leaf {
  double theta0 = 0.0;
  std::vector<std::pair<double, double>> samples;  // (t, theta), t increasing
  double tol = 0.0;
};

struct LeafOptions {
  double step = 0.005;   // t increment, must be <= 0.01
  double tol = 1e-10;    // golden-section bracket width at exit
  int n_shadow = 12;     // orbit length for the shadowing corrector
  double window = 0.2;   // corrector search window width around the predictor
};

// Predictor: previous theta.  Corrector: minimize the orbit-shadowing
// distance max_{n <= n_shadow} circ_dist(theta_n(theta, t), 4^n theta0) by
// golden-section search inside the window; throws CorrectorWindowExhausted
// when the minimizer sticks to the window edge.
Leaf holonomy_leaf(const MapSpec& m, double theta0, double t_max,
                   const LeafOptions& opt = {});

struct DensityHistogram {
  double t = 0.0;
  struct Bin {
    double lo, hi, mass;
  };
  std::vector<Bin> bins;
  int n_samples = 0;
};

// Histogram of angles over [0, 2pi) with the given bin count; masses sum to 1.
DensityHistogram histogram_angles(const std::vector<double>& thetas,
                                  int n_bins, double t);

// Pushforward of Lebesgue measure on the base circle through the holonomy to
// height t0: n_leaves equally spaced theta0 values, histogrammed with
// max(32, n_leaves/100) bins.  Fails when more than 1% of leaves fail or when
// the arrival angles break the circular order of the departures.
DensityHistogram density(const MapSpec& m, double t0, int n_leaves,
                         const LeafOptions& opt = {});

// Arrival angles preserve the circular order of equally spaced departures.
bool circular_order_preserved(const std::vector<double>& arrivals);

// Kolmogorov-Smirnov distance between the empirical law of thetas (mod 2pi)
// and the uniform law on [0, 2pi).
double ks_uniform(std::vector<double> thetas);

// Total-variation distance between two histograms on [0, 2pi); the finer one
// is re-binned onto the coarser grid first.
double tv_distance(const DensityHistogram& a, const DensityHistogram& b);

// Histogram of a zero set's angles restricted to |t - t0| <= half_width.
DensityHistogram zero_histogram(const ZeroSet& zs, int n_bins, double t0 = 0.5,
                                double half_width = 0.5);

}  // namespace sac
