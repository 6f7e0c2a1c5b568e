#pragma once

#include <string>
#include <vector>

#include "sac/laurent.hpp"
#include "sac/mapspec.hpp"

namespace sac {

// Stable-foliation graph over the transverse disc: the leaf through the
// circle point z0 is z = h(z0, w) = sum_j a_j(z0) w^j with Laurent-polynomial
// coefficients a_j, solved exactly order by order from
// P(h_{z0}(w), w) = h_{z0^b}(w^a).
struct CircleSeries {
  std::string map_name;
  int a = 2, b = 2, J = 0;
  std::vector<LaurentQ> coeffs;  // a_0 .. a_J

  long bandwidth(int j) const { return coeffs[j].bandwidth(); }
  cd eval_leaf(const cd& z0, const cd& w) const;  // h(z0, w) truncated at J
};

// Exact recurrence for skew products (second coordinate w^a, a >= 2,
// polynomial first coordinate).  At order j the unknown a_j enters linearly
// with coefficient b*z0^(b-1), invertible on the circle.
CircleSeries solve_series(const MapSpec& m, int J, int order_cap = 4096);

// Smallest order with a nonzero functional-equation residual, or J+1 when
// the truncated equation is satisfied exactly through order J.
long residual_valuation(const MapSpec& m, const CircleSeries& s);

struct ProbeReport {
  std::vector<long> bandwidth;            // per order j = 0..J
  std::vector<double> radii;              // annulus outer radii
  std::vector<std::vector<double>> rho;   // rho[r][j] = max |a_j| on annulus
  double growth_exponent = 0;             // LSQ slope of log bw vs log j
  double fit_residual = 0;
  int fit_lo = 8, fit_hi = 0;
};

ProbeReport analyticity_probe(const CircleSeries& s,
                              const std::vector<double>& radii,
                              int fit_lo = 8, int fit_hi = -1);

}  // namespace sac
