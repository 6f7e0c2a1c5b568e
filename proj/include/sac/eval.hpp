#pragma once

#include <string>
#include <vector>

#include "sac/mapspec.hpp"

namespace sac {

struct EvalOptions {
  bool allow_rechart = true;       // hop charts when the image leaves the box
  double rechart_threshold = 10.0; // coordinate magnitude triggering a hop
  double chart_margin = 1e-6;      // transition denominators must exceed this
  double indeterminacy_margin = 1e-8;
};

// Apply the declared coordinate change; UndeclaredTransition if absent,
// SingularLocus if the change is singular (denominator below margin) there.
ChartPoint to_chart(const MapSpec& m, const ChartPoint& p, ChartId to,
                    double margin = 1e-8);
BigChartPoint to_chart(const MapSpec& m, const BigChartPoint& p, ChartId to,
                       double margin = 1e-8);

// One step of the map in the point's chart, re-charting the image when it
// leaves the coordinate box and a better chart is declared.
ChartPoint eval(const MapSpec& m, const ChartPoint& p,
                const EvalOptions& opt = {});
BigChartPoint eval(const MapSpec& m, const BigChartPoint& p,
                   const EvalOptions& opt = {});

enum class OrbitStatus {
  BudgetExhausted,  // ran the full budget without incident
  Indeterminate,    // stepped into the indeterminacy margin
  Underflow,        // denominator vanished
  Diverged,         // coordinates left every declared chart's box
};

struct OrbitRecord {
  std::vector<ChartPoint> points;  // includes the starting point
  OrbitStatus status = OrbitStatus::BudgetExhausted;
  std::string message;
};

OrbitRecord orbit(const MapSpec& m, ChartPoint p, int budget,
                  const EvalOptions& opt = {});

struct Jacobian2 {
  cd a11, a12, a21, a22;  // d(c1',c2')/d(c1,c2)
  cd det() const { return a11 * a22 - a12 * a21; }
};

// Derivative of the map in the point's chart (quotient rule on the
// rational coordinate functions; no re-charting).
Jacobian2 jacobian(const MapSpec& m, const ChartPoint& p);

// For the renormalization map R: Fubini-Study distance between
// Psi(R(z,t)) and R_LY(Psi(z,t)), where Psi[Z:T:Y] = [Y^2 : ZT : Z^2]
// semiconjugates R to the degree-2 Lee-Yang map
// R_LY[U:V:W] = [(U^2+V^2)^2 : V^2 (U+W)^2 : (W^2+V^2)^2].
double semiconjugacy_residual(cd z, cd t);

}  // namespace sac
