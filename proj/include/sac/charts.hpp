#pragma once

#include <string>

#include "sac/errors.hpp"
#include "sac/numeric.hpp"

namespace sac {

enum class ChartId {
  AffineZero,     // (z, w) style coordinates around the finite end
  AffineInfinity, // coordinates around the other end of the invariant line
  PhysicalZT,     // (z, t) coordinates of the renormalization map
  PqAtInfinity,   // (p, q) = ((1 - t)/z, t/z)
  BlowupZetaTau,  // (zeta, tau) = (1/x, x y)
  Homogeneous,    // reserved label; no catalog map evaluates here
};

std::string chart_name(ChartId id);
ChartId chart_from_name(const std::string& name);

struct ChartPoint {
  ChartId chart = ChartId::AffineZero;
  cd c1{0.0, 0.0};
  cd c2{0.0, 0.0};
};

struct BigChartPoint {
  ChartId chart = ChartId::AffineZero;
  BigComplex c1, c2;
};

inline BigChartPoint to_big(const ChartPoint& p) {
  return {p.chart, BigComplex(p.c1), BigComplex(p.c2)};
}
inline ChartPoint to_small(const BigChartPoint& p) {
  return {p.chart, to_cd(p.c1), to_cd(p.c2)};
}

struct PrecisionContext {
  int working_digits = 15;
  bool exact_mode = false;

  void validate() const {
    if (working_digits < 15)
      throw UsageError("working_digits must be at least 15");
  }
  void require_floating(const std::string& op) const {
    if (exact_mode)
      throw DomainError(ErrorCode::ExactModeUnsupported,
                        op + " is floating-point only; exact_mode unsupported");
  }
};

enum class ErrorModel { Floating, Exact };

}  // namespace sac
