#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sac/charts.hpp"
#include "sac/poly.hpp"

namespace sac {

// A pair of rational coordinate functions (num1/den1, num2/den2) in one chart.
// Catalog entries are constructed in lowest terms.
struct RationalPair {
  Poly2 num1, den1, num2, den2;

  void check() const {
    if (den1.is_zero() || den2.is_zero())
      throw UsageError("RationalPair with identically zero denominator");
  }

  template <class T>
  std::pair<T, T> eval(const T& x, const T& y) const {
    return {num1.eval(x, y) / den1.eval(x, y),
            num2.eval(x, y) / den2.eval(x, y)};
  }
};

// Coordinate change between two declared charts of one map.
struct Transition {
  ChartId from, to;
  RationalPair formula;  // (c1', c2') as rational functions of (c1, c2)
};

struct Attractor {
  std::string label;  // "p-infinity" | "other"
  ChartId chart;
  cd c1, c2;
  double radius = 1e-3;
};

struct SpecialPoint {
  std::string label;
  ChartPoint point;
};

// Normal frame: the declared chart in which the invariant line is {c2 = 0},
// the restriction to it is c1 -> c1^b, and the invariant circle is |c1| = 1.
// inf_twist gives the transverse coordinate on the opposite end of the line:
// u_inf = c2 * c1^(-inf_twist).
struct NormalFrame {
  ChartId chart;
  int inf_twist = 0;
};

struct MapSpec {
  std::string name;
  std::vector<std::pair<ChartId, RationalPair>> charts;
  std::vector<Transition> transitions;
  int a = 1;  // transversal superattraction degree
  int b = 2;  // degree on the invariant line
  NormalFrame frame;
  std::string invariant_circle;  // human description
  std::vector<Attractor> attractors;
  std::vector<SpecialPoint> special_points;
  std::optional<int> topological_degree;
  bool skew = false;  // second coordinate equals c2^a in the normal chart

  const RationalPair& formula(ChartId chart) const;
  bool has_chart(ChartId chart) const;
  const Transition* find_transition(ChartId from, ChartId to) const;

  // Load-time normal-form checks (exact on the integer-coefficient catalog):
  // restriction to the invariant line equals c1^b, and the second coordinate
  // vanishes to order >= a along it.
  void verify_normal_form() const;
};

// Built-in catalog: R (Migdal-Kadanoff renormalization, physical and pq
// charts), skew f = (z^3 + 2wz^2, w^2), control skew m = (z^2 + w^2 z, w^2),
// g = (x^2 + y(1+xy), y^3(1+xy)), and the degenerate Newton map N (B = 1).
const std::vector<MapSpec>& catalog();
const MapSpec& find_map(const std::string& name);

// JSON (de)serialization of the catalog schema; see README for the format.
std::string mapspec_to_json(const MapSpec& m);
MapSpec mapspec_from_json(const std::string& text);
MapSpec load_mapspec_file(const std::string& path);

}  // namespace sac
