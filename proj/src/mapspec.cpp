#include "sac/mapspec.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sac {

std::string chart_name(ChartId id) {
  switch (id) {
    case ChartId::AffineZero: return "affine-zero";
    case ChartId::AffineInfinity: return "affine-infinity";
    case ChartId::PhysicalZT: return "physical-zt";
    case ChartId::PqAtInfinity: return "pq-at-infinity";
    case ChartId::BlowupZetaTau: return "blowup-zeta-tau";
    case ChartId::Homogeneous: return "homogeneous";
  }
  return "?";
}

ChartId chart_from_name(const std::string& name) {
  for (ChartId id : {ChartId::AffineZero, ChartId::AffineInfinity,
                     ChartId::PhysicalZT, ChartId::PqAtInfinity,
                     ChartId::BlowupZetaTau, ChartId::Homogeneous})
    if (chart_name(id) == name) return id;
  throw UsageError("unknown chart name: " + name);
}

const RationalPair& MapSpec::formula(ChartId chart) const {
  for (const auto& [id, rp] : charts)
    if (id == chart) return rp;
  throw DomainError(ErrorCode::UndeclaredTransition,
                    name + " has no chart " + chart_name(chart));
}

bool MapSpec::has_chart(ChartId chart) const {
  for (const auto& [id, rp] : charts)
    if (id == chart) return true;
  return false;
}

const Transition* MapSpec::find_transition(ChartId from, ChartId to) const {
  for (const auto& t : transitions)
    if (t.from == from && t.to == to) return &t;
  return nullptr;
}

void MapSpec::verify_normal_form() const {
  if (a < 1 || b < 2) throw UsageError(name + ": need a >= 1 and b >= 2");
  const RationalPair& rp = formula(frame.chart);
  auto r1 = rp.num1.restrict_y0();
  auto rd = rp.den1.restrict_y0();
  for (std::size_t i = 1; i < rd.size(); ++i)
    if (rd[i] != cd(0))
      throw UsageError(name + ": normal-chart den1 not constant on the line");
  cd d0 = rd.empty() ? cd(1) : rd[0];
  for (std::size_t i = 0; i < r1.size(); ++i) {
    cd expect = (static_cast<int>(i) == b) ? d0 : cd(0);
    if (r1[i] != expect)
      throw UsageError(name + ": restriction to the invariant line is not c1^b");
  }
  int num_ord = rp.num2.vanish_order_y();
  int den_ord = rp.den2.vanish_order_y();
  if (den_ord != 0)
    throw UsageError(name + ": normal-chart den2 vanishes on the line");
  if (num_ord < a)
    throw UsageError(name + ": transverse coordinate vanishes to order " +
                     std::to_string(num_ord) + " < a");
}

namespace {

using Terms = std::initializer_list<std::tuple<int, int, double>>;

RationalPair make_rp(Terms n1, Terms d1, Terms n2, Terms d2) {
  RationalPair rp{poly_from_terms(n1), poly_from_terms(d1),
                  poly_from_terms(n2), poly_from_terms(d2)};
  rp.check();
  return rp;
}

MapSpec make_R() {
  MapSpec m;
  m.name = "R";
  m.a = 2;
  m.b = 4;
  m.skew = false;
  m.topological_degree = 8;
  m.invariant_circle = "|z|=1, t=0 in physical-zt (|p|=1, q=0 in pq)";
  // physical (z, t):
  //   z' = z^2 (z^2 + t^2) / (1 + z^2 t^2)
  //   t' = t^2 (z^2 + 1)^2 / (z^2 + t^2 (z^4 + 1) + z^2 t^4)
  m.charts.push_back({ChartId::PhysicalZT,
                      make_rp({{4, 0, 1}, {2, 2, 1}},
                              {{0, 0, 1}, {2, 2, 1}},
                              {{4, 2, 1}, {2, 2, 2}, {0, 2, 1}},
                              {{2, 0, 1}, {4, 2, 1}, {0, 2, 1}, {2, 4, 1}})});
  // pq (p, q) centered at the superattracting fixed point on the line:
  //   p' = p^2 (p + 2q)^2 / (1 + q^2)^2
  //   q' = q^2 (1 + (p + q)^2)^2 / (1 + q^2)^2
  m.charts.push_back(
      {ChartId::PqAtInfinity,
       make_rp({{4, 0, 1}, {3, 1, 4}, {2, 2, 4}},
               {{0, 0, 1}, {0, 2, 2}, {0, 4, 1}},
               {{0, 2, 1}, {2, 2, 2}, {1, 3, 4}, {0, 4, 2}, {4, 2, 1},
                {3, 3, 4}, {2, 4, 6}, {1, 5, 4}, {0, 6, 1}},
               {{0, 0, 1}, {0, 2, 2}, {0, 4, 1}})});
  // p = (1 - t)/z, q = t/z and back z = 1/(p + q), t = q/(p + q)
  m.transitions.push_back({ChartId::PhysicalZT, ChartId::PqAtInfinity,
                           make_rp({{0, 0, 1}, {0, 1, -1}}, {{1, 0, 1}},
                                   {{0, 1, 1}}, {{1, 0, 1}})});
  m.transitions.push_back({ChartId::PqAtInfinity, ChartId::PhysicalZT,
                           make_rp({{0, 0, 1}}, {{1, 0, 1}, {0, 1, 1}},
                                   {{0, 1, 1}}, {{1, 0, 1}, {0, 1, 1}})});
  m.frame = {ChartId::PqAtInfinity, 0};
  m.attractors.push_back({"p-infinity", ChartId::PqAtInfinity, 0.0, 0.0, 1e-3});
  m.attractors.push_back({"other", ChartId::PhysicalZT, 0.0, 1.0, 1e-3});
  m.special_points.push_back({"p-infinity", {ChartId::PqAtInfinity, 0.0, 0.0}});
  m.special_points.push_back({"p2", {ChartId::PhysicalZT, 0.0, 1.0}});
  m.special_points.push_back({"b0", {ChartId::PhysicalZT, 0.0, 0.0}});
  return m;
}

MapSpec make_skew(const std::string& name, bool control) {
  MapSpec m;
  m.name = name;
  m.skew = true;
  if (!control) {
    // f(z, w) = (z^3 + 2 w z^2, w^2)
    m.a = 2;
    m.b = 3;
    m.charts.push_back({ChartId::AffineZero,
                        make_rp({{3, 0, 1}, {2, 1, 2}}, {{0, 0, 1}},
                                {{0, 2, 1}}, {{0, 0, 1}})});
    // (Z, W) = (1/z, w/z):  Z' = Z^3/(1 + 2W),  W' = W^2 Z/(1 + 2W)
    m.charts.push_back({ChartId::AffineInfinity,
                        make_rp({{3, 0, 1}}, {{0, 0, 1}, {0, 1, 2}},
                                {{1, 2, 1}}, {{0, 0, 1}, {0, 1, 2}})});
  } else {
    // m(z, w) = (z^2 + w^2 z, w^2), the a = b comparison subject
    m.a = 2;
    m.b = 2;
    m.charts.push_back({ChartId::AffineZero,
                        make_rp({{2, 0, 1}, {1, 2, 1}}, {{0, 0, 1}},
                                {{0, 2, 1}}, {{0, 0, 1}})});
    // Z' = Z^3/(Z + W^2),  W' = W^2 Z/(Z + W^2)
    m.charts.push_back({ChartId::AffineInfinity,
                        make_rp({{3, 0, 1}}, {{1, 0, 1}, {0, 2, 1}},
                                {{1, 2, 1}}, {{1, 0, 1}, {0, 2, 1}})});
  }
  m.invariant_circle = "|z|=1, w=0 in affine-zero";
  m.transitions.push_back({ChartId::AffineZero, ChartId::AffineInfinity,
                           make_rp({{0, 0, 1}}, {{1, 0, 1}}, {{0, 1, 1}},
                                   {{1, 0, 1}})});
  m.transitions.push_back({ChartId::AffineInfinity, ChartId::AffineZero,
                           make_rp({{0, 0, 1}}, {{1, 0, 1}}, {{0, 1, 1}},
                                   {{1, 0, 1}})});
  m.frame = {ChartId::AffineZero, 1};
  m.attractors.push_back({"p-infinity", ChartId::AffineInfinity, 0.0, 0.0, 1e-3});
  m.attractors.push_back({"other", ChartId::AffineZero, 0.0, 0.0, 1e-3});
  m.special_points.push_back({"circle-fixed-point", {ChartId::AffineZero, 1.0, 0.0}});
  return m;
}

MapSpec make_g() {
  MapSpec m;
  m.name = "g";
  m.a = 3;
  m.b = 2;
  m.skew = false;
  m.invariant_circle = "|x|=1, y=0 in affine-zero";
  // g(x, y) = (x^2 + y(1 + x y), y^3 (1 + x y))
  m.charts.push_back({ChartId::AffineZero,
                      make_rp({{2, 0, 1}, {0, 1, 1}, {1, 2, 1}}, {{0, 0, 1}},
                              {{0, 3, 1}, {1, 4, 1}}, {{0, 0, 1}})});
  // blowup chart (zeta, tau) = (1/x, x y):
  //   zeta' = zeta^2 / (1 + tau zeta^3 (1 + tau))
  //   tau'  = tau^3 zeta (1 + tau)(1 + tau zeta^3 + tau^2 zeta^3)
  m.charts.push_back(
      {ChartId::BlowupZetaTau,
       make_rp({{2, 0, 1}}, {{0, 0, 1}, {3, 1, 1}, {3, 2, 1}},
               {{1, 3, 1}, {1, 4, 1}, {4, 4, 1}, {4, 5, 2}, {4, 6, 1}},
               {{0, 0, 1}})});
  m.transitions.push_back({ChartId::AffineZero, ChartId::BlowupZetaTau,
                           make_rp({{0, 0, 1}}, {{1, 0, 1}}, {{1, 1, 1}},
                                   {{0, 0, 1}})});
  m.transitions.push_back({ChartId::BlowupZetaTau, ChartId::AffineZero,
                           make_rp({{0, 0, 1}}, {{1, 0, 1}}, {{1, 1, 1}},
                                   {{0, 0, 1}})});
  m.frame = {ChartId::AffineZero, -1};
  m.attractors.push_back({"p-infinity", ChartId::BlowupZetaTau, 0.0, 0.0, 1e-3});
  m.attractors.push_back({"other", ChartId::AffineZero, 0.0, 0.0, 1e-3});
  m.special_points.push_back({"blowup-origin", {ChartId::BlowupZetaTau, 0.0, 0.0}});
  return m;
}

MapSpec make_newton() {
  MapSpec m;
  m.name = "N";
  m.a = 2;
  m.b = 2;
  m.skew = false;
  m.invariant_circle = "Re(y)=1/2 on x=0; |s|=1 with s = y/(y-1)";
  // Native chart (x, y), parameter B = 1:
  //   x' = x^2 / (2x - 1)
  //   y' = y (x^2 + 2xy - x - y) / ((2x - 1)(x + 2y - 1))
  m.charts.push_back(
      {ChartId::AffineZero,
       make_rp({{2, 0, 1}}, {{1, 0, 2}, {0, 0, -1}},
               {{2, 1, 1}, {1, 2, 2}, {1, 1, -1}, {0, 2, -1}},
               {{2, 0, 2}, {1, 1, 4}, {1, 0, -3}, {0, 1, -2}, {0, 0, 1}})});
  // Conjugated chart (s, u) = (y/(y-1), x); the fiber Newton map becomes
  // s -> s^2 and the transverse coordinate is u:
  //   s' = (s^2 - u^2 s(s-1) - u s(s+1)) / (u^2 (s-1)(s-2) + u(s-3) + 1)
  //   u' = u^2 / (2u - 1)
  m.charts.push_back(
      {ChartId::AffineInfinity,
       make_rp({{2, 0, 1}, {2, 2, -1}, {1, 2, 1}, {2, 1, -1}, {1, 1, -1}},
               {{2, 2, 1}, {1, 2, -3}, {0, 2, 2}, {1, 1, 1}, {0, 1, -3},
                {0, 0, 1}},
               {{0, 2, 1}}, {{0, 1, 2}, {0, 0, -1}})});
  // (x, y) -> (s, u): s = y/(y-1), u = x; inverse x = u, y = s/(s-1)
  m.transitions.push_back({ChartId::AffineZero, ChartId::AffineInfinity,
                           make_rp({{0, 1, 1}}, {{0, 1, 1}, {0, 0, -1}},
                                   {{1, 0, 1}}, {{0, 0, 1}})});
  m.transitions.push_back({ChartId::AffineInfinity, ChartId::AffineZero,
                           make_rp({{0, 1, 1}}, {{0, 0, 1}}, {{1, 0, 1}},
                                   {{1, 0, 1}, {0, 0, -1}})});
  m.frame = {ChartId::AffineInfinity, 0};
  m.attractors.push_back({"p-infinity", ChartId::AffineZero, 0.0, 0.0, 1e-3});
  m.attractors.push_back({"other", ChartId::AffineZero, 0.0, 1.0, 1e-3});
  m.special_points.push_back({"root-0", {ChartId::AffineZero, 0.0, 0.0}});
  m.special_points.push_back({"root-1", {ChartId::AffineZero, 0.0, 1.0}});
  return m;
}

}  // namespace

const std::vector<MapSpec>& catalog() {
  static const std::vector<MapSpec> maps = [] {
    std::vector<MapSpec> v;
    v.push_back(make_R());
    v.push_back(make_skew("f", false));
    v.push_back(make_skew("m", true));
    v.push_back(make_g());
    v.push_back(make_newton());
    for (const auto& m : v) m.verify_normal_form();
    return v;
  }();
  return maps;
}

const MapSpec& find_map(const std::string& name) {
  for (const auto& m : catalog())
    if (m.name == name) return m;
  throw UsageError("unknown map: " + name);
}

namespace {

using nlohmann::json;

json poly_to_json(const Poly2& p) {
  json terms = json::array();
  for (int i = 0; i <= p.deg_x(); ++i)
    for (int j = 0; j <= p.deg_y(); ++j) {
      cd v = p.at(i, j);
      if (v != cd(0)) terms.push_back({i, j, v.real(), v.imag()});
    }
  return terms;
}

Poly2 poly_from_json(const json& terms) {
  int dx = 0, dy = 0;
  for (const auto& t : terms) {
    dx = std::max(dx, t.at(0).get<int>());
    dy = std::max(dy, t.at(1).get<int>());
  }
  Poly2 p(dx, dy);
  for (const auto& t : terms)
    p.set(t.at(0).get<int>(), t.at(1).get<int>(),
          cd(t.at(2).get<double>(), t.at(3).get<double>()));
  return p;
}

json rp_to_json(const RationalPair& rp) {
  return {{"num1", poly_to_json(rp.num1)},
          {"den1", poly_to_json(rp.den1)},
          {"num2", poly_to_json(rp.num2)},
          {"den2", poly_to_json(rp.den2)}};
}

RationalPair rp_from_json(const json& j) {
  RationalPair rp{poly_from_json(j.at("num1")), poly_from_json(j.at("den1")),
                  poly_from_json(j.at("num2")), poly_from_json(j.at("den2"))};
  rp.check();
  return rp;
}

}  // namespace

std::string mapspec_to_json(const MapSpec& m) {
  json j;
  j["name"] = m.name;
  j["a"] = m.a;
  j["b"] = m.b;
  j["skew"] = m.skew;
  j["invariant_circle"] = m.invariant_circle;
  if (m.topological_degree)
    j["topological_degree"] = *m.topological_degree;
  else
    j["topological_degree"] = nullptr;
  j["normal_chart"] = chart_name(m.frame.chart);
  j["inf_twist"] = m.frame.inf_twist;
  j["charts"] = json::array();
  for (const auto& [id, rp] : m.charts) {
    json c = rp_to_json(rp);
    c["chart"] = chart_name(id);
    j["charts"].push_back(c);
  }
  j["transitions"] = json::array();
  for (const auto& t : m.transitions) {
    json c = rp_to_json(t.formula);
    c["from"] = chart_name(t.from);
    c["to"] = chart_name(t.to);
    j["transitions"].push_back(c);
  }
  j["attractors"] = json::array();
  for (const auto& a : m.attractors)
    j["attractors"].push_back({{"label", a.label},
                               {"chart", chart_name(a.chart)},
                               {"c1", {a.c1.real(), a.c1.imag()}},
                               {"c2", {a.c2.real(), a.c2.imag()}},
                               {"radius", a.radius}});
  j["special_points"] = json::array();
  for (const auto& s : m.special_points)
    j["special_points"].push_back(
        {{"label", s.label},
         {"chart", chart_name(s.point.chart)},
         {"c1", {s.point.c1.real(), s.point.c1.imag()}},
         {"c2", {s.point.c2.real(), s.point.c2.imag()}}});
  return j.dump(2);
}

MapSpec mapspec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("map JSON parse error: ") + e.what());
  }
  try {
    MapSpec m;
    m.name = j.at("name").get<std::string>();
    m.a = j.at("a").get<int>();
    m.b = j.at("b").get<int>();
    m.skew = j.value("skew", false);
    m.invariant_circle = j.value("invariant_circle", std::string());
    if (j.contains("topological_degree") && !j["topological_degree"].is_null())
      m.topological_degree = j["topological_degree"].get<int>();
    m.frame.chart = chart_from_name(j.at("normal_chart").get<std::string>());
    m.frame.inf_twist = j.value("inf_twist", 0);
    for (const auto& c : j.at("charts"))
      m.charts.push_back(
          {chart_from_name(c.at("chart").get<std::string>()), rp_from_json(c)});
    for (const auto& c : j.value("transitions", json::array()))
      m.transitions.push_back({chart_from_name(c.at("from").get<std::string>()),
                               chart_from_name(c.at("to").get<std::string>()),
                               rp_from_json(c)});
    for (const auto& c : j.value("attractors", json::array()))
      m.attractors.push_back(
          {c.at("label").get<std::string>(),
           chart_from_name(c.at("chart").get<std::string>()),
           cd(c.at("c1")[0].get<double>(), c.at("c1")[1].get<double>()),
           cd(c.at("c2")[0].get<double>(), c.at("c2")[1].get<double>()),
           c.value("radius", 1e-3)});
    for (const auto& c : j.value("special_points", json::array()))
      m.special_points.push_back(
          {c.at("label").get<std::string>(),
           {chart_from_name(c.at("chart").get<std::string>()),
            cd(c.at("c1")[0].get<double>(), c.at("c1")[1].get<double>()),
            cd(c.at("c2")[0].get<double>(), c.at("c2")[1].get<double>())}});
    m.verify_normal_form();
    return m;
  } catch (const json::exception& e) {
    throw UsageError(std::string("map JSON schema error: ") + e.what());
  }
}

MapSpec load_mapspec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open map file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return mapspec_from_json(ss.str());
}

}  // namespace sac
