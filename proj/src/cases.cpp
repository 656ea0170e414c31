#include "tci/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tci {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

struct Rotation {
  double c;
  double s;
  explicit Rotation(double angle_deg) : c(std::cos(angle_deg * kDegree)), s(std::sin(angle_deg * kDegree)) {}
  PrimitiveState apply(PrimitiveState w) const {
    const double u = c * w.u - s * w.v;
    const double v = s * w.u + c * w.v;
    w.u = u;
    w.v = v;
    return w;
  }
  Normal apply(Normal n) const { return {c * n.x - s * n.y, s * n.x + c * n.y}; }
};

double relative_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) / scale;
}

// Oblique shock case in the lab frame: incoming flow turned by `inflow_deg`,
// shock through (px, py).
CaseDefinition oblique_case(const std::string& name, int nx, int ny, double beta_deg,
                            double inflow_deg, double px, double py, const GasModel& gas) {
  CaseDefinition c;
  c.name = name;
  c.nx = nx;
  c.ny = ny;
  c.bounds = {0.0, 0.0, 1.0, 1.0};
  c.steady = true;
  c.inflow_angle_deg = inflow_deg;

  const ObliqueShockSolution sol = oblique_shock_exact(kOncomingMach, beta_deg, gas);
  c.oblique = sol;
  const Rotation rot(inflow_deg);
  const PrimitiveState pre = rot.apply(sol.pre);
  const PrimitiveState post = rot.apply(sol.post);
  const double b = beta_deg * kDegree;

  ShockGeometry shock;
  shock.x = px;
  shock.y = py;
  shock.angle_deg = inflow_deg - beta_deg;
  shock.downstream = rot.apply(Normal{std::sin(b), std::cos(b)});
  c.shock = shock;

  PointEvaluator exact = [shock, pre, post](double x, double y) {
    return shock.is_downstream(x, y) ? post : pre;
  };
  c.exact = exact;
  c.initial = exact;
  c.bcs.inflow = pre;
  c.bcs.exact = exact;
  c.sample_y = 0.5;

  std::ostringstream summary;
  summary << "M1=" << sol.m1 << " beta=" << beta_deg << "deg theta=" << sol.theta
          << "deg inflow_angle=" << inflow_deg << "deg rho2/rho1=" << sol.density_ratio()
          << " p2/p1=" << sol.pressure_ratio() << " shock through (" << px << ", " << py << ")";
  c.summary = summary.str();
  return c;
}

}  // namespace

ObliqueShockSolution oblique_shock_exact(double m1, double beta_deg, const GasModel& gas) {
  if (!(m1 >= 1.0) || !std::isfinite(m1)) {
    std::ostringstream msg;
    msg << "oblique shock: inflow Mach number must be >= 1, got " << m1;
    throw RangeError(msg.str());
  }
  const double mach_angle = std::asin(1.0 / m1) / kDegree;
  if (!(beta_deg >= mach_angle - 1e-12 && beta_deg <= 90.0)) {
    std::ostringstream msg;
    msg << "oblique shock: beta=" << beta_deg << "deg outside [" << mach_angle
        << ", 90] for M1=" << m1;
    throw RangeError(msg.str());
  }

  const double g = gas.gamma();
  const double b = beta_deg * kDegree;
  const double sb = std::sin(b);
  const double cb = std::cos(b);
  const double mn1_sq = m1 * m1 * sb * sb;

  ObliqueShockSolution s;
  s.m1 = m1;
  s.beta = beta_deg;
  s.gamma = g;

  const double rho_ratio = (g + 1.0) * mn1_sq / ((g - 1.0) * mn1_sq + 2.0);
  const double p_ratio = 1.0 + 2.0 * g / (g + 1.0) * (mn1_sq - 1.0);
  // theta-beta-M relation
  const double tan_theta = 2.0 * (cb / sb) * (mn1_sq - 1.0) /
                           (m1 * m1 * (g + std::cos(2.0 * b)) + 2.0);
  s.theta = std::atan(tan_theta) / kDegree;

  const double speed = m1 * std::sqrt(g);
  s.pre = {1.0, speed, 0.0, 1.0};

  // Tangential velocity is continuous; the normal component drops by the density ratio.
  const double vt = speed * cb;
  const double vn2 = speed * sb / rho_ratio;
  s.post = {rho_ratio, vt * cb + vn2 * sb, -vt * sb + vn2 * cb, p_ratio};
  return s;
}

std::array<double, 4> rankine_hugoniot_residuals(const ObliqueShockSolution& s) {
  const double b = s.beta * kDegree;
  const Normal n{std::sin(b), std::cos(b)};
  const Normal t{std::cos(b), -std::sin(b)};
  const double g = s.gamma;
  auto normal = [&](const PrimitiveState& w) { return w.u * n.x + w.v * n.y; };
  auto tangential = [&](const PrimitiveState& w) { return w.u * t.x + w.v * t.y; };
  auto enthalpy = [&](const PrimitiveState& w) {
    return g / (g - 1.0) * w.p / w.rho + 0.5 * (w.u * w.u + w.v * w.v);
  };
  const double w1 = normal(s.pre);
  const double w2 = normal(s.post);
  return {relative_gap(s.pre.rho * w1, s.post.rho * w2),
          relative_gap(s.pre.p + s.pre.rho * w1 * w1, s.post.p + s.post.rho * w2 * w2),
          relative_gap(tangential(s.pre), tangential(s.post)),
          relative_gap(enthalpy(s.pre), enthalpy(s.post))};
}

double ShockGeometry::crossing_x(double at_y) const {
  const double a = angle_deg * kDegree;
  const double dy = std::sin(a);
  if (std::abs(dy) < 1e-14) throw RangeError("shock line is horizontal; no unique crossing");
  return x + (at_y - y) / dy * std::cos(a);
}

CaseDefinition aligned_oblique_shock_case(int nx, int ny) {
  const GasModel gas;
  CaseDefinition c = oblique_case("aligned_oblique_shock", nx, ny, kAlignedBeta, 0.0, 0.1, 1.0, gas);
  c.bcs.kinds = {BoundaryKind::supersonic_inflow, BoundaryKind::supersonic_outflow,
                 BoundaryKind::supersonic_inflow, BoundaryKind::exact_dirichlet};
  return c;
}

CaseDefinition nonaligned_oblique_shock_case(int nx, int ny, double beta_deg) {
  const GasModel gas;
  CaseDefinition c = oblique_case("nonaligned_oblique_shock", nx, ny, beta_deg,
                                  kNonalignedInflowAngle, 0.5, 0.5, gas);
  c.bcs.kinds = {BoundaryKind::exact_dirichlet, BoundaryKind::supersonic_outflow,
                 BoundaryKind::exact_dirichlet, BoundaryKind::exact_dirichlet};
  return c;
}

QuadrantStates riemann2d_states() {
  // Four-shock configuration of Lax & Liu (configuration 3).
  QuadrantStates q;
  q.upper_right = {1.5, 0.0, 0.0, 1.5};
  q.upper_left = {0.5323, 1.206, 0.0, 0.3};
  q.lower_left = {0.138, 1.206, 1.206, 0.029};
  q.lower_right = {0.5323, 0.0, 1.206, 0.3};
  return q;
}

CaseDefinition riemann2d_case(int nx, int ny) {
  CaseDefinition c;
  c.name = "riemann2d";
  c.nx = nx;
  c.ny = ny;
  c.bounds = {0.0, 0.0, 1.0, 1.0};
  c.steady = false;
  c.final_time = 0.25;
  const QuadrantStates q = riemann2d_states();
  c.initial = [q](double x, double y) {
    if (y >= 0.5) return x >= 0.5 ? q.upper_right : q.upper_left;
    return x >= 0.5 ? q.lower_right : q.lower_left;
  };
  c.bcs.kinds = {BoundaryKind::supersonic_outflow, BoundaryKind::supersonic_outflow,
                 BoundaryKind::supersonic_outflow, BoundaryKind::supersonic_outflow};
  c.sample_y = 0.5;
  std::ostringstream summary;
  summary << "four-shock quadrants split at (0.5, 0.5), t_final=" << c.final_time
          << "; (rho,u,v,p) UR=(1.5,0,0,1.5) UL=(0.5323,1.206,0,0.3)"
          << " LL=(0.138,1.206,1.206,0.029) LR=(0.5323,0,1.206,0.3)";
  c.summary = summary.str();
  return c;
}

std::vector<CaseInfo> case_registry() {
  return {{"aligned_oblique_shock", aligned_oblique_shock_case(100, 100).summary},
          {"nonaligned_oblique_shock", nonaligned_oblique_shock_case(100, 100, 30.0).summary +
                                           " (beta configurable)"},
          {"riemann2d", riemann2d_case(100, 100).summary}};
}

namespace {

CaseDefinition case_by_name(const std::string& name, int nx, int ny,
                            std::optional<double> beta_deg) {
  if (name == "aligned_oblique_shock") {
    if (beta_deg && *beta_deg != kAlignedBeta) {
      throw ConfigError("aligned_oblique_shock has a fixed beta of 40 degrees");
    }
    return aligned_oblique_shock_case(nx, ny);
  }
  if (name == "nonaligned_oblique_shock") {
    return nonaligned_oblique_shock_case(nx, ny, beta_deg.value_or(30.0));
  }
  if (name == "riemann2d") {
    if (beta_deg) throw ConfigError("riemann2d does not take a shock angle");
    return riemann2d_case(nx, ny);
  }
  throw ConfigError("unknown case '" + name + "'");
}

}  // namespace

CaseDefinition make_case(const std::string& name, int nx, int ny, std::optional<double> beta_deg) {
  CaseDefinition c = case_by_name(name, nx, ny, beta_deg);
  (void)c.mesh();  // validates the grid
  return c;
}

CellField initial_field(const CaseDefinition& c, const GasModel& gas) {
  CellField field(c.mesh());
  const StructuredMesh& mesh = field.mesh;
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      field.states(i, j) = conserved_from_primitive(c.initial(mesh.x_center(i), mesh.y_center(j)), gas);
    }
  }
  return field;
}

LineProfile line_profile(const CellField& field, const CaseDefinition& c) {
  if (!c.exact || !c.shock) throw Error("case '" + c.name + "' has no exact shock solution");
  const StructuredMesh& mesh = field.mesh;
  const int j = mesh.row_nearest(c.sample_y);
  const double y = mesh.y_center(j);
  const double xs = c.shock->crossing_x(y);
  const Bounds& b = mesh.bounds();
  if (!(xs >= b.x0 && xs < b.x1)) {
    std::ostringstream msg;
    msg << "shock crosses the sampling row at x=" << xs << ", outside the domain";
    throw RangeError(msg.str());
  }

  LineProfile p;
  for (int i = 0; i < mesh.nx(); ++i) {
    const double x = mesh.x_center(i);
    p.xs.push_back(x);
    p.rho_num.push_back(field.states(i, j).rho);
    p.rho_exact.push_back((*c.exact)(x, y).rho);
  }
  const int cell = static_cast<int>(std::floor((xs - b.x0) / mesh.dx()));
  p.shock_index = static_cast<std::size_t>(std::clamp(cell, 0, mesh.nx() - 1));
  p.upstream_left = c.shock->is_downstream(xs + mesh.dx(), y);
  return p;
}

TroubledMask shock_straddle_mask(const StructuredMesh& mesh, const CaseDefinition& c) {
  if (!c.shock) throw Error("case '" + c.name + "' has no shock geometry");
  TroubledMask mask = TroubledMask::none(mesh);
  const Bounds& b = mesh.bounds();
  for (int j = 0; j < mesh.ny(); ++j) {
    const double xs = c.shock->crossing_x(mesh.y_center(j));
    if (!(xs >= b.x0 && xs <= b.x1)) continue;
    const int left = static_cast<int>(std::floor((xs - b.x0) / mesh.dx() - 0.5));
    for (int i : {left, left + 1}) {
      if (i >= 0 && i < mesh.nx()) mask.set(i, j, true);
    }
  }
  return mask;
}

SideCounts count_by_shock_side(const TroubledMask& mask, const StructuredMesh& mesh,
                               const ShockGeometry& shock) {
  SideCounts counts;
  for (int j = 0; j < mask.ny(); ++j) {
    for (int i = 0; i < mask.nx(); ++i) {
      if (!mask.flagged(i, j)) continue;
      if (shock.is_downstream(mesh.x_center(i), mesh.y_center(j))) {
        ++counts.post;
      } else {
        ++counts.pre;
      }
    }
  }
  return counts;
}

}  // namespace tci
