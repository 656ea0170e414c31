#include "tci/euler.hpp"

#include <algorithm>
#include <sstream>

namespace tci {

GasModel::GasModel(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0)) {
    std::ostringstream msg;
    msg << "gas model: gamma must exceed 1, got " << gamma;
    throw Error(msg.str());
  }
}

bool is_admissible(const ConservedState& q, const GasModel& gas) {
  if (!(q.rho > 0.0) || !std::isfinite(q.rho)) return false;
  const double p = pressure_of(q, gas.gamma());
  return p > 0.0 && std::isfinite(p);
}

namespace {

[[noreturn]] void throw_inadmissible(double rho, double p, const std::string& context) {
  std::ostringstream msg;
  msg << "inadmissible state (rho=" << rho << ", p=" << p << ")";
  if (!context.empty()) msg << " at " << context;
  throw InadmissibleState(msg.str());
}

}  // namespace

void require_admissible(const ConservedState& q, const GasModel& gas,
                        const std::string& context) {
  if (!is_admissible(q, gas)) throw_inadmissible(q.rho, pressure_of(q, gas.gamma()), context);
}

void require_admissible(const PrimitiveState& w, const std::string& context) {
  if (!is_admissible(w)) throw_inadmissible(w.rho, w.p, context);
}

PrimitiveState primitive_from_conserved(const ConservedState& q, const GasModel& gas) {
  require_admissible(q, gas);
  return to_primitive_unchecked(q, gas.gamma());
}

ConservedState conserved_from_primitive(const PrimitiveState& w, const GasModel& gas) {
  require_admissible(w);
  return to_conserved_unchecked(w, gas.gamma());
}

double sound_speed(const PrimitiveState& w, const GasModel& gas) {
  require_admissible(w);
  return std::sqrt(gas.gamma() * w.p / w.rho);
}

namespace {

FluxVector flux_of(const PrimitiveState& w, double energy, Normal n) {
  const double vn = w.u * n.x + w.v * n.y;
  const double mass = w.rho * vn;
  return {mass, mass * w.u + w.p * n.x, mass * w.v + w.p * n.y, vn * (energy + w.p)};
}

}  // namespace

FluxVector physical_flux(const ConservedState& q, Normal n, const GasModel& gas) {
  const PrimitiveState w = primitive_from_conserved(q, gas);
  return flux_of(w, q.energy, n);
}

double max_wave_speed(const ConservedState& q, Normal n, const GasModel& gas) {
  const PrimitiveState w = primitive_from_conserved(q, gas);
  return std::abs(w.u * n.x + w.v * n.y) + std::sqrt(gas.gamma() * w.p / w.rho);
}

FluxVector lax_friedrichs_flux(const ConservedState& left, const ConservedState& right,
                               Normal n, const GasModel& gas) {
  const double lambda = std::max(max_wave_speed(left, n, gas), max_wave_speed(right, n, gas));
  FluxVector f = 0.5 * (physical_flux(left, n, gas) + physical_flux(right, n, gas));
  f -= (0.5 * lambda) * (right - left);
  return f;
}

FluxVector lax_friedrichs_flux(const PrimitiveState& left, const PrimitiveState& right,
                               Normal n, double gamma, double* face_speed) {
  const ConservedState ql = to_conserved_unchecked(left, gamma);
  const ConservedState qr = to_conserved_unchecked(right, gamma);
  const double sl = std::abs(left.u * n.x + left.v * n.y) + std::sqrt(gamma * left.p / left.rho);
  const double sr =
      std::abs(right.u * n.x + right.v * n.y) + std::sqrt(gamma * right.p / right.rho);
  const double lambda = std::max(sl, sr);
  if (face_speed != nullptr) *face_speed = lambda;
  FluxVector f = 0.5 * (flux_of(left, ql.energy, n) + flux_of(right, qr.energy, n));
  f -= (0.5 * lambda) * (qr - ql);
  return f;
}

}  // namespace tci
