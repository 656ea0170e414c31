#ifndef TCI_EULER_HPP
#define TCI_EULER_HPP

#include <cmath>
#include <string>

#include "tci/errors.hpp"

namespace tci {

/// Conserved variables Q = (rho, rho u, rho v, E).
///
/// Also used as the carrier for flux and residual 4-vectors, which share the
/// same component layout.
struct ConservedState {
  double rho = 0.0;
  double mom_x = 0.0;
  double mom_y = 0.0;
  double energy = 0.0;

  ConservedState& operator+=(const ConservedState& o) {
    rho += o.rho;
    mom_x += o.mom_x;
    mom_y += o.mom_y;
    energy += o.energy;
    return *this;
  }
  ConservedState& operator-=(const ConservedState& o) {
    rho -= o.rho;
    mom_x -= o.mom_x;
    mom_y -= o.mom_y;
    energy -= o.energy;
    return *this;
  }
  ConservedState& operator*=(double s) {
    rho *= s;
    mom_x *= s;
    mom_y *= s;
    energy *= s;
    return *this;
  }

  double operator[](int k) const {
    switch (k) {
      case 0: return rho;
      case 1: return mom_x;
      case 2: return mom_y;
      default: return energy;
    }
  }

  friend bool operator==(const ConservedState&, const ConservedState&) = default;
};

inline ConservedState operator+(ConservedState a, const ConservedState& b) { return a += b; }
inline ConservedState operator-(ConservedState a, const ConservedState& b) { return a -= b; }
inline ConservedState operator*(double s, ConservedState a) { return a *= s; }
inline ConservedState operator*(ConservedState a, double s) { return a *= s; }

using FluxVector = ConservedState;

/// Primitive variables (rho, u, v, p).
struct PrimitiveState {
  double rho = 0.0;
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;

  friend bool operator==(const PrimitiveState&, const PrimitiveState&) = default;
};

/// Calorically perfect gas.
class GasModel {
 public:
  GasModel() = default;
  explicit GasModel(double gamma);

  double gamma() const { return gamma_; }

 private:
  double gamma_ = 1.4;
};

/// Unit face normal.
struct Normal {
  double x = 1.0;
  double y = 0.0;

  Normal operator-() const { return {-x, -y}; }
};

inline bool is_admissible(const PrimitiveState& w) {
  return w.rho > 0.0 && w.p > 0.0 && std::isfinite(w.rho) && std::isfinite(w.p) &&
         std::isfinite(w.u) && std::isfinite(w.v);
}

/// Pressure without admissibility checks; for inner loops.
inline double pressure_of(const ConservedState& q, double gamma) {
  const double kinetic = 0.5 * (q.mom_x * q.mom_x + q.mom_y * q.mom_y) / q.rho;
  return (gamma - 1.0) * (q.energy - kinetic);
}

inline PrimitiveState to_primitive_unchecked(const ConservedState& q, double gamma) {
  return {q.rho, q.mom_x / q.rho, q.mom_y / q.rho, pressure_of(q, gamma)};
}

inline ConservedState to_conserved_unchecked(const PrimitiveState& w, double gamma) {
  return {w.rho, w.rho * w.u, w.rho * w.v,
          w.p / (gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v)};
}

bool is_admissible(const ConservedState& q, const GasModel& gas);

/// Throws InadmissibleState (with `context` in the message) if rho <= 0 or p <= 0.
void require_admissible(const ConservedState& q, const GasModel& gas,
                        const std::string& context = {});
void require_admissible(const PrimitiveState& w, const std::string& context = {});

PrimitiveState primitive_from_conserved(const ConservedState& q, const GasModel& gas);
ConservedState conserved_from_primitive(const PrimitiveState& w, const GasModel& gas);

double sound_speed(const PrimitiveState& w, const GasModel& gas);

/// F(q) n_x + G(q) n_y.
FluxVector physical_flux(const ConservedState& q, Normal n, const GasModel& gas);

/// |V.n| + a.
double max_wave_speed(const ConservedState& q, Normal n, const GasModel& gas);

/// Local Lax-Friedrichs (Rusanov) flux with lambda = max of the two one-sided
/// wave speeds.
FluxVector lax_friedrichs_flux(const ConservedState& left, const ConservedState& right,
                               Normal n, const GasModel& gas);

/// Same flux from primitive face states, also reporting the face wave speed.
/// No admissibility checks.
FluxVector lax_friedrichs_flux(const PrimitiveState& left, const PrimitiveState& right,
                               Normal n, double gamma, double* face_speed = nullptr);

}  // namespace tci

#endif  // TCI_EULER_HPP
