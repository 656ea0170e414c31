#include "tci/indicator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

#include "tci/csv.hpp"

namespace tci {

TroubledMask::TroubledMask(int nx, int ny, bool value)
    : nx_(nx),
      ny_(ny),
      flags_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), value ? 1 : 0),
      count_(value ? flags_.size() : 0) {}

void TroubledMask::set(int i, int j, bool value) {
  auto& f = flags_[offset(i, j)];
  if ((f != 0) == value) return;
  f = value ? 1 : 0;
  if (value) {
    ++count_;
  } else {
    --count_;
  }
}

bool TroubledMask::subset_of(const TroubledMask& other) const {
  if (other.nx_ != nx_ || other.ny_ != ny_) return false;
  for (std::size_t k = 0; k < flags_.size(); ++k) {
    if (flags_[k] != 0 && other.flags_[k] == 0) return false;
  }
  return true;
}

void validate(const IndicatorConfig& config) {
  if (!(config.k_threshold > 0.0) || !std::isfinite(config.k_threshold)) {
    std::ostringstream msg;
    msg << "indicator: threshold K must be positive, got " << config.k_threshold;
    throw Error(msg.str());
  }
}

double indicator_value(double center, std::span<const double> neighbors) {
  if (!(center > 0.0)) {
    std::ostringstream msg;
    msg << "indicator: non-positive density " << center;
    throw InadmissibleState(msg.str());
  }
  if (neighbors.empty()) throw Error("indicator: no neighbours");
  double jump = 0.0;
  double largest = center;
  for (double rho : neighbors) {
    if (!(rho > 0.0)) {
      std::ostringstream msg;
      msg << "indicator: non-positive neighbour density " << rho;
      throw InadmissibleState(msg.str());
    }
    jump += std::abs(rho - center);
    largest = std::max(largest, rho);
  }
  return jump / (static_cast<double>(neighbors.size()) * largest);
}

GhostedArray<double> indicator_values(const CellField& field) {
  const StructuredMesh& mesh = field.mesh;
  GhostedArray<double> values(mesh, 0.0);
  std::array<double, 4> around{};
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      const auto nbrs = mesh.neighbors({i, j});
      for (std::size_t k = 0; k < nbrs.size(); ++k) around[k] = field.states[nbrs[k]].rho;
      try {
        values(i, j) = indicator_value(field.states(i, j).rho, around);
      } catch (const InadmissibleState& e) {
        std::ostringstream msg;
        msg << e.what() << " at cell (" << i << ", " << j << ")";
        throw InadmissibleState(msg.str());
      }
    }
  }
  return values;
}

TroubledMask flag_troubled_cells(const GhostedArray<double>& values,
                                 const IndicatorConfig& config) {
  validate(config);
  TroubledMask mask(values.nx(), values.ny(), false);
  for (int j = 0; j < values.ny(); ++j) {
    for (int i = 0; i < values.nx(); ++i) {
      if (values(i, j) > config.k_threshold) mask.set(i, j, true);
    }
  }
  return mask;
}

TroubledMask flag_troubled_cells(const CellField& field, const IndicatorConfig& config) {
  validate(config);
  return flag_troubled_cells(indicator_values(field), config);
}

void write_mask_csv(std::ostream& out, const GhostedArray<double>& values,
                    const TroubledMask& mask) {
  out << "i,j,indicator,flagged\n";
  for (int j = 0; j < mask.ny(); ++j) {
    for (int i = 0; i < mask.nx(); ++i) {
      out << i << ',' << j << ',' << format_double(values(i, j)) << ','
          << (mask.flagged(i, j) ? 1 : 0) << '\n';
    }
  }
}

}  // namespace tci
