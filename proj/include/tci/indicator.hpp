#ifndef TCI_INDICATOR_HPP
#define TCI_INDICATOR_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tci/field.hpp"

namespace tci {

/// Per-interior-cell troubled flags.
class TroubledMask {
 public:
  TroubledMask() = default;
  TroubledMask(int nx, int ny, bool value = false);

  static TroubledMask all(const StructuredMesh& mesh) { return {mesh.nx(), mesh.ny(), true}; }
  static TroubledMask none(const StructuredMesh& mesh) { return {mesh.nx(), mesh.ny(), false}; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }

  bool flagged(int i, int j) const { return flags_[offset(i, j)] != 0; }
  void set(int i, int j, bool value);

  std::size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

  /// Every flag of this mask is also set in `other`.
  bool subset_of(const TroubledMask& other) const;

  friend bool operator==(const TroubledMask& a, const TroubledMask& b) {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.flags_ == b.flags_;
  }

 private:
  std::size_t offset(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
  }

  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::uint8_t> flags_;
  std::size_t count_ = 0;
};

struct IndicatorConfig {
  /// Threshold K; a cell is troubled when its indicator value exceeds K.
  double k_threshold = 0.05;
};

void validate(const IndicatorConfig& config);

/// Name of the active indicator formula, written into artifact metadata.
inline constexpr const char* kIndicatorFormula = "sum_abs_diff_over_n_max";

/// Cell-average density jump indicator:
///
///   I = sum_k |rho_k - rho_c| / (n * max(rho_c, max_k rho_k))
///
/// over the n face neighbours k. Zero on constant data and invariant under a
/// uniform rescaling of the densities. Throws InadmissibleState for a
/// non-positive density.
double indicator_value(double center, std::span<const double> neighbors);

/// Indicator values on interior cells (ghost entries stay 0). Ghosts of the
/// field must be filled.
GhostedArray<double> indicator_values(const CellField& field);

/// Flags every interior cell whose indicator value exceeds K.
TroubledMask flag_troubled_cells(const CellField& field, const IndicatorConfig& config);
TroubledMask flag_troubled_cells(const GhostedArray<double>& values, const IndicatorConfig& config);

/// CSV rows `i,j,indicator,flagged` in row-major order.
void write_mask_csv(std::ostream& out, const GhostedArray<double>& values,
                    const TroubledMask& mask);

}  // namespace tci

#endif  // TCI_INDICATOR_HPP
