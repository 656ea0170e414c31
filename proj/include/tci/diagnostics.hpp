#ifndef TCI_DIAGNOSTICS_HPP
#define TCI_DIAGNOSTICS_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tci/errors.hpp"

namespace tci {

/// Numerical and exact density along a line crossing the shock.
struct LineProfile {
  std::vector<double> xs;
  std::vector<double> rho_num;
  std::vector<double> rho_exact;
  /// Cell containing the exact shock crossing (the first cell at or after it).
  std::size_t shock_index = 0;
  /// Pre-shock side is at lower indices.
  bool upstream_left = true;
};

/// Throws Error if arrays differ in length, xs is not increasing, or
/// shock_index is out of range.
void validate(const LineProfile& profile);

struct RegionMetrics {
  double l2 = 0.0;
  double linf = 0.0;
  double tv = 0.0;
  std::size_t cell_count = 0;
};

struct ShockLineReport {
  RegionMetrics pre;
  RegionMetrics post;
  double overall_linf = 0.0;  ///< pre.linf + post.linf
  double overall_tv = 0.0;    ///< pre.tv + post.tv
  double mu = 0.0;            ///< overall_tv - overall_linf
  std::size_t width = 0;
  bool shock_cell_excluded = true;
};

struct WindowNorms {
  double l2 = 0.0;
  double linf = 0.0;
};

struct ShockWindows {
  std::vector<std::size_t> pre;   ///< ordered along the line
  std::vector<std::size_t> post;  ///< ordered along the line
};

inline constexpr std::size_t kDefaultWindowWidth = 20;

/// e_i = rho_exact_i - rho_num_i.
std::vector<double> error_profile(const LineProfile& profile);

/// sqrt(mean of e^2). Throws Error on empty input.
double l2_norm(std::span<const double> e);
/// max |e|. Throws Error on empty input.
double linf_norm(std::span<const double> e);
/// sum |e_{i+1} - e_i|. Throws Error for fewer than two samples.
double total_variation(std::span<const double> e);

/// `width` cells on each side of the shock cell, which belongs to neither.
/// Throws WindowError when a side has fewer than `width` cells.
ShockWindows shock_windows(const LineProfile& profile, std::size_t width = kDefaultWindowWidth);

/// Regional L2/Linf/TV and the monotonicity parameter from the summed
/// regional Linf and TV values.
ShockLineReport monotonicity_report(const LineProfile& profile,
                                    std::size_t width = kDefaultWindowWidth);

/// Builds the report from regional metrics that were computed elsewhere.
ShockLineReport combine_regions(const RegionMetrics& pre, const RegionMetrics& post);

/// L2 and Linf over the concatenated pre + post windows.
WindowNorms l2_linf_window_report(const LineProfile& profile,
                                  std::size_t width = kDefaultWindowWidth);

/// Header and three rows (pre, post, overall) in the layout
/// `case,mode,K,region,L2,Linf,TV,mu_overall`.
void write_report_header(std::ostream& out);
void write_report_rows(std::ostream& out, const std::string& case_name, const std::string& mode,
                       const std::string& k_label, const ShockLineReport& report,
                       const WindowNorms& window);

}  // namespace tci

#endif  // TCI_DIAGNOSTICS_HPP
