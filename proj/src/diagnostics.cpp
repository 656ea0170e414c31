#include "tci/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "tci/csv.hpp"

namespace tci {

void validate(const LineProfile& profile) {
  const std::size_t n = profile.xs.size();
  if (profile.rho_num.size() != n || profile.rho_exact.size() != n) {
    throw Error("line profile: array lengths differ");
  }
  if (n == 0) throw Error("line profile: empty");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(profile.xs[i] > profile.xs[i - 1])) throw Error("line profile: xs not increasing");
  }
  if (profile.shock_index >= n) throw Error("line profile: shock index out of range");
}

std::vector<double> error_profile(const LineProfile& profile) {
  validate(profile);
  std::vector<double> e(profile.xs.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = profile.rho_exact[i] - profile.rho_num[i];
  return e;
}

double l2_norm(std::span<const double> e) {
  if (e.empty()) throw Error("l2 norm of an empty sequence");
  double sum = 0.0;
  for (double v : e) sum += v * v;
  return std::sqrt(sum / static_cast<double>(e.size()));
}

double linf_norm(std::span<const double> e) {
  if (e.empty()) throw Error("linf norm of an empty sequence");
  double m = 0.0;
  for (double v : e) m = std::max(m, std::abs(v));
  return m;
}

double total_variation(std::span<const double> e) {
  if (e.size() < 2) throw Error("total variation needs at least two samples");
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) tv += std::abs(e[i + 1] - e[i]);
  return tv;
}

ShockWindows shock_windows(const LineProfile& profile, std::size_t width) {
  validate(profile);
  if (width == 0) throw WindowError("shock window width must be positive");
  const std::size_t n = profile.xs.size();
  const std::size_t s = profile.shock_index;
  const std::size_t below = s;
  const std::size_t above = n - s - 1;
  if (below < width || above < width) {
    std::ostringstream msg;
    msg << "shock window of " << width << " cells does not fit: " << below
        << " cells before and " << above << " after shock index " << s;
    throw WindowError(msg.str());
  }
  ShockWindows w;
  std::vector<std::size_t> lower;
  std::vector<std::size_t> upper;
  for (std::size_t k = s - width; k < s; ++k) lower.push_back(k);
  for (std::size_t k = s + 1; k <= s + width; ++k) upper.push_back(k);
  if (profile.upstream_left) {
    w.pre = std::move(lower);
    w.post = std::move(upper);
  } else {
    w.pre = std::move(upper);
    w.post = std::move(lower);
  }
  return w;
}

namespace {

std::vector<double> gather(const std::vector<double>& e, const std::vector<std::size_t>& idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (std::size_t k : idx) out.push_back(e[k]);
  return out;
}

RegionMetrics region_metrics(const std::vector<double>& e) {
  return {l2_norm(e), linf_norm(e), total_variation(e), e.size()};
}

}  // namespace

ShockLineReport combine_regions(const RegionMetrics& pre, const RegionMetrics& post) {
  ShockLineReport r;
  r.pre = pre;
  r.post = post;
  r.overall_linf = pre.linf + post.linf;
  r.overall_tv = pre.tv + post.tv;
  r.mu = r.overall_tv - r.overall_linf;
  r.width = std::max(pre.cell_count, post.cell_count);
  return r;
}

ShockLineReport monotonicity_report(const LineProfile& profile, std::size_t width) {
  const ShockWindows w = shock_windows(profile, width);
  const std::vector<double> e = error_profile(profile);
  ShockLineReport r = combine_regions(region_metrics(gather(e, w.pre)),
                                      region_metrics(gather(e, w.post)));
  r.width = width;
  return r;
}

WindowNorms l2_linf_window_report(const LineProfile& profile, std::size_t width) {
  const ShockWindows w = shock_windows(profile, width);
  const std::vector<double> e = error_profile(profile);
  std::vector<double> both = gather(e, w.pre);
  const std::vector<double> post = gather(e, w.post);
  both.insert(both.end(), post.begin(), post.end());
  return {l2_norm(both), linf_norm(both)};
}

void write_report_header(std::ostream& out) { out << "case,mode,K,region,L2,Linf,TV,mu_overall\n"; }

void write_report_rows(std::ostream& out, const std::string& case_name, const std::string& mode,
                       const std::string& k_label, const ShockLineReport& report,
                       const WindowNorms& window) {
  const std::string prefix = case_name + ',' + mode + ',' + k_label + ',';
  const std::string mu = format_double(report.mu);
  out << prefix << "pre," << format_double(report.pre.l2) << ',' << format_double(report.pre.linf)
      << ',' << format_double(report.pre.tv) << ',' << mu << '\n';
  out << prefix << "post," << format_double(report.post.l2) << ','
      << format_double(report.post.linf) << ',' << format_double(report.post.tv) << ',' << mu
      << '\n';
  out << prefix << "overall," << format_double(window.l2) << ','
      << format_double(report.overall_linf) << ',' << format_double(report.overall_tv) << ','
      << mu << '\n';
}

}  // namespace tci
