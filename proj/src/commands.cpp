#include "tci/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "tci/csv.hpp"
#include "tci/output.hpp"

namespace tci {

std::optional<Command> parse_command(std::string_view name) {
  if (name == "run") return Command::run;
  if (name == "flag") return Command::flag;
  if (name == "compare") return Command::compare;
  if (name == "cases-list") return Command::cases_list;
  return std::nullopt;
}

namespace {

std::string mode_name(RunMode mode) { return mode == RunMode::steady ? "steady" : "unsteady"; }

std::string k_label(const std::optional<double>& k) {
  if (!k.has_value()) return "none";
  return format_double(k.value());
}

std::string mask_file_name(double k) { return "mask_K" + format_double(k) + ".csv"; }

ArtifactHeader header_for(const AppConfig& cfg, const std::string& limiting,
                          std::optional<double> k) {
  return {hash_hex(cfg.hash), cfg.case_name, mode_name(cfg.run.mode), limiting, k_label(k),
          cfg.nx, cfg.ny};
}

CaseDefinition case_of(const AppConfig& cfg) {
  return make_case(cfg.case_name, cfg.nx, cfg.ny, cfg.beta);
}

void require_steady(const AppConfig& cfg, const char* command) {
  if (cfg.run.mode != RunMode::steady) {
    throw ConfigError(std::string(command) + " needs a steady case; '" + cfg.case_name +
                      "' is unsteady");
  }
}

// Pre/post windows and combined norms of a converged steady field.
struct LineMetrics {
  ShockLineReport report;
  WindowNorms window;
};

LineMetrics line_metrics(const CellField& field, const CaseDefinition& c, std::size_t width) {
  const LineProfile profile = line_profile(field, c);
  return {monotonicity_report(profile, width), l2_linf_window_report(profile, width)};
}

}  // namespace

std::vector<std::string> planned_artifacts(Command command, const AppConfig& cfg) {
  std::vector<std::string> names;
  switch (command) {
    case Command::run:
      names = {cfg.outputs.history, cfg.outputs.field, cfg.outputs.mask, cfg.outputs.report};
      if (cfg.outputs.vtk) names.push_back(*cfg.outputs.vtk);
      break;
    case Command::flag: {
      require_steady(cfg, "flag");
      if (cfg.k_list.empty()) throw ConfigError("flag needs a non-empty 'k_list'");
      for (double k : cfg.k_list) names.push_back(mask_file_name(k));
      names.push_back(cfg.outputs.flag_summary);
      break;
    }
    case Command::compare:
      require_steady(cfg, "compare");
      if (cfg.compare.size() < 2) {
        throw ConfigError("compare needs at least two settings in 'compare'");
      }
      names = {cfg.outputs.compare};
      break;
    case Command::cases_list:
      break;
  }
  std::set<std::string> unique;
  for (const auto& n : names) {
    if (!unique.insert(n).second) throw ConfigError("two outputs share the file name '" + n + "'");
  }
  return names;
}

std::vector<Artifact> cmd_run(const AppConfig& cfg) {
  const CaseDefinition c = case_of(cfg);
  const GasModel gas(cfg.gamma);
  const RunResult result = run(cfg.run, c, gas);
  const ArtifactHeader header = header_for(cfg, cfg.limiting.name(), cfg.run.k_threshold);

  std::vector<Artifact> out;
  std::ostringstream history;
  write_history_csv(history, header, result.history);
  out.push_back({cfg.outputs.history, history.str()});

  std::ostringstream fieldcsv;
  write_field_csv(fieldcsv, header, result.field, gas);
  out.push_back({cfg.outputs.field, fieldcsv.str()});

  std::ostringstream mask;
  write_mask_artifact(mask, header, result.indicator, result.mask);
  out.push_back({cfg.outputs.mask, mask.str()});

  std::ostringstream report;
  report << header_line(header) << '\n';
  if (result.unsteady) {
    const UnsteadyStats& s = *result.unsteady;
    const auto imbalance = conservation_imbalance(s);
    static constexpr const char* names[4] = {"mass", "momentum_x", "momentum_y", "energy"};
    report << "case,mode,K,quantity,initial_total,final_total,boundary_outflow,relative_imbalance\n";
    for (std::size_t k = 0; k < 4; ++k) {
      report << cfg.case_name << ',' << cfg.limiting.name() << ',' << header.k << ',' << names[k]
             << ',' << format_double(s.initial_total[static_cast<int>(k)]) << ','
             << format_double(s.final_total[static_cast<int>(k)]) << ','
             << format_double(s.boundary_outflow_integral[static_cast<int>(k)]) << ','
             << format_double(imbalance[k]) << '\n';
    }
  } else {
    const LineMetrics m = line_metrics(result.field, c, cfg.window);
    write_report_header(report);
    write_report_rows(report, cfg.case_name, cfg.limiting.name(), header.k, m.report, m.window);
  }
  out.push_back({cfg.outputs.report, report.str()});

  if (cfg.outputs.vtk) {
    std::ostringstream vtk;
    write_density_vtk(vtk, header, result.field);
    out.push_back({*cfg.outputs.vtk, vtk.str()});
  }
  return out;
}

std::vector<Artifact> cmd_flag(const AppConfig& cfg) {
  planned_artifacts(Command::flag, cfg);
  const CaseDefinition c = case_of(cfg);
  const GasModel gas(cfg.gamma);
  const FirstOrderSolution first = solve_first_order(cfg.run, c, gas);

  std::vector<Artifact> out;
  std::ostringstream summary;
  summary << header_line(header_for(cfg, "first_order", std::nullopt)) << '\n'
          << "K,flagged,pre_shock,post_shock\n";
  for (double k : cfg.k_list) {
    const TroubledMask mask = flag_troubled_cells(first.indicator, {k});
    std::ostringstream csv;
    write_mask_artifact(csv, header_for(cfg, "first_order", k), first.indicator, mask);
    out.push_back({mask_file_name(k), csv.str()});
    summary << format_double(k) << ',' << mask.count() << ',';
    if (c.shock) {
      const SideCounts sides = count_by_shock_side(mask, first.field.mesh, *c.shock);
      summary << sides.pre << ',' << sides.post << '\n';
    } else {
      summary << ",\n";
    }
  }
  out.push_back({cfg.outputs.flag_summary, summary.str()});
  return out;
}

std::vector<Artifact> cmd_compare(const AppConfig& cfg) {
  planned_artifacts(Command::compare, cfg);
  const CaseDefinition c = case_of(cfg);
  const GasModel gas(cfg.gamma);
  const FirstOrderSolution first = solve_first_order(cfg.run, c, gas);

  std::ostringstream csv;
  csv << header_line(header_for(cfg, "compare", cfg.run.k_threshold)) << '\n'
      << "setting,limiting,K,flagged_cells,L2_window,Linf_window,pre_L2,pre_Linf,pre_TV,"
         "post_L2,post_Linf,post_TV,Linf_overall,TV_overall,mu,iterations,converged,final_RN,"
         "iterations_to_1e-10,wall_time_s\n";
  for (const LimitingSetting& s : cfg.compare) {
    const RunConfig rc = cfg.run_for(s);
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = continue_high_order(first, rc, c, gas);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const LineMetrics m = line_metrics(r.field, c, cfg.window);
    const auto reach = iterations_to_reach(r.history, 1e-10);
    const bool thresholded =
        s.limiting == LimitingMode::restricted && s.mask_source == MaskSource::indicator;
    const std::string k = thresholded ? format_double(rc.k_threshold.value_or(0.0)) : "none";
    const std::string label = thresholded ? s.name() + ':' + k : s.name();
    csv << label << ',' << s.name() << ',' << k<< ',' << r.mask.count() << ','
        << format_double(m.window.l2) << ',' << format_double(m.window.linf) << ','
        << format_double(m.report.pre.l2) << ',' << format_double(m.report.pre.linf) << ','
        << format_double(m.report.pre.tv) << ',' << format_double(m.report.post.l2) << ','
        << format_double(m.report.post.linf) << ',' << format_double(m.report.post.tv) << ','
        << format_double(m.report.overall_linf) << ',' << format_double(m.report.overall_tv)
        << ',' << format_double(m.report.mu) << ',' << r.history.iterations_used << ','
        << (r.history.converged ? 1 : 0) << ','
        << format_double(r.history.rn.empty() ? 0.0 : r.history.rn.back()) << ','
        << (reach ? std::to_string(*reach) : std::string()) << ','
        << format_double(seconds) << '\n';
  }
  return {{cfg.outputs.compare, csv.str()}};
}

void cmd_cases_list(std::ostream& out) {
  for (const CaseInfo& info : case_registry()) {
    out << info.name << '\t' << info.summary << '\n';
  }
}

void ensure_writable(const std::filesystem::path& dir, const std::vector<std::string>& names,
                     bool force) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_directory(dir, ec)) {
    throw IoError("output path '" + dir.string() + "' is not a directory");
  }
  if (force) return;
  for (const auto& n : names) {
    if (fs::exists(dir / n, ec)) {
      throw IoError("refusing to overwrite '" + (dir / n).string() + "' (use --force)");
    }
  }
}

void write_artifacts(const std::filesystem::path& dir, const std::vector<Artifact>& artifacts) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  for (const Artifact& a : artifacts) {
    const fs::path path = dir / a.name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << a.content;
    f.close();
    if (!f) throw IoError("cannot write '" + path.string() + "'");
  }
}

int execute(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.command == Command::cases_list) {
      cmd_cases_list(out);
      return kExitOk;
    }
    const AppConfig cfg = load_config(options.config);
    const std::vector<std::string> names = planned_artifacts(options.command, cfg);
    ensure_writable(options.out, names, options.force);
    std::vector<Artifact> artifacts;
    switch (options.command) {
      case Command::run:
        artifacts = cmd_run(cfg);
        break;
      case Command::flag:
        artifacts = cmd_flag(cfg);
        break;
      case Command::compare:
        artifacts = cmd_compare(cfg);
        break;
      case Command::cases_list:
        break;
    }
    write_artifacts(options.out, artifacts);
    for (const Artifact& a : artifacts) out << (options.out / a.name).string() << '\n';
    return kExitOk;
  } catch (const IoError& e) {
    err << "tci: I/O error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const ConfigError& e) {
    err << "tci: config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InvalidDimension& e) {
    err << "tci: config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const WindowError& e) {
    err << "tci: config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    err << "tci: numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "tci: I/O error: " << e.what() << '\n';
    return kExitIoError;
  }
}

}  // namespace tci
