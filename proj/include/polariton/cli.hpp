#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polariton/config.hpp"
#include "polariton/diagnostics.hpp"
#include "polariton/export.hpp"
#include "polariton/rk4.hpp"
#include "polariton/snapshot.hpp"

namespace polariton::cli {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kRunFailed = 1,  // CFL rejection, non-finite state, failed CFL check
  kBadInput = 2,   // usage error, unreadable or invalid configuration or snapshot
};

namespace detail {

struct ConfigSource {
  std::string config_path;
  std::string preset_name;
  std::vector<std::string> overrides;  // key=value
  std::string policy;

  void add_to(CLI::App& cmd) {
    auto* cfg = cmd.add_option("--config", config_path, "Configuration file");
    auto* pre = cmd.add_option("--preset", preset_name, "Shipped preset name");
    cfg->excludes(pre);
    cmd.add_option("--set", overrides, "Override a parameter, [section.]key=value")
        ->allow_extra_args(false);
    cmd.add_option("--policy", policy, "CFL policy")->check(CLI::IsMember({"reject", "warn"}));
  }

  [[nodiscard]] std::string label() const {
    if (!preset_name.empty()) return preset_name;
    return std::filesystem::path(config_path).stem().string();
  }

  [[nodiscard]] ConfigDocument document() const {
    if (config_path.empty() && preset_name.empty()) {
      throw ConfigError("one of --config or --preset is required");
    }
    ConfigDocument doc = parse_config_document(
        preset_name.empty() ? read_text_file(config_path) : std::string(preset_text(preset_name)));
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      set_parameter(doc, polariton::detail::trim(std::string_view(kv).substr(0, eq)),
                    polariton::detail::trim(std::string_view(kv).substr(eq + 1)));
    }
    if (!policy.empty()) set_parameter(doc, "run.cfl_policy", policy);
    return doc;
  }
};

inline std::filesystem::path output_root() {
  if (const char* env = std::getenv("EPCS_OUT"); env && *env) return env;
  return "out";
}

inline std::vector<std::string> split_values(const std::string& list) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ',')) {
    item = polariton::detail::trim(item);
    if (item.empty()) throw ConfigError("--values: empty entry in '" + list + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError("--values: no values given");
  return out;
}

/// Run one configuration into `dir`: snapshots, resolved config, diagnostics
/// summary and number series.
inline RunResult run_into(const SimConfig& cfg, const std::filesystem::path& dir,
                          std::ostream& log) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "config.cfg");
    out << serialize(cfg);
  }
  for (const auto& old : list_snapshots(dir)) std::filesystem::remove(old);
  SnapshotDirectory sink(dir);
  const SimState init = initial_state(cfg);
  RunResult result = run_simulation(init, cfg.model, cfg.run, std::ref(sink));
  if (result.cfl_exceeded) {
    log << "warning: CFL ratio " << polariton::detail::format_number(result.cfl)
        << " > 1; the run may be unstable\n";
  }
  {
    std::ofstream out(dir / "diagnostics.txt");
    write_summary(out, result.diagnostics);
  }
  {
    std::ofstream out(dir / "number_series.csv");
    write_number_series(out, result.diagnostics);
  }
  return result;
}

inline std::string sweep_dir_name(const std::string& param, const std::string& value) {
  std::string name = param + "=" + value;
  for (char& c : name) {
    if (c == '/' || c == '\\' || c == ' ') c = '_';
  }
  return name;
}

}  // namespace detail

/// Entry point of the `polariton` tool. Writes results to `out` and messages
/// to `err`; returns the process exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Polariton condensate simulator", "polariton"};
  app.require_subcommand(1);

  detail::ConfigSource run_src;
  std::string run_out;
  auto* run_cmd = app.add_subcommand("run", "Run one configuration and write snapshots");
  run_src.add_to(*run_cmd);
  run_cmd->add_option("--out", run_out, "Output directory");

  detail::ConfigSource cfl_src;
  auto* cfl_cmd = app.add_subcommand("cfl-check", "Print the CFL ratio and PASS or FAIL");
  cfl_src.add_to(*cfl_cmd);

  detail::ConfigSource sweep_src;
  std::string sweep_param;
  std::string sweep_values;
  std::string sweep_out;
  unsigned sweep_jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run once per value of one parameter");
  sweep_src.add_to(*sweep_cmd);
  sweep_cmd->add_option("--param", sweep_param, "[section.]key to vary")->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep_cmd->add_option("--out", sweep_out, "Output root; one subdirectory per value");
  sweep_cmd->add_option("--jobs", sweep_jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  std::string csv_in;
  std::string csv_field;
  std::string csv_out;
  auto* csv_cmd = app.add_subcommand("export-csv", "Convert one snapshot to CSV");
  csv_cmd->add_option("--in", csv_in, "Snapshot file")->required();
  csv_cmd->add_option("--field", csv_field, "Field name (default: first field)");
  csv_cmd->add_option("--out", csv_out, "CSV file (default: standard output)");

  std::string diag_in;
  auto* diag_cmd = app.add_subcommand("diag", "Recompute diagnostics from a snapshot directory");
  diag_cmd->add_option("--in", diag_in, "Snapshot directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  // Resolve inputs first so that input errors and run failures map to
  // distinct statuses.
  try {
    if (*run_cmd) {
      const SimConfig cfg = resolve_config(run_src.document());
      const std::filesystem::path dir =
          run_out.empty() ? detail::output_root() / run_src.label() : std::filesystem::path(run_out);
      try {
        const RunResult r = detail::run_into(cfg, dir, err);
        write_summary(out, r.diagnostics);
        out << "output: " << dir.string() << '\n';
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kRunFailed;
      }
      return kOk;
    }

    if (*cfl_cmd) {
      const SimConfig cfg = resolve_config(cfl_src.document());
      const double ratio = cfl_ratio(make_grid(cfg.grid), cfg.run.h, kinetic_mass(cfg.model),
                                     hbar_of(cfg.model));
      const bool pass = ratio <= 1.0;
      out << "cfl_ratio: " << polariton::detail::format_number(ratio) << '\n';
      out << (pass ? "PASS" : "FAIL") << '\n';
      return pass ? kOk : kRunFailed;
    }

    if (*sweep_cmd) {
      const auto values = detail::split_values(sweep_values);
      const std::filesystem::path root =
          sweep_out.empty() ? detail::output_root() / (sweep_src.label() + "_sweep")
                            : std::filesystem::path(sweep_out);
      std::vector<SimConfig> configs;
      for (const auto& v : values) {
        ConfigDocument doc = sweep_src.document();
        set_parameter(doc, sweep_param, v);
        configs.push_back(resolve_config(doc));
      }

      struct Outcome {
        std::optional<RunDiagnostics> diagnostics;
        std::string error;
        std::string log;
      };
      auto run_one = [&](std::size_t k) {
        Outcome o;
        std::ostringstream log;
        try {
          o.diagnostics =
              detail::run_into(configs[k], root / detail::sweep_dir_name(sweep_param, values[k]),
                               log)
                  .diagnostics;
        } catch (const std::exception& e) {
          o.error = e.what();
        }
        o.log = log.str();
        return o;
      };

      std::vector<Outcome> outcomes(values.size());
      for (std::size_t start = 0; start < values.size(); start += sweep_jobs) {
        std::vector<std::future<Outcome>> batch;
        const std::size_t stop = std::min<std::size_t>(values.size(), start + sweep_jobs);
        for (std::size_t k = start; k < stop; ++k) {
          batch.push_back(std::async(std::launch::async, run_one, k));
        }
        for (std::size_t k = start; k < stop; ++k) outcomes[k] = batch[k - start].get();
      }

      bool failed = false;
      out << sweep_param << ",peak_density,peak_number,onset_time,directory\n";
      for (std::size_t k = 0; k < values.size(); ++k) {
        err << outcomes[k].log;
        const std::string dir = (root / detail::sweep_dir_name(sweep_param, values[k])).string();
        if (!outcomes[k].diagnostics) {
          failed = true;
          err << "error: " << sweep_param << " = " << values[k] << ": " << outcomes[k].error
              << '\n';
          out << values[k] << ",failed,failed,failed," << dir << '\n';
          continue;
        }
        const auto& d = *outcomes[k].diagnostics;
        out << values[k] << ',' << polariton::detail::format_number(d.peak_density) << ','
            << polariton::detail::format_number(d.peak_number) << ','
            << polariton::detail::format_time(d.onset_time) << ',' << dir << '\n';
      }
      return failed ? kRunFailed : kOk;
    }

    if (*csv_cmd) {
      const SimState s = read_snapshot_file(csv_in);
      if (csv_out.empty()) {
        write_csv(out, s, csv_field);
      } else {
        std::ofstream file(csv_out);
        if (!file) throw SnapshotError(SnapshotError::Kind::io, "cannot open " + csv_out);
        write_csv(file, s, csv_field);
      }
      return kOk;
    }

    if (*diag_cmd) {
      const auto files = list_snapshots(diag_in);
      if (files.empty()) throw SnapshotError(SnapshotError::Kind::io, "no snapshots in " + diag_in);
      DiagnosticsTracker tracker;
      for (const auto& f : files) tracker.observe(read_snapshot_file(f));
      write_summary(out, tracker.finish());
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace polariton::cli
