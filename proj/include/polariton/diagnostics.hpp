#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "polariton/error.hpp"
#include "polariton/grid.hpp"
#include "polariton/state.hpp"

namespace polariton {

/// Pointwise |f|^2.
inline RealField density(const ComplexField& f) {
  RealField out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::norm(f[k]);
  return out;
}

/// Riemann sum of |f|^2 with every node (edges included) at full weight.
inline double total_number(const ComplexField& f) {
  double sum = 0.0;
  for (const complex& v : f.values()) sum += std::norm(v);
  return sum * f.grid().cell_measure();
}

/// Number in the primary condensate field (the first member: psi, psi_c or
/// psi_c_plus).
inline double total_number(const SimState& s) {
  return std::visit(
      [](const auto& fields) {
        return total_number(std::get<0>(fields.members()));
      },
      s.fields);
}

struct NumberSample {
  double t = 0.0;
  double N = 0.0;

  friend bool operator==(const NumberSample&, const NumberSample&) = default;
};

inline constexpr double kOnsetFraction = 0.05;
inline constexpr std::size_t kOnsetPersistence = 10;

/// First time at which N reaches 5% of its maximum and then stays at or
/// above that level for 10 consecutive samples. A run of samples reaching the
/// end of the series counts as persistent even when shorter than 10.
/// Returns nothing when N is identically zero.
inline std::optional<double> condensation_onset(std::span<const NumberSample> series) {
  if (series.empty()) return std::nullopt;
  double peak = 0.0;
  for (const auto& s : series) peak = std::max(peak, s.N);
  if (!(peak > 0.0)) return std::nullopt;
  const double threshold = kOnsetFraction * peak;

  std::size_t run_start = 0;
  std::size_t run_length = 0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (series[k].N >= threshold) {
      if (run_length == 0) run_start = k;
      ++run_length;
      if (run_length >= kOnsetPersistence) return series[run_start].t;
    } else {
      run_length = 0;
    }
  }
  if (run_length > 0) return series[run_start].t;
  return std::nullopt;
}

/// Per-field observables accumulated over a run.
struct FieldTrace {
  std::string name;
  bool is_complex = true;
  std::vector<NumberSample> series;  // (t, integral of |f|^2) or (t, integral of f)
  double peak_density = 0.0;         // max over space-time of |f|^2 (or of f)
  double peak_number = 0.0;
  std::optional<double> onset_time;
};

struct RunDiagnostics {
  ModelTag model = ModelTag::cnrp1;
  std::size_t snapshots = 0;
  double t_last = 0.0;
  // Observables of the primary condensate field (psi, psi_c or psi_c_plus).
  std::string primary_field;
  double peak_density = 0.0;
  double peak_number = 0.0;
  std::optional<double> onset_time;
  // Reservoir model only: snapshots in which some node has n_R < 0.
  std::size_t negativity_events = 0;
  std::vector<FieldTrace> fields;

  [[nodiscard]] const FieldTrace& field(std::string_view name) const {
    for (const auto& f : fields) {
      if (f.name == name) return f;
    }
    throw Error("diagnostics: no field named '" + std::string(name) + "'");
  }
};

/// Folds snapshots one at a time, in time order.
class DiagnosticsTracker {
 public:
  void observe(const SimState& s) {
    std::visit([&](const auto& fields) { observe_fields(fields, s.t); }, s.fields);
  }

  [[nodiscard]] RunDiagnostics finish() const {
    RunDiagnostics out = diag_;
    for (auto& f : out.fields) f.onset_time = condensation_onset(f.series);
    if (!out.fields.empty()) {
      const FieldTrace& primary = out.fields.front();
      out.primary_field = primary.name;
      out.peak_density = primary.peak_density;
      out.peak_number = primary.peak_number;
      out.onset_time = primary.onset_time;
    }
    return out;
  }

 private:
  template <FieldCollection Fields>
  void observe_fields(const Fields& fields, double t) {
    if (diag_.snapshots == 0) {
      diag_.model = Fields::tag;
      for (std::string_view name : Fields::names) {
        FieldTrace trace;
        trace.name = std::string(name);
        diag_.fields.push_back(std::move(trace));
      }
    } else if (diag_.model != Fields::tag) {
      throw Error("diagnostics: snapshot model changed mid-series");
    }
    std::size_t slot = 0;
    for_each_member(
        [&](const auto& f) {
          FieldTrace& trace = diag_.fields[slot++];
          using T = typename std::decay_t<decltype(f)>::value_type;
          double peak = 0.0;
          double number = 0.0;
          bool negative = false;
          if constexpr (std::is_same_v<T, complex>) {
            for (const complex& v : f.values()) peak = std::max(peak, std::norm(v));
            number = total_number(f);
          } else {
            trace.is_complex = false;
            double sum = 0.0;
            for (double v : f.values()) {
              peak = std::max(peak, v);
              sum += v;
              negative = negative || v < 0.0;
            }
            number = sum * f.grid().cell_measure();
          }
          trace.series.push_back({t, number});
          trace.peak_density = std::max(trace.peak_density, peak);
          trace.peak_number = std::max(trace.peak_number, number);
          if (negative) ++diag_.negativity_events;
        },
        fields);
    ++diag_.snapshots;
    diag_.t_last = t;
  }

  RunDiagnostics diag_;
};

/// Diagnostics of a complete snapshot series.
inline RunDiagnostics peak_report(std::span<const SimState> series) {
  if (series.empty()) throw Error("peak_report: empty snapshot series");
  DiagnosticsTracker tracker;
  for (const SimState& s : series) tracker.observe(s);
  return tracker.finish();
}

namespace detail {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string format_time(const std::optional<double>& t) {
  return t ? format_number(*t) : std::string("none");
}

}  // namespace detail

/// Plain-text `key: value` summary.
inline void write_summary(std::ostream& os, const RunDiagnostics& d) {
  using detail::format_number;
  os << "model: " << to_string(d.model) << '\n';
  os << "snapshots: " << d.snapshots << '\n';
  os << "t_last: " << format_number(d.t_last) << '\n';
  os << "primary_field: " << d.primary_field << '\n';
  os << "peak_density: " << format_number(d.peak_density) << '\n';
  os << "peak_number: " << format_number(d.peak_number) << '\n';
  os << "onset_time: " << detail::format_time(d.onset_time) << '\n';
  os << "negativity_events: " << d.negativity_events << '\n';
  for (const auto& f : d.fields) {
    os << "field." << f.name << ".peak_density: " << format_number(f.peak_density) << '\n';
    os << "field." << f.name << ".peak_number: " << format_number(f.peak_number) << '\n';
    os << "field." << f.name << ".onset_time: " << detail::format_time(f.onset_time) << '\n';
  }
}

/// Time series of the integrated fields, one row per snapshot.
inline void write_number_series(std::ostream& os, const RunDiagnostics& d) {
  os << 't';
  for (const auto& f : d.fields) os << ',' << f.name;
  os << '\n';
  for (std::size_t k = 0; k < d.snapshots; ++k) {
    os << detail::format_number(d.fields.front().series[k].t);
    for (const auto& f : d.fields) os << ',' << detail::format_number(f.series[k].N);
    os << '\n';
  }
}

}  // namespace polariton
