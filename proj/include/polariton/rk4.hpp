#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "polariton/diagnostics.hpp"
#include "polariton/error.hpp"
#include "polariton/grid.hpp"
#include "polariton/model.hpp"
#include "polariton/state.hpp"

namespace polariton {

enum class CflPolicy { reject, warn };

struct RunConfig {
  double h = 0.001;            // ps
  double t_end = 20.0;         // ps
  std::uint64_t snapshot_every = 100;
  CflPolicy cfl_policy = CflPolicy::reject;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline void validate(const RunConfig& cfg) {
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) throw Error("run: time step h must be > 0");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) throw Error("run: t_end must be > 0");
  if (cfg.snapshot_every < 1) throw Error("run: snapshot_every must be >= 1");
}

/// Number of whole steps covering t_end. A ratio t_end / h within 1e-9 of an
/// integer is taken as that integer.
inline std::uint64_t step_count(const RunConfig& cfg) {
  const double ratio = cfg.t_end / cfg.h;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(ratio));
}

/// Explicit-scheme stability number (hbar/m) h/dx^2, plus (hbar/m) h/dy^2 in
/// 2D. The scheme is considered stable when this is <= 1.
inline double cfl_ratio(const Grid& grid, double h, double m, double hbar = kHbar) {
  const double coeff = hbar / m;
  double ratio = coeff * h / (grid.dx * grid.dx);
  if (grid.ndim == 2) ratio += coeff * h / (grid.dy * grid.dy);
  return ratio;
}

// Linear combinations used by the stepper. Generic types use their own
// arithmetic; field collections are combined member-wise without temporaries.

template <class Y>
  requires requires(const Y& y, double a) { y + a * y; }
Y axpy(const Y& y, double a, const Y& k) {
  return y + a * k;
}

template <FieldCollection Fields>
Fields axpy(const Fields& y, double a, const Fields& k) {
  Fields out = y;
  for_each_member(
      [&](auto& o, const auto& kk) {
        auto dst = o.values();
        auto src = kk.values();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += a * src[i];
      },
      out, k);
  return out;
}

template <class Y>
  requires requires(const Y& y, double a) { y + a * y; }
Y rk4_combine(const Y& y, double h, const Y& f1, const Y& f2, const Y& f3, const Y& f4) {
  return y + (h / 6.0) * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
}

template <FieldCollection Fields>
Fields rk4_combine(const Fields& y, double h, const Fields& f1, const Fields& f2,
                   const Fields& f3, const Fields& f4) {
  Fields out = y;
  const double w = h / 6.0;
  for_each_member(
      [&](auto& o, const auto& a, const auto& b, const auto& c, const auto& d) {
        auto dst = o.values();
        auto s1 = a.values();
        auto s2 = b.values();
        auto s3 = c.values();
        auto s4 = d.values();
        for (std::size_t i = 0; i < dst.size(); ++i) {
          dst[i] += w * (s1[i] + 2.0 * s2[i] + 2.0 * s3[i] + s4[i]);
        }
      },
      out, f1, f2, f3, f4);
  return out;
}

namespace detail {

template <class Y>
void enforce_boundaries(Y&) {}

template <FieldCollection Fields>
void enforce_boundaries(Fields& y) {
  for_each_member(
      [](auto& f) {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, ComplexField>) {
          zero_dirichlet_edges(f);
        }
      },
      y);
}

template <class Y>
bool finite(const Y& y) {
  if constexpr (FieldCollection<Y>) {
    return all_finite(y);
  } else if constexpr (std::is_same_v<Y, complex>) {
    return std::isfinite(y.real()) && std::isfinite(y.imag());
  } else if constexpr (std::is_arithmetic_v<Y>) {
    return std::isfinite(y);
  } else {
    return true;
  }
}

template <class Y>
void check_stage(const Y& k, int stage, std::uint64_t step) {
  if (!finite(k)) {
    throw NonFiniteState(step, "rk4: non-finite derivative in stage " + std::to_string(stage) +
                                   " of step " + std::to_string(step));
  }
}

}  // namespace detail

/// One classical RK4 step of dy/dt = f(y, t):
///   k1 = f(y, t), k2 = f(y + h/2 k1, t + h/2), k3 = f(y + h/2 k2, t + h/2),
///   k4 = f(y + h k3, t + h), y' = y + h/6 (k1 + 2 k2 + 2 k3 + k4).
/// Complex condensate fields have their Dirichlet edges re-zeroed on every
/// stage input and on the result. `step` only labels errors.
template <class Y, class F>
Y rk4_step(const Y& y, double t, double h, F&& f, std::uint64_t step = 0) {
  const Y k1 = f(y, t);
  detail::check_stage(k1, 1, step);
  Y y2 = axpy(y, 0.5 * h, k1);
  detail::enforce_boundaries(y2);
  const Y k2 = f(y2, t + 0.5 * h);
  detail::check_stage(k2, 2, step);
  Y y3 = axpy(y, 0.5 * h, k2);
  detail::enforce_boundaries(y3);
  const Y k3 = f(y3, t + 0.5 * h);
  detail::check_stage(k3, 3, step);
  Y y4 = axpy(y, h, k3);
  detail::enforce_boundaries(y4);
  const Y k4 = f(y4, t + h);
  detail::check_stage(k4, 4, step);
  Y next = rk4_combine(y, h, k1, k2, k3, k4);
  detail::enforce_boundaries(next);
  if (!detail::finite(next)) {
    throw NonFiniteState(step, "rk4: non-finite state after step " + std::to_string(step));
  }
  return next;
}

/// Advance a SimState by one step with a prepared model. The returned time is
/// s.t + h; the run loop instead assigns n * h.
inline SimState rk4_step(const SimState& s, const Model& model, double h,
                         std::uint64_t step = 0) {
  if (!(h > 0.0)) throw Error("rk4_step: h must be > 0");
  return std::visit(
      [&](const auto& m) -> SimState {
        using M = std::decay_t<decltype(m)>;
        using Fields = typename M::fields_type;
        const Fields& y = s.as<Fields>();
        return SimState{rk4_step(y, s.t, h, m, step), s.t + h};
      },
      model);
}

inline SimState rk4_step(const SimState& s, const ModelParams& params, double h) {
  if (s.tag() != tag_of(params)) {
    throw ModelError("rk4_step: state is " + std::string(to_string(s.tag())) +
                     " but parameters are " + std::string(to_string(tag_of(params))));
  }
  return rk4_step(s, make_model(params, s.grid()), h);
}

using SnapshotSink = std::function<void(const SimState&)>;

struct RunResult {
  RunDiagnostics diagnostics;
  SimState final_state;
  std::uint64_t steps = 0;
  double cfl = 0.0;
  bool cfl_exceeded = false;  // only possible under CflPolicy::warn
};

/// Integrate from `init` to cfg.t_end. The initial state and every
/// snapshot_every-th state are passed to `sink` and folded into the
/// diagnostics. Time of step n is exactly n * h.
///
/// Throws CflViolation (reject policy) before stepping, and NonFiniteState
/// if a NaN/Inf appears; in that case the sink has already received every
/// snapshot up to the last finite one.
inline RunResult run_simulation(const SimState& init, const ModelParams& params,
                                const RunConfig& cfg, const SnapshotSink& sink = {}) {
  validate(cfg);
  validate(params);
  if (init.tag() != tag_of(params)) {
    throw ModelError("run: initial state is " + std::string(to_string(init.tag())) +
                     " but parameters are " + std::string(to_string(tag_of(params))));
  }

  RunResult result;
  result.cfl = cfl_ratio(init.grid(), cfg.h, kinetic_mass(params), hbar_of(params));
  if (result.cfl > 1.0) {
    if (cfg.cfl_policy == CflPolicy::reject) {
      throw CflViolation(result.cfl, "run: CFL ratio " + detail::format_number(result.cfl) +
                                         " > 1, refusing to start");
    }
    result.cfl_exceeded = true;
  }

  const Model model = make_model(params, init.grid());
  const std::uint64_t n_steps = step_count(cfg);
  DiagnosticsTracker tracker;

  SimState state = init;
  state.t = 0.0;
  auto emit = [&](const SimState& s) {
    tracker.observe(s);
    if (sink) sink(s);
  };
  emit(state);

  double last_snapshot_t = 0.0;
  for (std::uint64_t n = 1; n <= n_steps; ++n) {
    try {
      state = rk4_step(state, model, cfg.h, n);
    } catch (const NonFiniteState& e) {
      throw NonFiniteState(n, std::string(e.what()) + "; last good snapshot at t = " +
                                  detail::format_number(last_snapshot_t) + " ps");
    }
    state.t = static_cast<double>(n) * cfg.h;
    if (n % cfg.snapshot_every == 0) {
      emit(state);
      last_snapshot_t = state.t;
    }
  }

  result.steps = n_steps;
  result.diagnostics = tracker.finish();
  result.final_state = std::move(state);
  return result;
}

}  // namespace polariton
