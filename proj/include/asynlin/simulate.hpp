// Direct sample-and-hold recursion over the union grid. Deliberately never
// touches the 4-D matrix representation so it can serve as an independent
// cross-check of the operator path.
#pragma once

#include <asynlin/stepmat.hpp>

#include <optional>
#include <vector>

namespace asynlin {

// One union-grid instant; x is present iff t lies on T_mu, y iff on T_nu.
struct TrajectorySample {
  Rat t;
  std::optional<Rat> x, y;
};

struct Trajectory {
  SystemSpec spec;
  Rat horizon;  // last grid point covered
  std::vector<TrajectorySample> samples;
};

// Whether the x- or y-recursion is committed first at shared instants. The
// coupled reads go through values held since the respective last sampling
// instant, so the order cannot matter; exposing it lets tests prove that.
enum class UpdateOrder { kXFirst, kYFirst };

inline Trajectory simulate(const SystemSpec& spec, const Rat& x0,
                           const Rat& y0, const Rat& horizon,
                           bool audit = false,
                           UpdateOrder order = UpdateOrder::kXFirst) {
  const UnionGrid grid = build_union_grid(spec.mu, spec.nu, horizon);
  const Rat alpha = spec.P(0, 0), beta = spec.P(0, 1);
  const Rat gamma = spec.P(1, 0), delta = spec.P(1, 1);

  Rat x = x0, y = y0;
  Rat held_x = x0, held_y = y0;
  Rat held_x_time = 0, held_y_time = 0;

  Trajectory traj{spec, grid.horizon, {}};
  traj.samples.reserve(grid.points.size());

  for (std::size_t idx = 0; idx < grid.points.size(); ++idx) {
    const Rat& t = grid.points[idx];
    const bool on_mu = on_scale(t, spec.mu);
    const bool on_nu = on_scale(t, spec.nu);

    TrajectorySample sample{t, std::nullopt, std::nullopt};
    if (on_mu) sample.x = x;
    if (on_nu) sample.y = y;
    traj.samples.push_back(std::move(sample));
    if (idx + 1 == grid.points.size()) break;  // updates at the horizon land beyond it

    if (on_mu) {
      held_x = x;
      held_x_time = t;
    }
    if (on_nu) {
      held_y = y;
      held_y_time = t;
    }

    const auto step_x = [&] {
      if (!on_mu) return;
      if (audit && !(held_y_time == lag(t, spec.nu)))
        throw std::logic_error("simulate: held y sample is stale");
      x = (Rat(1) + spec.mu * alpha) * x + spec.mu * beta * held_y;
    };
    const auto step_y = [&] {
      if (!on_nu) return;
      if (audit && !(held_x_time == lag(t, spec.mu)))
        throw std::logic_error("simulate: held x sample is stale");
      y = spec.nu * gamma * held_x + (Rat(1) + spec.nu * delta) * y;
    };
    if (order == UpdateOrder::kXFirst) {
      step_x();
      step_y();
    } else {
      step_y();
      step_x();
    }
  }
  return traj;
}

// The update instants in (0, horizon], tagged by the equation(s) firing there;
// x is listed before y when both fire at the same instant.
struct UpdateEvent {
  Rat t;
  char which;  // 'x' or 'y'
  friend bool operator==(const UpdateEvent& a, const UpdateEvent& b) {
    return a.t == b.t && a.which == b.which;
  }
};

inline std::vector<UpdateEvent> interleave_schedule(const SystemSpec& spec,
                                                    const Rat& horizon) {
  const UnionGrid grid = build_union_grid(spec.mu, spec.nu, horizon);
  std::vector<UpdateEvent> events;
  for (const Rat& t : grid.points) {
    if (t == 0) continue;
    if (on_scale(t, spec.mu)) events.push_back({t, 'x'});
    if (on_scale(t, spec.nu)) events.push_back({t, 'y'});
  }
  return events;
}

}  // namespace asynlin
