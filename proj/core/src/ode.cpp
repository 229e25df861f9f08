#include <brp/ode.hpp>

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace brp::ode {

namespace {

namespace odeint = boost::numeric::odeint;
using vec = std::vector<double>;

struct NonFinite {};

State to_state(const vec& v) { return Eigen::Map<const State>(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

State rk4_step(const VectorField& f, const State& y, double h) {
  const State k1 = f(y);
  const State k2 = f(y + 0.5 * h * k1);
  const State k3 = f(y + 0.5 * h * k2);
  const State k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
}

Result integrate(const VectorField& f, const State& y0, double t_end, const Options& opt, const Hooks& hooks) {
  Result res;
  res.y = y0;
  if (!(t_end > 0)) return res;
  auto rhs = [&f](const vec& x, vec& dx, double) {
    const State d = f(to_state(x));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (!std::isfinite(d[i])) throw NonFinite{};
      dx[static_cast<std::size_t>(i)] = d[i];
    }
  };
  const double max_dt = opt.max_dt > 0 ? opt.max_dt : std::numeric_limits<double>::max();
  auto stepper = odeint::make_dense_output(opt.abs_tol, opt.rel_tol, max_dt, odeint::runge_kutta_dopri5<vec>());
  vec x(y0.data(), y0.data() + y0.size());
  vec tmp(x.size());
  stepper.initialize(x, 0.0, std::min(opt.dt0, t_end));
  std::size_t next_sample = 0;
  const auto* times = hooks.sample_times;
  auto emit_samples = [&](double upto) {
    if (!times || !hooks.samples) return;
    while (next_sample < times->size() && (*times)[next_sample] <= upto) {
      stepper.calc_state((*times)[next_sample], tmp);
      hooks.samples->push_back(to_state(tmp));
      ++next_sample;
    }
  };
  if (times && hooks.samples) {
    while (next_sample < times->size() && (*times)[next_sample] <= 0.0) {
      hooks.samples->push_back(y0);
      ++next_sample;
    }
  }
  double g_prev = hooks.event ? hooks.event(y0) : 0.0;
  try {
    while (true) {
      const auto [t0, t1] = stepper.do_step(rhs);
      ++res.steps;
      const double upto = std::min(t1, t_end);
      emit_samples(upto);
      stepper.calc_state(upto, tmp);
      State y = to_state(tmp);
      if (hooks.event) {
        const double g = hooks.event(y);
        if ((g_prev < 0 && g >= 0) || (g_prev > 0 && g <= 0)) {
          double a = t0, b = upto, ga = g_prev;
          for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
            const double m = 0.5 * (a + b);
            stepper.calc_state(m, tmp);
            const double gm = hooks.event(to_state(tmp));
            if ((ga < 0 && gm >= 0) || (ga > 0 && gm <= 0)) {
              b = m;
            } else {
              a = m;
              ga = gm;
            }
          }
          stepper.calc_state(b, tmp);
          res.stop = Stop::Event;
          res.t = b;
          res.y = to_state(tmp);
          return res;
        }
        g_prev = g;
      }
      if (hooks.guard && !hooks.guard(y)) {
        res.stop = Stop::Guard;
        res.t = upto;
        res.y = y;
        return res;
      }
      res.t = upto;
      res.y = y;
      if (t1 >= t_end) {
        res.stop = Stop::End;
        return res;
      }
      if (hooks.done && hooks.done(upto, y)) {
        res.stop = Stop::Done;
        return res;
      }
      if (res.steps >= opt.max_steps) {
        res.stop = Stop::MaxSteps;
        return res;
      }
    }
  } catch (const NonFinite&) {
    res.stop = Stop::Guard;
  } catch (const std::overflow_error&) {
    res.stop = Stop::Guard;
  }
  return res;
}

}  // namespace brp::ode
