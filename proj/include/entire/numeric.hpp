#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "entire/laurent.hpp"

namespace entire::numeric {

using Complex = std::complex<double>;

/// |z_i| above this ends a ray with a blowup event.
inline constexpr double kBlowupModulus = 1e8;
/// |z_i| below this ends a ray with a near-zero event.
inline constexpr double kNearZeroModulus = 1e-8;

struct RaySpec {
  std::vector<Complex> initial;
  double angle = 0.0;
  double radius = 1.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t samples = 64;
  double max_step = 0.0;  // 0: no cap
};

enum class EventKind { kBlowup, kNearZero };

struct RayEvent {
  EventKind kind = EventKind::kBlowup;
  double t = 0.0;             // arc length along the ray, in [0, R]
  std::size_t component = 0;  // 0-based
  bool step_underflow = false;
};

struct RaySample {
  double t = 0.0;
  std::vector<Complex> z;
};

/// Samples on the uniform grid t_j = j·R/(samples-1), up to the event if one
/// fired. `event` empty means the ray completed.
struct RayOutcome {
  std::vector<RaySample> samples;
  std::optional<RayEvent> event;
  std::size_t accepted_steps = 0;

  bool completed() const { return !event.has_value(); }
  const std::vector<Complex>& final_state() const { return samples.back().z; }
};

/// z ↦ (z_i·p_i(z))_i compiled for floating point.
class VectorField {
 public:
  explicit VectorField(const OdeSystem& sys) {
    for (const auto& p : sys.rhs()) p_.emplace_back(p);
  }

  std::size_t dimension() const { return p_.size(); }
  bool component_is_zero(std::size_t i) const { return p_[i].is_zero(); }

  void operator()(std::span<const Complex> z, Complex direction, std::span<Complex> out) const {
    for (std::size_t i = 0; i < p_.size(); ++i) out[i] = direction * z[i] * p_[i].evaluate_unchecked(z);
  }

 private:
  std::vector<CompiledPoly> p_;
};

namespace detail {

inline bool finite(std::span<const Complex> z) {
  return std::all_of(z.begin(), z.end(), [](Complex x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

/// First component outside (kNearZeroModulus, kBlowupModulus), if any.
inline std::optional<RayEvent> threshold_event(std::span<const Complex> z, double t) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    double m = std::abs(z[i]);
    if (!(m <= kBlowupModulus)) return RayEvent{EventKind::kBlowup, t, i, false};
    if (m < kNearZeroModulus) return RayEvent{EventKind::kNearZero, t, i, false};
  }
  return std::nullopt;
}

inline bool inside_thresholds(std::span<const Complex> z) {
  return finite(z) && !threshold_event(z, 0.0);
}

/// Cubic Hermite interpolant on one step, θ ∈ [0,1].
inline Complex hermite(Complex y0, Complex f0, Complex y1, Complex f1, double h, double th) {
  double t2 = th * th, t3 = t2 * th;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + th) * h * f0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * f1;
}

// Dormand–Prince 5(4) tableau.
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr std::array<double, 7> kB5{35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
inline constexpr std::array<double, 7> kB4{5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace detail

/// Integrates ż = z·p(z) along t = s·e^{iφ}, s ∈ [0, R], with an adaptive
/// Dormand–Prince pair. Stops at the first threshold event; a zero crossing
/// inside a step is located on the step's Hermite interpolant.
inline RayOutcome integrate_ray(const OdeSystem& sys, const RaySpec& ray) {
  const std::size_t n = sys.dimension();
  if (ray.initial.size() != n) throw DimensionMismatch("initial condition has wrong length");
  if (!(ray.radius > 0)) throw std::invalid_argument("ray radius must be positive");
  if (!(ray.rel_tol > 0 && ray.rel_tol < 1 && ray.abs_tol > 0 && ray.abs_tol < 1))
    throw std::invalid_argument("tolerances must lie in (0, 1)");
  if (ray.samples < 2) throw std::invalid_argument("need at least two samples");
  for (const auto& c : ray.initial)
    if (c == 0.0) throw std::invalid_argument("initial components must be nonzero");

  VectorField field(sys);
  const Complex dir = std::polar(1.0, ray.angle);
  const double R = ray.radius;
  const double h_min = 1e-14 * R;

  RayOutcome out;
  auto grid = [&](std::size_t j) { return R * static_cast<double>(j) / static_cast<double>(ray.samples - 1); };
  std::size_t next_sample = 1;

  std::vector<Complex> z = ray.initial;
  out.samples.push_back({0.0, z});
  if (auto ev = detail::threshold_event(z, 0.0)) {
    out.event = ev;
    return out;
  }

  std::array<std::vector<Complex>, 7> k;
  for (auto& ki : k) ki.assign(n, 0.0);
  std::vector<Complex> stage(n), z5(n);
  field(z, dir, k[0]);

  double s = 0.0;
  double h = std::min(R / 64.0, 1e-2);
  if (ray.max_step > 0) h = std::min(h, ray.max_step);
  while (s < R) {
    h = std::min(h, R - s);
    if (ray.max_step > 0) h = std::min(h, ray.max_step);
    if (h < h_min) {
      std::size_t worst = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::abs(z[i]) > std::abs(z[worst])) worst = i;
      out.event = RayEvent{EventKind::kBlowup, s, worst, true};
      return out;
    }

    bool stage_ok = true;
    for (std::size_t st = 1; st < 7 && stage_ok; ++st) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex acc = z[i];
        for (std::size_t j = 0; j < st; ++j) acc += h * detail::kA[st][j] * k[j][i];
        stage[i] = acc;
      }
      // Never evaluate p at an intermediate stage outside the event band:
      // negative exponents would divide by (near) zero. The last stage is the
      // candidate endpoint, which may legitimately cross a threshold.
      if (st < 6 ? !detail::inside_thresholds(stage) : !detail::finite(stage)) {
        stage_ok = false;
        break;
      }
      field(stage, dir, k[st]);
      if (!detail::finite(k[st])) stage_ok = false;
    }
    if (!stage_ok) {
      h *= 0.25;
      continue;
    }
    z5 = stage;  // stage 7 is evaluated at the 5th-order solution (FSAL)
    double err_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex e = 0.0;
      for (std::size_t j = 0; j < 7; ++j) e += h * (detail::kB5[j] - detail::kB4[j]) * k[j][i];
      double scale = ray.abs_tol + ray.rel_tol * std::max(std::abs(z[i]), std::abs(z5[i]));
      err_norm = std::max(err_norm, std::abs(e) / scale);
    }
    if (!std::isfinite(err_norm)) {
      h *= 0.25;
      continue;
    }

    if (err_norm <= 1.0) {
      const double s_new = (R - s - h <= 1e-12 * R) ? R : s + h;
      // Zero crossings between the step endpoints.
      std::optional<RayEvent> interior;
      for (std::size_t i = 0; i < n && !interior; ++i) {
        auto at = [&](double th) { return std::abs(detail::hermite(z[i], k[0][i], z5[i], k[6][i], h, th)); };
        double ends = std::min(std::abs(z[i]), std::abs(z5[i]));
        constexpr int kProbe = 8;
        int best = 0;
        double best_val = ends;
        for (int q = 1; q < kProbe; ++q) {
          double v = at(static_cast<double>(q) / kProbe);
          if (v < best_val) {
            best_val = v;
            best = q;
          }
        }
        if (best == 0 || best_val > 0.5 * ends) continue;
        double lo = static_cast<double>(best - 1) / kProbe, hi = static_cast<double>(best + 1) / kProbe;
        const double g = (std::sqrt(5.0) - 1) / 2;
        for (int it = 0; it < 60; ++it) {
          double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
          if (at(m1) < at(m2))
            hi = m2;
          else
            lo = m1;
        }
        double th = 0.5 * (lo + hi);
        if (at(th) < kNearZeroModulus) interior = RayEvent{EventKind::kNearZero, s + th * h, i, false};
      }

      while (next_sample < ray.samples && grid(next_sample) <= s_new + 1e-12 * R) {
        double tj = grid(next_sample);
        if (interior && tj > interior->t) break;
        double th = std::clamp((tj - s) / h, 0.0, 1.0);
        RaySample smp{tj, std::vector<Complex>(n)};
        for (std::size_t i = 0; i < n; ++i) smp.z[i] = detail::hermite(z[i], k[0][i], z5[i], k[6][i], h, th);
        out.samples.push_back(std::move(smp));
        ++next_sample;
      }
      ++out.accepted_steps;
      if (interior) {
        out.event = interior;
        return out;
      }
      s = s_new;
      z = z5;
      std::swap(k[0], k[6]);
      if (auto ev = detail::threshold_event(z, s)) {
        out.event = ev;
        return out;
      }
    }
    double factor = err_norm == 0.0 ? 5.0 : 0.9 * std::pow(err_norm, -0.2);
    h *= std::clamp(factor, 0.2, 5.0);
  }
  if (out.samples.back().t < R) out.samples.push_back({R, z});
  return out;
}

struct ScanOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t samples = 64;
};

/// Per-component modulus extremes over every sample of every ray, plus the
/// individual ray outcomes in angle order.
struct ScanResult {
  std::vector<double> min_modulus;
  std::vector<double> max_modulus;
  std::vector<double> angles;
  std::vector<RayOutcome> rays;

  bool any_event() const {
    return std::any_of(rays.begin(), rays.end(), [](const RayOutcome& r) { return !r.completed(); });
  }
  std::optional<RayEvent> first_event() const {
    for (const auto& r : rays)
      if (r.event) return r.event;
    return std::nullopt;
  }
};

/// Integrates along φ_j = 2πj/nrays, j = 0..nrays-1.
inline ScanResult disc_scan(const OdeSystem& sys, std::span<const Complex> initial, double radius, std::size_t nrays,
                            const ScanOptions& opt = {}) {
  if (nrays == 0) throw std::invalid_argument("need at least one ray");
  const std::size_t n = sys.dimension();
  ScanResult result;
  result.min_modulus.assign(n, std::numeric_limits<double>::infinity());
  result.max_modulus.assign(n, 0.0);
  for (std::size_t j = 0; j < nrays; ++j) {
    RaySpec ray{std::vector<Complex>(initial.begin(), initial.end()),
                2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nrays),
                radius,
                opt.rel_tol,
                opt.abs_tol,
                opt.samples};
    result.angles.push_back(ray.angle);
    RayOutcome outcome = integrate_ray(sys, ray);
    for (const auto& smp : outcome.samples)
      for (std::size_t i = 0; i < n; ++i) {
        double m = std::abs(smp.z[i]);
        result.min_modulus[i] = std::min(result.min_modulus[i], m);
        result.max_modulus[i] = std::max(result.max_modulus[i], m);
      }
    result.rays.push_back(std::move(outcome));
  }
  return result;
}

/// Mean of log⁺|f| over equally spaced points of the circle |z| = r, i.e.
/// the rectangle rule for the proximity function m(r, f). For entire f this
/// is also the characteristic T(r, f).
inline double estimate_m(std::span<const Complex> samples, double r) {
  if (samples.size() < 8) throw std::invalid_argument("estimate_m needs at least 8 samples");
  if (!(r > 0)) throw std::invalid_argument("radius must be positive");
  double sum = 0.0;
  for (Complex f : samples) {
    double m = std::abs(f);
    if (m > 1.0) sum += std::log(m);
  }
  return sum / static_cast<double>(samples.size());
}

struct UnitCheck {
  std::vector<bool> zero_free;  // per component
  bool conclusive = true;       // false when some ray blew up
  std::vector<RayEvent> events;
};

/// A component counts as zero-free when no ray reports it near zero. Blowups
/// make the check inconclusive; the events are returned either way.
inline UnitCheck unit_check(const OdeSystem& sys, std::span<const Complex> initial, double radius, std::size_t nrays,
                            const ScanOptions& opt = {}) {
  ScanResult scan = disc_scan(sys, initial, radius, nrays, opt);
  UnitCheck out;
  out.zero_free.assign(sys.dimension(), true);
  for (const auto& r : scan.rays) {
    if (!r.event) continue;
    out.events.push_back(*r.event);
    if (r.event->kind == EventKind::kNearZero)
      out.zero_free[r.event->component] = false;
    else
      out.conclusive = false;
  }
  return out;
}

}  // namespace entire::numeric
