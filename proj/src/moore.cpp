// SPDX-License-Identifier: Apache-2.0
#include "dcesta/moore.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "dcesta/errors.hpp"
#include "numerics.hpp"

namespace dcesta {

namespace {

// Solves t + sign * L(t) = z for t. t -> t +- L(t) is strictly increasing
// for a subluminal wall, so [z -+ L_max, z -+ L_min] always brackets.
double wall_hit(const Trajectory& traj, double z, int sign, const MooreOptions& opt) {
  const double lmin = traj.min_length();
  const double lmax = traj.max_length();
  const double pad = 1e-9 * lmax + 1e-12 * std::abs(z);
  double lo = sign > 0 ? z - lmax - pad : z + lmin - pad;
  double hi = sign > 0 ? z - lmin + pad : z + lmax + pad;
  auto fdf = [&](double t) {
    const auto d = traj.shape().derivs(t, Side::right);
    return std::pair{t + sign * d.L - z, 1.0 + sign * d.dL};
  };
  return detail::solve_increasing(fdf, lo, hi, {opt.root_tol, 200}, "wall bounce");
}

// Propagates (R, R', R'', R''') across one reflection, from z_minus = t - L
// to z_plus = t + L, by differentiating R(t + L) = 2 + R(t - L).
MooreDerivs reflect(const MooreDerivs& in, const LengthDerivs& w) {
  const double a = 1.0 - w.dL;
  const double b = 1.0 + w.dL;
  MooreDerivs out;
  out.R = in.R + 2.0;
  out.d1 = in.d1 * a / b;
  out.d2 = (in.d2 * a * a - in.d1 * w.d2L - out.d1 * w.d2L) / (b * b);
  out.d3 = (in.d3 * a * a * a - 3.0 * in.d2 * a * w.d2L - in.d1 * w.d3L - 3.0 * out.d2 * b * w.d2L -
            out.d1 * w.d3L) /
           (b * b * b);
  return out;
}

}  // namespace

RayBounce ray_advance(const Trajectory& traj, double z_minus, const MooreOptions& opt) {
  const double t = wall_hit(traj, z_minus, -1, opt);
  return {t, t + traj.eval(t)};
}

RayOrigin ray_retreat(const Trajectory& traj, double z_plus, const MooreOptions& opt) {
  const double t = wall_hit(traj, z_plus, +1, opt);
  return {t, t - traj.eval(t)};
}

class MooreFunction::Impl {
 public:
  explicit Impl(MooreOptions opt) : opt_(opt) {}
  virtual ~Impl() = default;
  virtual Source source() const = 0;
  virtual MooreDerivs derivs(double z, int order) const = 0;
  virtual const Trajectory& boundary() const = 0;
  virtual std::vector<double> kinks(double a, double b) const = 0;
  const MooreOptions& options() const { return opt_; }

 protected:
  MooreOptions opt_;
};

namespace {

class RecursionImpl final : public MooreFunction::Impl {
 public:
  RecursionImpl(Trajectory traj, MooreOptions opt)
      : Impl(opt), traj_(std::move(traj)), L0_(traj_.initial_length()) {
    z_in_ = traj_.t_start() + L0_;
  }

  MooreFunction::Source source() const override { return MooreFunction::Source::recursion; }
  const Trajectory& boundary() const override { return traj_; }

  MooreDerivs derivs(double z, int order) const override {
    struct Hop {
      double z_plus;
      LengthDerivs wall;
    };
    std::vector<Hop> hops;
    MooreDerivs rec;
    double cur = z;
    for (;;) {
      if (cur <= z_in_) {
        rec = {cur / L0_, 1.0 / L0_, 0.0, 0.0};
        break;
      }
      if (auto hit = lookup(cur)) {
        rec = *hit;
        break;
      }
      if (static_cast<int>(hops.size()) >= opt_.max_bounces)
        throw ConvergenceError("Moore recursion exceeded the bounce budget");
      const auto origin = ray_retreat(traj_, cur, opt_);
      if (traj_.continuity_at(origin.t_bounce) < order - 1) {
        throw DiscontinuityError("bounce at t = " + std::to_string(origin.t_bounce) +
                                 " hits a wall junction that is not smooth enough");
      }
      hops.push_back({cur, traj_.shape().derivs(origin.t_bounce, Side::right)});
      cur = origin.z_minus;
    }
    for (auto it = hops.rbegin(); it != hops.rend(); ++it) {
      rec = reflect(rec, it->wall);
      store(it->z_plus, rec);
    }
    return rec;
  }

  std::vector<double> kinks(double a, double b) const override {
    std::vector<double> out;
    const double step = 2.0 * traj_.min_length();
    for (double bp : traj_.breakpoints()) {
      if (traj_.continuity_at(bp) >= kSmooth) continue;
      double z = bp + traj_.shape().derivs(bp, Side::right).L;
      while (z < b) {
        if (z > a) out.push_back(z);
        const double next = ray_advance(traj_, z, opt_).z_plus;
        if (!(next > z)) break;
        z = std::max(next, z + 0.5 * step);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::optional<MooreDerivs> lookup(double z) const {
    std::shared_lock lock(mu_);
    auto it = cache_.find(z);
    if (it == cache_.end()) return std::nullopt;
    return it->second;
  }

  void store(double z, const MooreDerivs& rec) const {
    std::unique_lock lock(mu_);
    if (cache_.size() >= opt_.cache_limit) cache_.clear();
    cache_.emplace(z, rec);
  }

  Trajectory traj_;
  double L0_;
  double z_in_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<double, MooreDerivs> cache_;
};

class WkbImpl final : public MooreFunction::Impl {
 public:
  WkbImpl(const Trajectory& reference, MooreOptions opt)
      : Impl(opt),
        phase_(std::make_shared<const WkbPhase>(reference)),
        wall_(effective_trajectory(phase_)) {}

  MooreFunction::Source source() const override { return MooreFunction::Source::analytic_wkb; }
  const Trajectory& boundary() const override { return wall_; }

  MooreDerivs derivs(double z, int order) const override {
    if (phase_->reference().continuity_at(z) < order - 2)
      throw DiscontinuityError("adiabatic phase derivative undefined at z = " + std::to_string(z));
    const auto p = phase_->derivs(z);
    return {p.value, p.d1, p.d2, p.d3};
  }

  std::vector<double> kinks(double a, double b) const override {
    std::vector<double> out;
    for (double bp : phase_->reference().breakpoints())
      if (bp > a && bp < b) out.push_back(bp);
    return out;
  }

 private:
  std::shared_ptr<const WkbPhase> phase_;
  Trajectory wall_;
};

}  // namespace

MooreFunction::MooreFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

MooreFunction MooreFunction::recursion(Trajectory traj, MooreOptions opt) {
  if (traj.kind() == TrajectoryKind::step)
    throw DomainError("the idealized step cannot drive the Moore recursion; use its effective trajectory");
  // Effective trajectories are subluminal by construction; anything else is
  // scanned.
  if (traj.kind() != TrajectoryKind::effective) {
    const auto rep = validate(traj);
    if (!rep.physical) {
      throw DomainError("Moore recursion needs a physical wall (max speed " + std::to_string(rep.max_speed) +
                        ", min length " + std::to_string(rep.min_length) + ")");
    }
  }
  return MooreFunction(std::make_shared<RecursionImpl>(std::move(traj), opt));
}

MooreFunction MooreFunction::analytic_wkb(const Trajectory& reference, MooreOptions opt) {
  return MooreFunction(std::make_shared<WkbImpl>(reference, opt));
}

MooreFunction::Source MooreFunction::source() const { return impl_->source(); }
double MooreFunction::value(double z) const { return impl_->derivs(z, 0).R; }

MooreDerivs MooreFunction::derivatives(double z, int order) const {
  if (order < 1 || order > 3) throw DomainError("derivative order must be 1, 2 or 3");
  return impl_->derivs(z, order);
}

const Trajectory& MooreFunction::boundary() const { return impl_->boundary(); }
double MooreFunction::in_length() const { return boundary().initial_length(); }
double MooreFunction::out_length() const { return boundary().final_length(); }
const MooreOptions& MooreFunction::options() const { return impl_->options(); }

double MooreFunction::moore_residual(double t) const {
  const double L = boundary().eval(t);
  return value(t + L) - value(t - L) - 2.0;
}

std::vector<double> MooreFunction::kinks(double a, double b) const { return impl_->kinks(a, b); }

double solve_in(const Trajectory& traj, double z, const MooreOptions& opt) {
  return MooreFunction::recursion(traj, opt).value(z);
}

Residual extract_residual(const Trajectory& traj, const MooreOptions& opt, int samples) {
  if (samples < 2) throw DomainError("residual grid needs at least two samples");
  const auto R = MooreFunction::recursion(traj, opt);
  const double L1 = traj.final_length();
  const double start = traj.t_end() + L1;

  Residual res;
  res.period = 2.0 * L1;
  const auto n = static_cast<std::size_t>(samples);
  res.t.resize(n);
  res.r.resize(n);
  std::vector<double> shifted(n);
  for (std::size_t i = 0; i < n; ++i) res.t[i] = start + res.period * static_cast<double>(i) / samples;
  detail::parallel_for(n, [&](std::size_t i) {
    res.r[i] = R.value(res.t[i]) - res.t[i] / L1;
    const double u = res.t[i] + res.period;
    shifted[i] = R.value(u) - u / L1;
  });

  double sum = 0.0;
  for (double v : res.r) sum += v;
  res.mean = sum / samples;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res.periodicity_error = std::max(res.periodicity_error, std::abs(shifted[i] - res.r[i]));
    res.r[i] -= res.mean;
    res.sup_deviation = std::max(res.sup_deviation, std::abs(res.r[i]));
    sq += res.r[i] * res.r[i];
  }
  res.l2_deviation = std::sqrt(sq / samples);
  return res;
}

std::complex<double> mode_function(const MooreFunction& R, int n, double x, double t) {
  if (n < 1) throw DomainError("mode index must be positive");
  const double L = R.boundary().eval(t);
  if (x < 0.0 || x > L * (1.0 + 1e-12)) throw DomainError("mode evaluated outside the cavity");
  const double k = n * std::numbers::pi;
  const auto plus = std::polar(1.0, -k * R.value(t + x));
  const auto minus = std::polar(1.0, -k * R.value(t - x));
  return (plus - minus) / std::sqrt(4.0 * std::numbers::pi * n);
}

}  // namespace dcesta
