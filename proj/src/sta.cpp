// SPDX-License-Identifier: Apache-2.0
#include "dcesta/sta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

#include "dcesta/errors.hpp"
#include "numerics.hpp"

namespace dcesta {

namespace {
constexpr int kPanelsPerMotion = 64;
}

WkbPhase::WkbPhase(Trajectory reference) : ref_(std::move(reference)) {
  t0_ = ref_.t_start();
  t1_ = ref_.t_end();

  std::vector<double> cuts{t0_, t1_};
  for (double b : ref_.breakpoints())
    if (b > t0_ && b < t1_) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double max_width = (t1_ - t0_) / kPanelsPerMotion;
  nodes_.push_back(t0_);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double w = cuts[i + 1] - cuts[i];
    const int n = std::max(1, static_cast<int>(std::ceil(w / max_width - 1e-9)));
    for (int k = 1; k < n; ++k) nodes_.push_back(cuts[i] + w * k / n);
    nodes_.push_back(cuts[i + 1]);
  }

  cumulative_.assign(nodes_.size(), 0.0);
  auto inv = [this](double t) { return 1.0 / ref_.eval(t); };
  const detail::QuadOptions panel_opt{1e-12 / static_cast<double>(nodes_.size()), 1e-15, 12, 0.0};
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double part = detail::integrate(inv, nodes_[i], nodes_[i + 1], {}, panel_opt).value;
    cumulative_[i + 1] = cumulative_[i] + part;
  }
  offset_ = primitive(0.0);
}

double WkbPhase::primitive(double z) const {
  if (z <= t0_) return (z - t0_) / ref_.initial_length();
  if (z >= t1_) return cumulative_.back() + (z - t1_) / ref_.final_length();
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), z);
  const std::size_t k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  if (z == nodes_[k]) return cumulative_[k];
  auto inv = [this](double t) { return 1.0 / ref_.eval(t); };
  return cumulative_[k] + boost::math::quadrature::gauss<double, 20>::integrate(inv, nodes_[k], z);
}

double WkbPhase::operator()(double z) const { return primitive(z) - offset_; }

PhaseDerivs WkbPhase::derivs(double z, Side side) const {
  const auto d = ref_.shape().derivs(z, side == Side::interior ? Side::right : side);
  const double L = d.L;
  return {(*this)(z), 1.0 / L, -d.dL / (L * L), (2.0 * d.dL * d.dL - L * d.d2L) / (L * L * L)};
}

WkbPhase wkb_phase(const Trajectory& reference) { return WkbPhase(reference); }

double effective_length(const WkbPhase& phase, double t) {
  const auto& ref = phase.reference();
  const double L0 = ref.initial_length();
  const double L1 = ref.final_length();
  if (t <= ref.t_start() - L0) return L0;
  if (t >= ref.t_end() + L1) return L1;

  auto fdf = [&](double l) {
    const auto pa = phase.derivs(t - l);
    const auto pb = phase.derivs(t + l);
    return std::pair{pb.value - pa.value - 2.0, pa.d1 + pb.d1};
  };
  double lo = ref.min_length() * (1.0 - 1e-6);
  double hi = ref.max_length() * (1.0 + 1e-6);
  for (int expand = 0; expand < 8; ++expand) {
    if (fdf(lo).first <= 0.0 && fdf(hi).first >= 0.0) break;
    lo *= 0.5;
    hi *= 2.0;
  }
  return detail::solve_increasing(fdf, lo, hi, {}, "effective trajectory");
}

double effective_length(const Trajectory& reference, double t) {
  return effective_length(WkbPhase(reference), t);
}

double effective_trajectory_step(double L0, double L1, double t) {
  if (!(L0 > 0.0) || !(L1 > 0.0)) throw DomainError("step lengths must be positive");
  if (t <= -L0) return L0;
  if (t >= L1) return L1;
  return (2.0 * L0 * L1 - t * (L0 - L1)) / (L0 + L1);
}

double effective_speed(const WkbPhase& phase, double t) {
  const double l = effective_length(phase, t);
  const auto& ref = phase.reference();
  const double La = ref.eval(t - l);
  const double Lb = ref.eval(t + l);
  return (Lb - La) / (La + Lb);
}

double effective_speed(const Trajectory& reference, double t) {
  return effective_speed(WkbPhase(reference), t);
}

namespace {

class EffectiveShape final : public TrajectoryShape {
 public:
  explicit EffectiveShape(std::shared_ptr<const WkbPhase> phase) : phase_(std::move(phase)) {
    const auto& ref = phase_->reference();
    L0_ = ref.initial_length();
    L1_ = ref.final_length();
    ts_ = ref.t_start() - L0_;
    te_ = ref.t_end() + L1_;
    if (L0_ == L1_ && ref.breakpoints().empty()) return;

    // Times at which t + L_eff or t - L_eff hits a reference breakpoint.
    auto add = [&](double t, double ref_t) {
      const int cls = std::min(kSmooth, ref.continuity_at(ref_t) + 1);
      for (auto& [bt, bc] : breaks_) {
        if (std::abs(bt - t) <= 1e-13 * std::max(1.0, std::abs(t))) {
          bc = std::min(bc, cls);
          return;
        }
      }
      breaks_.emplace_back(t, cls);
    };
    add(ts_, ref.t_start());
    add(te_, ref.t_end());
    const double lo = ref.min_length();
    const double hi = ref.max_length();
    for (double bp : ref.breakpoints()) {
      for (int sign : {+1, -1}) {
        auto fdf = [&](double t) {
          const double l = eval(t);
          return std::pair{t + sign * l - bp, 1.0 + sign * slope(t, l)};
        };
        const double a = sign > 0 ? bp - hi : bp + lo;
        const double b = sign > 0 ? bp - lo : bp + hi;
        double t = sign > 0 ? ts_ : te_;
        if (fdf(a).first < 0.0 && fdf(b).first > 0.0)
          t = detail::solve_increasing(fdf, a, b, {}, "effective breakpoint");
        else if (fdf(a).first == 0.0)
          t = a;
        else if (fdf(b).first == 0.0)
          t = b;
        add(t, bp);
      }
    }
    std::sort(breaks_.begin(), breaks_.end());
  }

  TrajectoryKind kind() const override { return TrajectoryKind::effective; }
  double eval(double t) const override { return effective_length(*phase_, t); }

  LengthDerivs derivs(double t, Side side) const override {
    const bool left = side == Side::left;
    if (t < ts_ || (t == ts_ && left)) return {L0_, 0.0, 0.0, 0.0, side};
    if (t > te_ || (t == te_ && !left)) return {L1_, 0.0, 0.0, 0.0, side};
    const double l = eval(t);
    const Side s = left ? Side::left : Side::right;
    const auto pa = phase_->derivs(t - l, s);
    const auto pb = phase_->derivs(t + l, s);
    const double p = pa.d1, q = pb.d1;
    const double sum = p + q;
    const double v = (p - q) / sum;
    const double dp = pa.d2 * (1.0 - v);
    const double dq = pb.d2 * (1.0 + v);
    const double num = dp * q - p * dq;
    const double acc = 2.0 * num / (sum * sum);
    const double ddp = pa.d3 * (1.0 - v) * (1.0 - v) - pa.d2 * acc;
    const double ddq = pb.d3 * (1.0 + v) * (1.0 + v) + pb.d2 * acc;
    const double dnum = ddp * q - p * ddq;
    const double jerk = 2.0 * (dnum * sum - 2.0 * num * (dp + dq)) / (sum * sum * sum);
    return {l, v, acc, jerk, side};
  }

  double t_start() const override { return ts_; }
  double t_end() const override { return te_; }
  double initial_length() const override { return L0_; }
  double final_length() const override { return L1_; }
  double min_length() const override { return phase_->reference().min_length(); }
  double max_length() const override { return phase_->reference().max_length(); }
  std::vector<double> breakpoints() const override {
    std::vector<double> out;
    for (const auto& b : breaks_) out.push_back(b.first);
    return out;
  }
  int continuity_at(double t) const override {
    for (const auto& [bt, bc] : breaks_)
      if (bt == t) return bc;
    return kSmooth;
  }
  std::string describe() const override {
    return R"({"kind":"effective","reference":)" + phase_->reference().describe() + "}";
  }

 private:
  double slope(double t, double l) const {
    const auto& ref = phase_->reference();
    const double La = ref.eval(t - l);
    const double Lb = ref.eval(t + l);
    return (Lb - La) / (La + Lb);
  }

  std::shared_ptr<const WkbPhase> phase_;
  double L0_ = 0.0, L1_ = 0.0, ts_ = 0.0, te_ = 0.0;
  std::vector<std::pair<double, int>> breaks_;
};

}  // namespace

Trajectory effective_trajectory(std::shared_ptr<const WkbPhase> phase) {
  if (!phase) throw DomainError("effective trajectory needs a phase");
  return Trajectory(std::make_shared<EffectiveShape>(std::move(phase)));
}

Trajectory effective_trajectory(const Trajectory& reference) {
  return effective_trajectory(std::make_shared<const WkbPhase>(reference));
}

EffectiveFrequency effective_frequency(const FrequencySample& ref) {
  if (!(ref.omega > 0.0)) throw DomainError("reference frequency must be positive");
  const double r1 = ref.d1 / ref.omega;
  const double r2 = ref.d2 / ref.omega;
  EffectiveFrequency out;
  out.omega_sq = ref.omega * ref.omega + 0.5 * (r2 - 1.5 * r1 * r1);
  out.real = out.omega_sq >= 0.0;
  out.omega = out.real ? std::sqrt(out.omega_sq) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

EffectiveFrequency effective_frequency(const std::function<FrequencySample(double)>& ref, double t) {
  return effective_frequency(ref(t));
}

}  // namespace dcesta
