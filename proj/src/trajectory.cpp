// SPDX-License-Identifier: Apache-2.0
#include "dcesta/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/tools/minima.hpp>

#include "dcesta/errors.hpp"

namespace dcesta {

const char* to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::static_length: return "static";
    case TrajectoryKind::smoothstep: return "smoothstep";
    case TrajectoryKind::step: return "step";
    case TrajectoryKind::linear_segment: return "linear";
    case TrajectoryKind::sampled: return "samples";
    case TrajectoryKind::composite: return "composite";
    case TrajectoryKind::effective: return "effective";
  }
  return "unknown";
}

double Quintic::value(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}
double Quintic::d1(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double w = u * (1.0 - u);
  return 30.0 * w * w;
}
double Quintic::d2(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
}
double Quintic::d3(double u) {
  if (u < 0.0 || u > 1.0) return 0.0;
  return 60.0 * (1.0 + u * (-6.0 + 6.0 * u));
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive and finite");
}

LengthDerivs constant_derivs(double L, Side side) { return {L, 0.0, 0.0, 0.0, side}; }

class StaticShape final : public TrajectoryShape {
 public:
  explicit StaticShape(double L) : L_(L) {}
  TrajectoryKind kind() const override { return TrajectoryKind::static_length; }
  double eval(double) const override { return L_; }
  LengthDerivs derivs(double, Side side) const override { return constant_derivs(L_, side); }
  double t_start() const override { return 0.0; }
  double t_end() const override { return 0.0; }
  double initial_length() const override { return L_; }
  double final_length() const override { return L_; }
  double min_length() const override { return L_; }
  double max_length() const override { return L_; }
  std::vector<double> breakpoints() const override { return {}; }
  int continuity_at(double) const override { return kSmooth; }
  std::string describe() const override { return R"({"kind":"static","L0":)" + fmt(L_) + "}"; }

 private:
  double L_;
};

class SmoothstepShape final : public TrajectoryShape {
 public:
  SmoothstepShape(double from, double to, double tau, double t0)
      : from_(from), to_(to), tau_(tau), t0_(t0) {}
  TrajectoryKind kind() const override { return TrajectoryKind::smoothstep; }

  double eval(double t) const override {
    const double u = (t - t0_) / tau_;
    if (u <= 0.0) return from_;
    if (u >= 1.0) return to_;
    return from_ + (to_ - from_) * Quintic::value(u);
  }

  LengthDerivs derivs(double t, Side side) const override {
    const double u = (t - t0_) / tau_;
    const bool left = side == Side::left;
    if (u < 0.0 || (u == 0.0 && left)) return constant_derivs(from_, side);
    if (u > 1.0 || (u == 1.0 && !left)) return constant_derivs(to_, side);
    const double d = to_ - from_;
    return {from_ + d * Quintic::value(u), d * Quintic::d1(u) / tau_,
            d * Quintic::d2(u) / (tau_ * tau_), d * Quintic::d3(u) / (tau_ * tau_ * tau_), side};
  }

  double t_start() const override { return t0_; }
  double t_end() const override { return t0_ + tau_; }
  double initial_length() const override { return from_; }
  double final_length() const override { return to_; }
  double min_length() const override { return std::min(from_, to_); }
  double max_length() const override { return std::max(from_, to_); }
  std::vector<double> breakpoints() const override {
    if (from_ == to_) return {};
    return {t0_, t0_ + tau_};
  }
  int continuity_at(double t) const override {
    if (from_ != to_ && (t == t0_ || t == t0_ + tau_)) return 2;
    return kSmooth;
  }
  std::string describe() const override {
    return R"({"kind":"smoothstep","L0":)" + fmt(from_) + R"(,"L1":)" + fmt(to_) + R"(,"tau":)" +
           fmt(tau_) + R"(,"t0":)" + fmt(t0_) + "}";
  }

 private:
  double from_, to_, tau_, t0_;
};

class StepShape final : public TrajectoryShape {
 public:
  StepShape(double L0, double L1, double t0) : L0_(L0), L1_(L1), t0_(t0) {}
  TrajectoryKind kind() const override { return TrajectoryKind::step; }
  double eval(double t) const override { return t < t0_ ? L0_ : L1_; }
  LengthDerivs derivs(double t, Side side) const override {
    const bool use_left = t < t0_ || (t == t0_ && side == Side::left);
    return constant_derivs(use_left ? L0_ : L1_, side);
  }
  double t_start() const override { return t0_; }
  double t_end() const override { return t0_; }
  double initial_length() const override { return L0_; }
  double final_length() const override { return L1_; }
  double min_length() const override { return std::min(L0_, L1_); }
  double max_length() const override { return std::max(L0_, L1_); }
  std::vector<double> breakpoints() const override { return {t0_}; }
  int continuity_at(double t) const override { return (t == t0_ && L0_ != L1_) ? kJump : kSmooth; }
  std::string describe() const override {
    return R"({"kind":"step","L0":)" + fmt(L0_) + R"(,"L1":)" + fmt(L1_) + R"(,"t0":)" + fmt(t0_) + "}";
  }

 private:
  double L0_, L1_, t0_;
};

class LinearShape final : public TrajectoryShape {
 public:
  LinearShape(double L0, double L1, double ts, double te) : L0_(L0), L1_(L1), ts_(ts), te_(te) {}
  TrajectoryKind kind() const override { return TrajectoryKind::linear_segment; }
  double eval(double t) const override {
    if (t <= ts_) return L0_;
    if (t >= te_) return L1_;
    return L0_ + (L1_ - L0_) * (t - ts_) / (te_ - ts_);
  }
  LengthDerivs derivs(double t, Side side) const override {
    const bool left = side == Side::left;
    if (t < ts_ || (t == ts_ && left)) return constant_derivs(L0_, side);
    if (t > te_ || (t == te_ && !left)) return constant_derivs(L1_, side);
    return {eval(t), (L1_ - L0_) / (te_ - ts_), 0.0, 0.0, side};
  }
  double t_start() const override { return ts_; }
  double t_end() const override { return te_; }
  double initial_length() const override { return L0_; }
  double final_length() const override { return L1_; }
  double min_length() const override { return std::min(L0_, L1_); }
  double max_length() const override { return std::max(L0_, L1_); }
  std::vector<double> breakpoints() const override {
    if (L0_ == L1_) return {};
    return {ts_, te_};
  }
  int continuity_at(double t) const override {
    return (L0_ != L1_ && (t == ts_ || t == te_)) ? 0 : kSmooth;
  }
  std::string describe() const override {
    return R"({"kind":"linear","L0":)" + fmt(L0_) + R"(,"L1":)" + fmt(L1_) + R"(,"t_start":)" +
           fmt(ts_) + R"(,"t_end":)" + fmt(te_) + "}";
  }

 private:
  double L0_, L1_, ts_, te_;
};

// Natural cubic spline; M holds the second derivatives at the knots.
class SampledShape final : public TrajectoryShape {
 public:
  SampledShape(std::vector<double> t, std::vector<double> L) : t_(std::move(t)), L_(std::move(L)) {
    const std::size_t n = t_.size();
    M_.assign(n, 0.0);
    if (n > 2) {
      // Thomas algorithm on the interior knots.
      std::vector<double> c(n, 0.0), d(n, 0.0);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t_[i] - t_[i - 1];
        const double h1 = t_[i + 1] - t_[i];
        const double diag = 2.0 * (h0 + h1);
        const double rhs = 6.0 * ((L_[i + 1] - L_[i]) / h1 - (L_[i] - L_[i - 1]) / h0);
        const double denom = diag - h0 * c[i - 1];
        c[i] = h1 / denom;
        d[i] = (rhs - h0 * d[i - 1]) / denom;
      }
      for (std::size_t i = n - 2; i >= 1; --i) {
        M_[i] = d[i] - c[i] * M_[i + 1];
        if (i == 1) break;
      }
    }
    lo_ = hi_ = L_.front();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      constexpr int kScan = 64;
      for (int k = 0; k <= kScan; ++k) {
        const double x = t_[i] + (t_[i + 1] - t_[i]) * k / kScan;
        const double v = piece(i, x).L;
        lo_ = std::min(lo_, v);
        hi_ = std::max(hi_, v);
      }
    }
    const double pad = 1e-9 * hi_;
    lo_ -= pad;
    hi_ += pad;
    front_class_ = std::abs(piece(0, t_.front()).dL) < 1e-14 ? 2 : 0;
    back_class_ = std::abs(piece(n - 2, t_.back()).dL) < 1e-14 ? 2 : 0;
  }

  TrajectoryKind kind() const override { return TrajectoryKind::sampled; }
  double eval(double t) const override { return derivs(t, Side::right).L; }

  LengthDerivs derivs(double t, Side side) const override {
    const bool left = side == Side::left;
    if (t < t_.front() || (t == t_.front() && left)) return constant_derivs(L_.front(), side);
    if (t > t_.back() || (t == t_.back() && !left)) return constant_derivs(L_.back(), side);
    auto it = left ? std::lower_bound(t_.begin(), t_.end(), t) : std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin());
    i = std::clamp<std::size_t>(i, 1, t_.size() - 1) - 1;
    auto d = piece(i, t);
    d.side = side;
    return d;
  }

  double t_start() const override { return t_.front(); }
  double t_end() const override { return t_.back(); }
  double initial_length() const override { return L_.front(); }
  double final_length() const override { return L_.back(); }
  double min_length() const override { return lo_; }
  double max_length() const override { return hi_; }
  std::vector<double> breakpoints() const override { return t_; }
  int continuity_at(double t) const override {
    if (t == t_.front()) return front_class_;
    if (t == t_.back()) return back_class_;
    return std::binary_search(t_.begin(), t_.end(), t) ? 2 : kSmooth;
  }
  std::string describe() const override {
    std::string s = R"({"kind":"samples","t":[)";
    for (std::size_t i = 0; i < t_.size(); ++i) s += (i ? "," : "") + fmt(t_[i]);
    s += R"(],"L":[)";
    for (std::size_t i = 0; i < L_.size(); ++i) s += (i ? "," : "") + fmt(L_[i]);
    return s + "]}";
  }

 private:
  LengthDerivs piece(std::size_t i, double x) const {
    const double h = t_[i + 1] - t_[i];
    const double a = t_[i + 1] - x;
    const double b = x - t_[i];
    const double ca = L_[i] / h - M_[i] * h / 6.0;
    const double cb = L_[i + 1] / h - M_[i + 1] * h / 6.0;
    LengthDerivs d;
    d.L = M_[i] * a * a * a / (6.0 * h) + M_[i + 1] * b * b * b / (6.0 * h) + ca * a + cb * b;
    d.dL = -M_[i] * a * a / (2.0 * h) + M_[i + 1] * b * b / (2.0 * h) - ca + cb;
    d.d2L = (M_[i] * a + M_[i + 1] * b) / h;
    d.d3L = (M_[i + 1] - M_[i]) / h;
    return d;
  }

  std::vector<double> t_, L_, M_;
  double lo_ = 0.0, hi_ = 0.0;
  int front_class_ = 0, back_class_ = 0;
};

class CompositeShape final : public TrajectoryShape {
 public:
  explicit CompositeShape(std::vector<Trajectory> pieces) : pieces_(std::move(pieces)) {}
  TrajectoryKind kind() const override { return TrajectoryKind::composite; }
  double eval(double t) const override { return pieces_[index(t, Side::right)].eval(t); }
  LengthDerivs derivs(double t, Side side) const override {
    return pieces_[index(t, side)].shape().derivs(t, side);
  }
  double t_start() const override { return pieces_.front().t_start(); }
  double t_end() const override { return pieces_.back().t_end(); }
  double initial_length() const override { return pieces_.front().initial_length(); }
  double final_length() const override { return pieces_.back().final_length(); }
  double min_length() const override {
    double v = pieces_.front().min_length();
    for (const auto& p : pieces_) v = std::min(v, p.min_length());
    return v;
  }
  double max_length() const override {
    double v = pieces_.front().max_length();
    for (const auto& p : pieces_) v = std::max(v, p.max_length());
    return v;
  }
  std::vector<double> breakpoints() const override {
    std::vector<double> out;
    for (const auto& p : pieces_) {
      auto b = p.breakpoints();
      out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  int continuity_at(double t) const override {
    return std::min(pieces_[index(t, Side::left)].continuity_at(t),
                    pieces_[index(t, Side::right)].continuity_at(t));
  }
  std::string describe() const override {
    std::string s = R"({"kind":"composite","pieces":[)";
    for (std::size_t i = 0; i < pieces_.size(); ++i) s += (i ? "," : "") + pieces_[i].describe();
    return s + "]}";
  }

 private:
  std::size_t index(double t, Side side) const {
    std::size_t i = 0;
    for (std::size_t k = 1; k < pieces_.size(); ++k) {
      const double s = pieces_[k].t_start();
      if (t > s || (t == s && side != Side::left)) i = k;
    }
    return i;
  }

  std::vector<Trajectory> pieces_;
};

}  // namespace

Trajectory::Trajectory(std::shared_ptr<const TrajectoryShape> shape) : shape_(std::move(shape)) {
  if (!shape_) throw DomainError("trajectory shape is null");
}

Trajectory Trajectory::constant(double length) {
  require_positive(length, "L0");
  return Trajectory(std::make_shared<StaticShape>(length));
}

Trajectory Trajectory::smoothstep(double L0, double eps, double tau, double t0) {
  if (!(eps > -1.0 && eps < 1.0)) throw DomainError("smoothstep amplitude eps must lie in (-1, 1)");
  return smoothstep_between(L0, L0 * (1.0 - eps), tau, t0);
}

Trajectory Trajectory::smoothstep_between(double L_from, double L_to, double tau, double t0) {
  require_positive(L_from, "L0");
  require_positive(L_to, "L1");
  require_positive(tau, "tau");
  return Trajectory(std::make_shared<SmoothstepShape>(L_from, L_to, tau, t0));
}

Trajectory Trajectory::step(double L0, double L1, double t0) {
  require_positive(L0, "L0");
  require_positive(L1, "L1");
  return Trajectory(std::make_shared<StepShape>(L0, L1, t0));
}

Trajectory Trajectory::linear_segment(double L0, double L1, double t_start, double t_end) {
  require_positive(L0, "L0");
  require_positive(L1, "L1");
  if (!(t_end > t_start)) throw DomainError("linear segment needs t_end > t_start");
  return Trajectory(std::make_shared<LinearShape>(L0, L1, t_start, t_end));
}

Trajectory Trajectory::sampled(std::vector<double> t, std::vector<double> L) {
  if (t.size() != L.size()) throw DomainError("samples: t and L differ in length");
  if (t.size() < 2) throw DomainError("samples: need at least two points");
  for (std::size_t i = 0; i < t.size(); ++i) {
    require_positive(L[i], "sampled L");
    if (!std::isfinite(t[i])) throw DomainError("samples: non-finite time");
    if (i && !(t[i] > t[i - 1])) throw DomainError("samples: times must be strictly increasing");
  }
  return Trajectory(std::make_shared<SampledShape>(std::move(t), std::move(L)));
}

Trajectory Trajectory::composite(std::vector<Trajectory> pieces) {
  if (pieces.empty()) throw DomainError("composite: no pieces");
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const auto& a = pieces[i - 1];
    const auto& b = pieces[i];
    if (b.t_start() < a.t_end()) throw DomainError("composite: pieces overlap in time");
    const double mismatch = std::abs(a.final_length() - b.initial_length());
    if (mismatch > 1e-12 * std::max(a.final_length(), b.initial_length()))
      throw DomainError("composite: length mismatch between consecutive pieces");
  }
  return Trajectory(std::make_shared<CompositeShape>(std::move(pieces)));
}

LengthDerivs Trajectory::eval_derivs(double t) const {
  const int cls = shape_->continuity_at(t);
  if (cls == kJump) throw DiscontinuityError("trajectory jumps at t = " + fmt(t));
  return shape_->derivs(t, cls == kSmooth ? Side::interior : Side::right);
}

LengthDerivs Trajectory::eval_derivs(double t, Side side) const {
  if (side == Side::interior) return eval_derivs(t);
  return shape_->derivs(t, side);
}

ValidationReport validate(const Trajectory& traj) {
  ValidationReport rep;
  const double ts = traj.t_start();
  const double te = traj.t_end();
  const double pad = 0.25 * (te - ts) + 1e-3;
  const double a = ts - pad;
  const double b = te + pad;
  constexpr int kGrid = 20000;
  const double h = (b - a) / kGrid;

  rep.min_length = std::numeric_limits<double>::infinity();
  int best = 0;
  double best_speed = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double t = a + h * i;
    const auto d = traj.shape().derivs(t, Side::right);
    rep.min_length = std::min(rep.min_length, d.L);
    if (std::abs(d.dL) > best_speed) {
      best_speed = std::abs(d.dL);
      best = i;
    }
  }

  // Local refinement of the fastest grid point.
  const double lo = a + h * std::max(0, best - 1);
  const double hi = a + h * std::min(kGrid, best + 1);
  auto neg_speed = [&](double t) { return -std::abs(traj.shape().derivs(t, Side::right).dL); };
  const auto [t_best, v_best] =
      boost::math::tools::brent_find_minima(neg_speed, lo, hi, std::numeric_limits<double>::digits / 2);
  (void)t_best;
  rep.max_speed = std::max(best_speed, -v_best);

  // Continuity class measured from one-sided limits at each breakpoint.
  for (double t : traj.breakpoints()) {
    const auto l = traj.shape().derivs(t, Side::left);
    const auto r = traj.shape().derivs(t, Side::right);
    rep.min_length = std::min({rep.min_length, l.L, r.L});
    rep.max_speed = std::max({rep.max_speed, std::abs(l.dL), std::abs(r.dL)});
    const double lv[4] = {l.L, l.dL, l.d2L, l.d3L};
    const double rv[4] = {r.L, r.dL, r.d2L, r.d3L};
    int cls = kSmooth;
    for (int k = 0; k < 4; ++k) {
      const double scale = std::max({1.0, std::abs(lv[k]), std::abs(rv[k])});
      if (std::abs(lv[k] - rv[k]) > 1e-9 * scale) {
        cls = k - 1;
        break;
      }
    }
    rep.continuity = std::min(rep.continuity, cls);
  }

  if (rep.continuity == kJump) {
    rep.max_speed = std::numeric_limits<double>::infinity();
    rep.notes.emplace_back("length jumps: infinite mirror speed");
  }
  if (rep.max_speed >= 1.0) rep.notes.emplace_back("mirror speed reaches or exceeds c");
  if (rep.min_length <= 0.0) rep.notes.emplace_back("cavity length not positive");
  if (rep.continuity >= 0 && rep.continuity < 2)
    rep.notes.emplace_back("below C2: stress tensor undefined at junction images");
  rep.physical = rep.min_length > 0.0 && rep.max_speed < 1.0 && rep.continuity >= 0;
  return rep;
}

}  // namespace dcesta
