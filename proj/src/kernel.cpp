#include "dwpap/kernel.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dwpap/errors.hpp"
#include "dwpap/quadrature.hpp"

namespace dwpap {

namespace {

constexpr double kMaxRadius = 1e8;

std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double envelope_value(Kernel::EnvelopeKind kind, double amp, double rate, double radius,
                      double s) {
  s = std::fabs(s);
  switch (kind) {
    case Kernel::EnvelopeKind::Exponential:
      return amp * std::exp(-rate * s);
    case Kernel::EnvelopeKind::PowerLaw:
      return s >= radius ? amp / std::pow(s, rate) : std::numeric_limits<double>::infinity();
    case Kernel::EnvelopeKind::Compact:
      return s <= radius ? amp : 0.0;
  }
  return 0.0;
}

}  // namespace

void Kernel::verify_envelope() const {
  // Probe the unscaled evaluator against its declared envelope on a mixed
  // linear/geometric grid out to where the tail is negligible.
  double far = radius_ > 0 ? radius_ : 1.0;
  if (kind_ == EnvelopeKind::Exponential && rate_ > 0 && amp_ > 0)
    far = std::max(1.0, std::log(std::max(2.0 * amp_ / (rate_ * 1e-12), 1.0)) / rate_);
  else if (kind_ == EnvelopeKind::PowerLaw)
    far = std::max(radius_ * 4.0, radius_ + 10.0);
  else if (kind_ == EnvelopeKind::Compact)
    far = radius_ * 2.0 + 1.0;

  const int n = 256;
  for (int i = 0; i <= n; ++i) {
    double s = far * static_cast<double>(i) / n;
    for (double signed_s : {s, -s}) {
      if (kind_ == EnvelopeKind::PowerLaw && std::fabs(signed_s) < radius_) continue;
      double bound = envelope_value(kind_, amp_, rate_, radius_, signed_s);
      double v = std::fabs(f_(signed_s));
      if (!(v <= bound * (1.0 + 1e-9) + 1e-300))
        throw std::invalid_argument("kernel '" + label_ + "' exceeds its declared envelope at s=" +
                                    std::to_string(signed_s));
    }
  }
}

Kernel Kernel::gauss(double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("gauss kernel: sigma must be positive");
  Kernel k;
  double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  k.f_ = [sigma, norm](double s) { return norm * std::exp(-s * s / (2.0 * sigma * sigma)); };
  k.label_ = "gauss(" + fmt_param(sigma) + ")";
  k.shape_ = Shape::Gauss;
  k.kind_ = EnvelopeKind::Exponential;
  // exp(-s^2/(2 sigma^2)) <= exp(1/2) exp(-|s|/sigma) since (|s|/sigma - 1)^2 >= 0.
  k.amp_ = norm * std::exp(0.5);
  k.rate_ = 1.0 / sigma;
  k.param_ = sigma;
  k.l1_ = 1.0;
  k.verify_envelope();
  return k;
}

Kernel Kernel::laplace(double a) {
  if (!(a > 0)) throw std::invalid_argument("laplace kernel: rate must be positive");
  Kernel k;
  k.f_ = [a](double s) { return 0.5 * a * std::exp(-a * std::fabs(s)); };
  k.label_ = "laplace(" + fmt_param(a) + ")";
  k.shape_ = Shape::Laplace;
  k.kind_ = EnvelopeKind::Exponential;
  k.amp_ = 0.5 * a;
  k.rate_ = a;
  k.param_ = a;
  k.l1_ = 1.0;
  k.verify_envelope();
  return k;
}

Kernel Kernel::box(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("box kernel: radius must be positive");
  Kernel k;
  double h = 0.5 / radius;
  k.f_ = [radius, h](double s) { return std::fabs(s) <= radius ? h : 0.0; };
  k.label_ = "box(" + fmt_param(radius) + ")";
  k.shape_ = Shape::Box;
  k.kind_ = EnvelopeKind::Compact;
  k.amp_ = h;
  k.radius_ = radius;
  k.param_ = radius;
  k.l1_ = 1.0;
  k.verify_envelope();
  return k;
}

Kernel Kernel::custom(std::function<double(double)> f, std::string label, EnvelopeKind kind,
                      double amplitude, double rate_or_power, double radius, double l1_bound) {
  if (!f) throw std::invalid_argument("custom kernel: empty evaluator");
  if (!(amplitude >= 0) || !(l1_bound >= 0))
    throw std::invalid_argument("custom kernel: negative envelope data");
  if (kind == EnvelopeKind::Exponential && !(rate_or_power > 0))
    throw std::invalid_argument("custom kernel: exponential rate must be positive");
  if (kind == EnvelopeKind::PowerLaw && !(rate_or_power > 1))
    throw std::invalid_argument("custom kernel: power must exceed 1 for an integrable tail");
  if (kind != EnvelopeKind::Exponential && !(radius > 0))
    throw std::invalid_argument("custom kernel: radius must be positive");
  Kernel k;
  k.f_ = std::move(f);
  k.label_ = std::move(label);
  k.shape_ = Shape::Custom;
  k.kind_ = kind;
  k.amp_ = amplitude;
  k.rate_ = rate_or_power;
  k.radius_ = radius;
  k.l1_ = l1_bound;
  k.verify_envelope();
  return k;
}

double Kernel::tail_mass(double r) const {
  double a = std::fabs(scale_) * amp_;
  switch (kind_) {
    case EnvelopeKind::Exponential:
      return 2.0 * a / rate_ * std::exp(-rate_ * std::max(r, 0.0));
    case EnvelopeKind::PowerLaw: {
      // The envelope only speaks for |s| >= radius_, so the certified tail
      // starts there.
      double rr = std::max(r, radius_);
      return 2.0 * a / (rate_ - 1.0) * std::pow(rr, 1.0 - rate_);
    }
    case EnvelopeKind::Compact:
      return r >= radius_ ? 0.0 : 2.0 * a * (radius_ - r);
  }
  return 0.0;
}

double Kernel::solve_radius(double bound) const {
  if (!(bound > 0)) throw std::invalid_argument("kernel truncation bound must be positive");
  if (kind_ == EnvelopeKind::Compact) return radius_;
  double a = std::fabs(scale_) * amp_;
  double r;
  if (kind_ == EnvelopeKind::Exponential) {
    r = std::log(std::max(2.0 * a / (rate_ * bound), 1.0)) / rate_;
  } else {
    r = std::pow(2.0 * a / ((rate_ - 1.0) * bound), 1.0 / (rate_ - 1.0));
    r = std::max(r, radius_);
  }
  r = std::max(r, 1.0);
  if (r > kMaxRadius)
    throw EngineError("kernel '" + label_ + "' tail too heavy to reach the requested bound");
  return r;
}

std::complex<double> Kernel::fourier(double lambda) const {
  switch (shape_) {
    case Shape::Gauss:
      return scale_ * std::exp(-0.5 * param_ * param_ * lambda * lambda);
    case Shape::Laplace: {
      double a = param_;
      return scale_ * a * a / (a * a + lambda * lambda);
    }
    case Shape::Box: {
      double x = lambda * param_;
      return scale_ * (std::fabs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x);
    }
    case Shape::Custom:
      break;
  }
  double r = solve_radius(1e-10);
  QuadOptions opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-10;
  double osc = std::fabs(lambda);
  opt.max_step = osc > 0 ? std::min(0.25, std::numbers::pi / (4.0 * osc)) : std::max(r / 64.0, 0.25);
  auto g = [this, lambda](double s) {
    return eval(s) * std::polar(1.0, -lambda * s);
  };
  return integrate_c(g, -r, 0.0, opt) + integrate_c(g, 0.0, r, opt);
}

Kernel Kernel::with_mass(double m) const {
  if (!(m != 0) || !std::isfinite(m)) throw std::invalid_argument("kernel mass must be finite and nonzero");
  Kernel k = *this;
  k.scale_ *= m;
  k.label_ = fmt_param(m) + "*" + label_;
  return k;
}

Kernel parse_kernel(const std::string& text, double mass) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("kernel spec '" + text + "': expected name(parameter)");
  std::string name = text.substr(0, open);
  std::string arg = text.substr(open + 1, close - open - 1);
  // Trim surrounding spaces.
  auto strip = [](std::string& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  };
  strip(name);
  strip(arg);
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(arg, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("kernel spec '" + text + "': bad parameter");
  }
  if (used != arg.size())
    throw std::invalid_argument("kernel spec '" + text + "': bad parameter");
  Kernel k = [&] {
    if (name == "gauss") return Kernel::gauss(value);
    if (name == "laplace") return Kernel::laplace(value);
    if (name == "box") return Kernel::box(value);
    throw std::invalid_argument("unknown kernel '" + name + "'");
  }();
  return mass == 1.0 ? k : k.with_mass(mass);
}

}  // namespace dwpap
