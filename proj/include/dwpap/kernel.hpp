#pragma once

#include <complex>
#include <functional>
#include <string>

namespace dwpap {

// Convolution kernel carrying a declared integrable envelope.  The envelope
// is what certifies a truncation radius: |k(s)| <= envelope(|s|) with a
// closed-form tail integral, so the part of the convolution outside [-R, R]
// can be bounded a priori.  Construction probes the evaluator against the
// envelope and rejects kernels that poke through it.
class Kernel {
 public:
  enum class EnvelopeKind { Exponential, PowerLaw, Compact };

  // Catalog shapes, all with unit total mass:
  //   gauss(sigma)   exp(-s^2 / (2 sigma^2)) / (sigma sqrt(2 pi))
  //   laplace(a)     (a/2) exp(-a|s|)
  //   box(R)         1/(2R) on [-R, R]
  static Kernel gauss(double sigma);
  static Kernel laplace(double a);
  static Kernel box(double radius);

  // Arbitrary evaluator with a declared envelope:
  //   Exponential: |k(s)| <= amplitude * exp(-rate_or_power * |s|)
  //   PowerLaw:    |k(s)| <= amplitude / |s|^rate_or_power for |s| >= radius
  //                (rate_or_power > 1)
  //   Compact:     |k(s)| <= amplitude, and k(s) = 0 for |s| > radius
  static Kernel custom(std::function<double(double)> f, std::string label, EnvelopeKind kind,
                       double amplitude, double rate_or_power, double radius, double l1_bound);

  double eval(double s) const { return scale_ * f_(s); }

  // Upper bound on the integral of |k| outside [-r, r].
  double tail_mass(double r) const;

  // Smallest certified radius with tail_mass(r) <= bound (throws EngineError
  // when the envelope cannot reach the bound within radius 1e8).
  double solve_radius(double bound) const;

  // integral of k(s) e^{-i lambda s} ds; closed form for the catalog shapes,
  // adaptive quadrature for custom kernels.
  std::complex<double> fourier(double lambda) const;

  double l1_bound() const { return std::fabs(scale_) * l1_; }
  bool compact() const { return kind_ == EnvelopeKind::Compact; }
  double support_radius() const { return radius_; }
  const std::string& label() const { return label_; }

  // Same kernel scaled so its total mass estimate is multiplied by m.
  Kernel with_mass(double m) const;

 private:
  enum class Shape { Gauss, Laplace, Box, Custom };

  Kernel() = default;
  void verify_envelope() const;

  std::function<double(double)> f_;
  std::string label_;
  Shape shape_ = Shape::Custom;
  EnvelopeKind kind_ = EnvelopeKind::Exponential;
  double amp_ = 0;     // envelope amplitude (unscaled)
  double rate_ = 0;    // exponential rate, or power for PowerLaw
  double radius_ = 0;  // support (Compact) / envelope validity floor (PowerLaw)
  double param_ = 0;   // shape parameter for closed-form transforms
  double l1_ = 0;      // total-mass bound of the unscaled evaluator
  double scale_ = 1.0;
};

// Catalog spellings accepted on the command line: "gauss(1)", "laplace(2)",
// "box(0.5)".  mass scales the kernel away from its unit normalization.
Kernel parse_kernel(const std::string& text, double mass = 1.0);

}  // namespace dwpap
