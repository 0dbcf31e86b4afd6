#include "radnorm/disc.hpp"

#include <cmath>
#include <string>

#include "radnorm/errors.hpp"

namespace radnorm {

double wrap_angle(double a) noexcept {
  if (a > -std::numbers::pi && a <= std::numbers::pi) return a;
  double w = std::remainder(a, kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

double normalize_angle(double a) noexcept {
  if (a >= 0.0 && a < kTwoPi) return a;
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

DiscPoint::DiscPoint(double x, double anchor, double offset, int)
    : x_(x), anchor_(anchor), offset_(offset) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw DomainError("disc point requires 0 < 1 - r <= 1 (got 1 - r = " +
                      std::to_string(x) + ")");
  }
  if (!std::isfinite(anchor) || !std::isfinite(offset)) {
    throw DomainError("disc point angle must be finite");
  }
}

DiscPoint::DiscPoint(double one_minus_r, double theta)
    : DiscPoint(one_minus_r, normalize_angle(theta), 0.0, 0) {}

DiscPoint DiscPoint::anchored(double one_minus_r, double anchor, double offset) {
  return DiscPoint(one_minus_r, anchor, offset, 0);
}

DiscPoint DiscPoint::from_radius(double r, double theta) {
  return DiscPoint(1.0 - r, theta);
}

double DiscPoint::theta() const noexcept { return normalize_angle(anchor_ + offset_); }

double DiscPoint::angle_from(double center) const noexcept {
  const double base = anchor_ - center;
  if (base == 0.0) return wrap_angle(offset_);
  return wrap_angle(wrap_angle(base) + offset_);
}

std::complex<double> DiscPoint::z() const noexcept {
  return std::polar(r(), anchor_ + offset_);
}

AnnulusArc::AnnulusArc(double x_lo, double x_hi, double center, double half_width)
    : x_lo_(x_lo), x_hi_(x_hi), center_(normalize_angle(center)), half_width_(half_width) {
  if (!(x_lo > 0.0 && x_lo <= x_hi && x_hi <= 1.0)) {
    throw DomainError("annulus arc needs 0 < x_lo <= x_hi <= 1 in 1 - r coordinates");
  }
  if (!(half_width > 0.0 && half_width <= std::numbers::pi)) {
    throw DomainError("annulus arc angular half-width must lie in (0, pi]");
  }
}

AnnulusArc AnnulusArc::from_polar(double r_lo, double r_hi, double theta_lo,
                                  double theta_hi) {
  if (!(theta_hi > theta_lo)) throw DomainError("annulus arc needs theta_hi > theta_lo");
  return AnnulusArc(1.0 - r_hi, 1.0 - r_lo, 0.5 * (theta_lo + theta_hi),
                    0.5 * (theta_hi - theta_lo));
}

bool AnnulusArc::full_circle() const noexcept { return half_width_ >= std::numbers::pi; }

bool AnnulusArc::contains_angle(const DiscPoint& z) const noexcept {
  return full_circle() || std::abs(z.angle_from(center_)) <= half_width_;
}

AnnulusArc AnnulusArc::rotated(double phi) const {
  return AnnulusArc(x_lo_, x_hi_, center_ + phi, half_width_);
}

bool AnnulusArc::disjoint_from(const AnnulusArc& other) const noexcept {
  if (x_hi_ < other.x_lo_ || other.x_hi_ < x_lo_) return true;
  if (full_circle() || other.full_circle()) return false;
  return std::abs(wrap_angle(center_ - other.center_)) > half_width_ + other.half_width_;
}

}  // namespace radnorm
