#pragma once

#include <complex>
#include <numbers>

namespace radnorm {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Normalisation of the measures on the disc. Angular averages use dθ/2π
/// and the area measure is dA = dx dy / π, so both the circle and the disc
/// have unit mass.
struct MeasureConvention {
  static constexpr double angular_mass = 1.0;
  static constexpr double area_mass = 1.0;
  /// dA = area_density(r) dr dθ/2π
  static constexpr double area_density(double r) noexcept { return 2.0 * r; }
};

/// Representative of `a` in (-π, π].
double wrap_angle(double a) noexcept;

/// Representative of `a` in [0, 2π).
double normalize_angle(double a) noexcept;

/// A point strictly inside the unit disc.
///
/// The radius is stored as x = 1 - r so that points within 1e-300 of the
/// boundary keep full relative precision. The angle is stored as
/// anchor + offset: quadrature anchors the angle at a feature (pole or mask
/// centre) and varies only the offset, so angular distances far below the
/// spacing of doubles near 2π stay representable.
class DiscPoint {
 public:
  /// Throws DomainError unless 0 < one_minus_r <= 1.
  DiscPoint(double one_minus_r, double theta);

  static DiscPoint anchored(double one_minus_r, double anchor, double offset);
  static DiscPoint from_radius(double r, double theta);

  double one_minus_r() const noexcept { return x_; }
  double r() const noexcept { return 1.0 - x_; }
  double anchor() const noexcept { return anchor_; }
  double offset() const noexcept { return offset_; }

  /// The angle in [0, 2π).
  double theta() const noexcept;

  /// Signed angular distance from `center`, in (-π, π]. Exact when
  /// `center` equals the anchor.
  double angle_from(double center) const noexcept;

  std::complex<double> z() const noexcept;

 private:
  DiscPoint(double x, double anchor, double offset, int);

  double x_;
  double anchor_;
  double offset_;
};

/// Product region {r : 1 - r ∈ [x_lo, x_hi]} × {θ : |θ - center| <= half_width}.
class AnnulusArc {
 public:
  /// Throws DomainError unless 0 < x_lo <= x_hi <= 1 and 0 < half_width <= π.
  AnnulusArc(double x_lo, double x_hi, double center, double half_width);

  /// Region given by radii r ∈ [r_lo, r_hi] and angles θ ∈ [theta_lo, theta_hi].
  static AnnulusArc from_polar(double r_lo, double r_hi, double theta_lo, double theta_hi);

  double x_lo() const noexcept { return x_lo_; }
  double x_hi() const noexcept { return x_hi_; }
  double center() const noexcept { return center_; }
  double half_width() const noexcept { return half_width_; }
  double theta_lo() const noexcept { return center_ - half_width_; }
  double theta_hi() const noexcept { return center_ + half_width_; }
  bool full_circle() const noexcept;

  bool contains_radius(double one_minus_r) const noexcept {
    return one_minus_r >= x_lo_ && one_minus_r <= x_hi_;
  }
  bool contains_angle(const DiscPoint& z) const noexcept;
  bool contains(const DiscPoint& z) const noexcept {
    return contains_radius(z.one_minus_r()) && contains_angle(z);
  }

  AnnulusArc rotated(double phi) const;

  /// True when the two regions provably share no point.
  bool disjoint_from(const AnnulusArc& other) const noexcept;

 private:
  double x_lo_;
  double x_hi_;
  double center_;
  double half_width_;
};

}  // namespace radnorm
