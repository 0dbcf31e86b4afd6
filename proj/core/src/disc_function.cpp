#include "radnorm/disc_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radnorm/errors.hpp"
#include "radnorm/pole_modulus.hpp"

namespace radnorm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

PolarValue polar_of(std::complex<double> v) {
  const double m = std::abs(v);
  return {m > 0.0 ? std::log(m) : kNegInf, m > 0.0 ? std::arg(v) : 0.0};
}

PolarValue evaluate_node(const DiscFunction::Node& node, const DiscPoint& z);

PolarValue eval(const fn::PowerSeries& f, const DiscPoint& z) {
  const std::complex<double> w = z.z();
  std::complex<double> acc = 0.0;
  for (auto it = f.coefficients.rbegin(); it != f.coefficients.rend(); ++it) {
    acc = acc * w + *it;
  }
  return polar_of(acc);
}

PolarValue eval(const fn::PoleKernel& f, const DiscPoint& z) {
  if (f.modulus == 0.0) return {0.0, 0.0};
  const double phi = z.angle_from(f.angle);
  const double x = z.one_minus_r();
  const double ar = f.modulus * (1.0 - x);
  const double s = std::sin(0.5 * phi);
  const double re = ((1.0 - f.modulus) + f.modulus * x) + 2.0 * ar * s * s;
  const double im = -ar * std::sin(phi);
  const double modsq = stable_kernel_modulus_sq(f.modulus, x, phi);
  return {-0.5 * f.beta * std::log(modsq), -f.beta * std::atan2(im, re)};
}

PolarValue eval(const fn::PoleShift& f, const DiscPoint& z) {
  const double delta = std::exp(f.log_delta);
  const double phi = z.angle_from(f.rotation);
  const double x = z.one_minus_r();
  const double r = 1.0 - x;
  const double s = std::sin(0.5 * phi);
  const double re = (delta + x) + 2.0 * r * s * s;
  const double im = -r * std::sin(phi);
  const double modsq = stable_pole_modulus_sq(delta, x, phi);
  return {f.log_delta - 0.5 * f.exponent * std::log(modsq),
          -f.exponent * std::atan2(im, re)};
}

PolarValue eval(const fn::BiMonomial& f, const DiscPoint& z) {
  const int degree = f.analytic_degree + f.conjugate_degree;
  const double r = z.r();
  const double log_abs = degree == 0 ? 0.0 : (r > 0.0 ? degree * std::log(r) : kNegInf);
  return {log_abs, (f.analytic_degree - f.conjugate_degree) * (z.anchor() + z.offset())};
}

PolarValue eval(const fn::Sum& f, const DiscPoint& z) {
  if (f.terms.empty()) return {kNegInf, 0.0};
  if (f.terms.size() == 1) return f.terms.front().evaluate_polar(z);
  std::vector<PolarValue> parts;
  parts.reserve(f.terms.size());
  double top = kNegInf;
  for (const auto& t : f.terms) {
    parts.push_back(t.evaluate_polar(z));
    top = std::max(top, parts.back().log_abs);
  }
  if (top == kNegInf) return {kNegInf, 0.0};
  std::complex<double> acc = 0.0;
  for (const auto& p : parts) {
    if (p.log_abs == kNegInf) continue;
    acc += std::polar(std::exp(p.log_abs - top), p.arg);
  }
  const PolarValue rel = polar_of(acc);
  return {rel.log_abs + top, rel.arg};
}

PolarValue eval(const fn::Scale& f, const DiscPoint& z) {
  if (f.factor == 0.0) return {kNegInf, 0.0};
  const PolarValue inner = f.inner.evaluate_polar(z);
  return {inner.log_abs + std::log(std::abs(f.factor)), inner.arg + std::arg(f.factor)};
}

PolarValue eval(const fn::Masked& f, const DiscPoint& z) {
  const bool inside = f.region.contains(z);
  if (inside != (f.side == MaskSide::inside)) return {kNegInf, 0.0};
  return f.inner.evaluate_polar(z);
}

PolarValue evaluate_node(const DiscFunction::Node& node, const DiscPoint& z) {
  return std::visit([&z](const auto& f) { return eval(f, z); }, node);
}

void collect_features(const DiscFunction& f, std::optional<double> x,
                      std::vector<AngularFeature>& out) {
  std::visit(
      Overloaded{
          [](const fn::PowerSeries&) {},
          [](const fn::BiMonomial&) {},
          [&](const fn::PoleKernel& k) {
            if (k.modulus == 0.0) return;
            const double base = 1.0 - k.modulus;
            out.push_back({k.angle, x ? base + k.modulus * *x : base, {}});
          },
          [&](const fn::PoleShift& s) {
            const double delta = std::exp(s.log_delta);
            out.push_back({s.rotation, x ? delta + *x : delta, {}});
          },
          [&](const fn::Sum& s) {
            for (const auto& t : s.terms) collect_features(t, x, out);
          },
          [&](const fn::Scale& s) { collect_features(s.inner, x, out); },
          [&](const fn::Masked& m) {
            collect_features(m.inner, x, out);
            if (m.region.full_circle()) return;
            if (x && !m.region.contains_radius(*x)) return;
            out.push_back({m.region.center(), 0.0,
                           {-m.region.half_width(), m.region.half_width()}});
          },
      },
      f.node());
}

void collect_radial(const DiscFunction& f, const DiscPoint& z, QuadratureHints& out) {
  std::visit(
      Overloaded{
          [](const fn::PowerSeries&) {},
          [](const fn::BiMonomial&) {},
          [&](const fn::PoleKernel& k) {
            if (k.modulus == 0.0) return;
            const double phi = z.angle_from(k.angle);
            out.poles.push_back(
                {0.0, (1.0 - k.modulus) + 2.0 * std::abs(std::sin(0.5 * phi)), false});
          },
          [&](const fn::PoleShift& s) {
            const double phi = z.angle_from(s.rotation);
            out.poles.push_back(
                {0.0, std::exp(s.log_delta) + 2.0 * std::abs(std::sin(0.5 * phi)), false});
          },
          [&](const fn::Sum& s) {
            for (const auto& t : s.terms) collect_radial(t, z, out);
          },
          [&](const fn::Scale& s) { collect_radial(s.inner, z, out); },
          [&](const fn::Masked& m) {
            collect_radial(m.inner, z, out);
            if (m.region.contains_angle(z)) {
              out.breakpoints.push_back(m.region.x_lo());
              out.breakpoints.push_back(m.region.x_hi());
            }
          },
      },
      f.node());
}

void collect_radial_breaks(const DiscFunction& f, std::vector<double>& out) {
  std::visit(Overloaded{
                 [](const fn::PowerSeries&) {},
                 [](const fn::BiMonomial&) {},
                 [](const fn::PoleKernel&) {},
                 [](const fn::PoleShift&) {},
                 [&](const fn::Sum& s) {
                   for (const auto& t : s.terms) collect_radial_breaks(t, out);
                 },
                 [&](const fn::Scale& s) { collect_radial_breaks(s.inner, out); },
                 [&](const fn::Masked& m) {
                   collect_radial_breaks(m.inner, out);
                   out.push_back(m.region.x_lo());
                   out.push_back(m.region.x_hi());
                 },
             },
             f.node());
}

}  // namespace

std::complex<double> PolarValue::to_complex() const {
  if (log_abs == kNegInf) return 0.0;
  return std::polar(std::exp(log_abs), arg);
}

DiscFunction::DiscFunction(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}
const DiscFunction::Node& DiscFunction::node() const noexcept { return *node_; }


std::complex<double> DiscFunction::evaluate(const DiscPoint& z) const {
  if (const auto* ps = std::get_if<fn::PowerSeries>(node_.get())) {
    const std::complex<double> w = z.z();
    std::complex<double> acc = 0.0;
    for (auto it = ps->coefficients.rbegin(); it != ps->coefficients.rend(); ++it) {
      acc = acc * w + *it;
    }
    return acc;
  }
  return evaluate_polar(z).to_complex();
}

PolarValue DiscFunction::evaluate_polar(const DiscPoint& z) const {
  return evaluate_node(*node_, z);
}

bool DiscFunction::is_analytic() const {
  return std::visit(Overloaded{
                        [](const fn::PowerSeries&) { return true; },
                        [](const fn::PoleKernel&) { return true; },
                        [](const fn::PoleShift&) { return true; },
                        [](const fn::BiMonomial& b) { return b.conjugate_degree == 0; },
                        [](const fn::Sum& s) {
                          return std::all_of(s.terms.begin(), s.terms.end(),
                                             [](const auto& t) { return t.is_analytic(); });
                        },
                        [](const fn::Scale& s) { return s.inner.is_analytic(); },
                        [](const fn::Masked&) { return false; },
                    },
                    *node_);
}

std::vector<AngularFeature> DiscFunction::angular_features(std::optional<double> x) const {
  std::vector<AngularFeature> out;
  collect_features(*this, x, out);
  return out;
}

QuadratureHints DiscFunction::radial_hints(const DiscPoint& z) const {
  QuadratureHints out;
  collect_radial(*this, z, out);
  return out;
}

std::vector<double> DiscFunction::radial_breakpoints() const {
  std::vector<double> out;
  collect_radial_breaks(*this, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double DiscFunction::min_scale() const {
  double best = 0.0;
  for (const auto& f : angular_features()) {
    if (f.scale > 0.0 && (best == 0.0 || f.scale < best)) best = f.scale;
  }
  return best;
}

DiscFunction power_series(std::vector<std::complex<double>> coefficients) {
  return DiscFunction(fn::PowerSeries{std::move(coefficients)});
}

DiscFunction constant(std::complex<double> c) { return power_series({c}); }

DiscFunction monomial(int degree) {
  if (degree < 0) throw DomainError("monomial degree must be nonnegative");
  std::vector<std::complex<double>> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = 1.0;
  return power_series(std::move(c));
}

DiscFunction pole_kernel(std::complex<double> alpha, double beta) {
  const double modulus = std::abs(alpha);
  if (!(modulus < 1.0)) throw DomainError("pole kernel requires |alpha| < 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("pole kernel requires beta > 0");
  const double angle = modulus > 0.0 ? normalize_angle(std::arg(alpha)) : 0.0;
  return DiscFunction(fn::PoleKernel{modulus, angle, beta});
}

DiscFunction pole_shift(double log_delta, double exponent, double rotation) {
  if (!std::isfinite(log_delta)) throw DomainError("pole shift requires delta > 0");
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw DomainError("pole shift requires a positive exponent");
  }
  return DiscFunction(fn::PoleShift{log_delta, exponent, normalize_angle(rotation)});
}

DiscFunction bimonomial(int analytic_degree, int conjugate_degree) {
  if (analytic_degree < 0 || conjugate_degree < 0) {
    throw DomainError("monomial degrees must be nonnegative");
  }
  return DiscFunction(fn::BiMonomial{analytic_degree, conjugate_degree});
}

DiscFunction sum(std::vector<DiscFunction> terms) {
  return DiscFunction(fn::Sum{std::move(terms)});
}

DiscFunction scale(std::complex<double> factor, DiscFunction f) {
  return DiscFunction(fn::Scale{factor, std::move(f)});
}

DiscFunction masked(DiscFunction f, AnnulusArc region, MaskSide side) {
  return DiscFunction(fn::Masked{std::move(f), region, side});
}

DiscFunction rotate(const DiscFunction& f, double phi) {
  return std::visit(
      Overloaded{
          [&](const fn::PowerSeries& p) {
            auto c = p.coefficients;
            for (std::size_t k = 1; k < c.size(); ++k) {
              c[k] *= std::polar(1.0, -static_cast<double>(k) * phi);
            }
            return power_series(std::move(c));
          },
          [&](const fn::PoleKernel& k) {
            return DiscFunction(
                fn::PoleKernel{k.modulus, normalize_angle(k.angle + phi), k.beta});
          },
          [&](const fn::PoleShift& s) {
            return DiscFunction(
                fn::PoleShift{s.log_delta, s.exponent, normalize_angle(s.rotation + phi)});
          },
          [&](const fn::BiMonomial& b) {
            const int winding = b.analytic_degree - b.conjugate_degree;
            if (winding == 0) return f;
            return scale(std::polar(1.0, -winding * phi), f);
          },
          [&](const fn::Sum& s) {
            std::vector<DiscFunction> terms;
            terms.reserve(s.terms.size());
            for (const auto& t : s.terms) terms.push_back(rotate(t, phi));
            return sum(std::move(terms));
          },
          [&](const fn::Scale& s) { return scale(s.factor, rotate(s.inner, phi)); },
          [&](const fn::Masked& m) {
            return masked(rotate(m.inner, phi), m.region.rotated(phi), m.side);
          },
      },
      f.node());
}

DiscFunction operator+(const DiscFunction& a, const DiscFunction& b) { return sum({a, b}); }

DiscFunction operator*(std::complex<double> c, const DiscFunction& f) { return scale(c, f); }

}  // namespace radnorm
