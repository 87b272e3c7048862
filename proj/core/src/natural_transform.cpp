#include "fracseries/natural_transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracseries/numeric_format.hpp"
#include "fracseries/special_functions.hpp"

namespace fracseries {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[16] = {
    -0.98940093499164994,  -0.9445750230732326,  -0.86563120238783176,
    -0.755404408355003,    -0.61787624440264377, -0.45801677765722737,
    -0.28160355077925892,  -0.095012509837637454, 0.095012509837637454,
    0.28160355077925892,   0.45801677765722737,   0.61787624440264377,
    0.755404408355003,     0.86563120238783176,   0.9445750230732326,
    0.98940093499164994,
};
constexpr double kGlWeight[16] = {
    0.027152459411754037, 0.062253523938647706, 0.095158511682492591,
    0.12462897125553403,  0.14959598881657676,  0.16915651939500262,
    0.18260341504492361,  0.18945061045506859,  0.18945061045506859,
    0.18260341504492361,  0.16915651939500262,  0.14959598881657676,
    0.12462897125553403,  0.095158511682492591, 0.062253523938647706,
    0.027152459411754037,
};

double integrate_panels(const TimeSignal& f, double s, double u, double T,
                        int panels) {
  const double h = T / panels;
  const double growth_slack = 1.0 + 1e-9;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    const double mid = a + 0.5 * h;
    double panel = 0.0;
    for (int q = 0; q < 16; ++q) {
      const double t = mid + 0.5 * h * kGlNode[q];
      const double v = f.f(t);
      if (std::abs(v) > f.M * std::exp(t / f.tau) * growth_slack + 1e-12)
        throw std::domain_error(
            "nt_forward_numeric: signal violates its growth bound at t = " +
            format_double(t));
      panel += kGlWeight[q] * std::exp(-s * t / u) * v;
    }
    acc += 0.5 * h * panel;
  }
  return acc / u;
}

}  // namespace

ForwardResult nt_forward_numeric(const TimeSignal& f, double s, double u,
                                 int panels) {
  if (!(s > 0.0) || !(u > 0.0))
    throw std::domain_error("nt_forward_numeric: s and u must be positive");
  if (!(f.tau > 0.0) || !(f.M >= 0.0))
    throw std::domain_error("nt_forward_numeric: invalid growth bound");
  if (!(s / u > 1.0 / f.tau))
    throw std::domain_error(
        "nt_forward_numeric: transform diverges (s/u <= 1/tau)");
  if (panels < 1) throw std::domain_error("nt_forward_numeric: panels < 1");

  const double T = 40.0 * u / s;
  const double coarse = integrate_panels(f, s, u, T, panels);
  const double fine = integrate_panels(f, s, u, T, 2 * panels);
  return {fine, std::abs(fine - coarse)};
}

// ------------------------------------------------------------ TransformImage

TransformImage::TransformImage(double alpha, std::vector<ImageAtom> atoms,
                               double drop_tol)
    : alpha_(alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("TransformImage: alpha must be positive");

  // Exact merge of identical exponent forms first.
  std::vector<ImageAtom> merged;
  for (const ImageAtom& a : atoms) {
    bool found = false;
    for (ImageAtom& m : merged) {
      if (m.beta.same_form(a.beta)) {
        m.coeff += a.coeff;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(a);
  }

  std::sort(merged.begin(), merged.end(),
            [&](const ImageAtom& a, const ImageAtom& b) {
              return a.beta.value(alpha_) < b.beta.value(alpha_);
            });

  // Merge exponents that are numerically equal but written differently
  // (e.g. offset 1 with one down-step equals offset 0 at alpha = 1).
  std::vector<ImageAtom> out;
  for (const ImageAtom& a : merged) {
    if (!out.empty() && std::abs(out.back().beta.value(alpha_) -
                                 a.beta.value(alpha_)) < 1e-12) {
      out.back().coeff += a.coeff;
      continue;
    }
    out.push_back(a);
  }

  atoms_.reserve(out.size());
  for (const ImageAtom& a : out) {
    if (a.coeff == 0.0 || std::abs(a.coeff) <= drop_tol) continue;
    atoms_.push_back(a);
  }
}

double TransformImage::value_at(double s, double u) const {
  if (!(s > 0.0) || !(u > 0.0))
    throw std::domain_error("TransformImage::value_at: s, u must be positive");
  double acc = 0.0;
  for (const ImageAtom& a : atoms_) {
    const double b = a.beta.value(alpha_);
    acc += a.coeff * std::pow(u, b) / std::pow(s, b + 1.0);
  }
  return acc;
}

TransformImage TransformImage::shifted(int steps) const {
  std::vector<ImageAtom> out = atoms_;
  for (ImageAtom& a : out) a.beta.alpha_steps += steps;
  return TransformImage(alpha_, std::move(out));
}

std::string TransformImage::render() const {
  if (atoms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const ImageAtom& a = atoms_[i];
    const double b = a.beta.value(alpha_);
    if (i) out += " + ";
    out += format_double(a.coeff) + "*u^" + format_double(b) + "/s^" +
           format_double(b + 1.0);
  }
  return out;
}

// ------------------------------------------------------------ transform ops

TransformImage nt_of_power(double beta, double alpha) {
  if (!(beta >= 0.0))
    throw std::domain_error("nt_of_power: beta must be >= 0");
  return TransformImage(alpha, {{1.0, {beta, 0}}});
}

TransformImage nt_caputo_image(const TransformImage& V, double alpha,
                               double v0) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("nt_caputo_image: alpha must be in (0, 1]");

  // (s^a/u^a) V: one exponent down-step per atom. The initial-value term
  // (s^(a-1)/u^a) v0 is itself the atom with beta = -alpha (offset 0,
  // one down-step).
  std::vector<ImageAtom> atoms;
  atoms.reserve(V.atoms().size() + 1);
  for (ImageAtom a : V.atoms()) {
    a.beta.alpha_steps -= 1;
    atoms.push_back(a);
  }
  if (v0 != 0.0) atoms.push_back({-v0, {0.0, -1}});

  TransformImage out(alpha, std::move(atoms), 1e-14);
  for (const ImageAtom& a : out.atoms()) {
    if (a.beta.value(alpha) < -1e-12)
      throw std::runtime_error(
          "nt_caputo_image: result leaves the fractional-rational class "
          "(negative exponent u^" +
          format_double(a.beta.value(alpha)) + ")");
  }
  return out;
}

// ------------------------------------------------------------- inversion

double InvertedSignal::eval(double t) const {
  if (t < 0.0)
    throw std::domain_error("InvertedSignal::eval: t must be >= 0");
  double acc = 0.0;
  for (const auto& [c, be] : terms) {
    const double b = be.value(alpha);
    const double tp = b == 0.0 ? 1.0 : std::pow(t, b);
    acc += c * tp / gamma(b + 1.0);
  }
  return acc;
}

std::string InvertedSignal::render() const {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [c, be] = terms[i];
    const double b = be.value(alpha);
    if (i) out += " + ";
    out += format_double(c);
    if (b != 0.0)
      out += "*t^" + format_double(b) + "/Gamma(" + format_double(b + 1.0) +
             ")";
  }
  return out;
}

TransformImage InvertedSignal::to_image() const {
  std::vector<ImageAtom> atoms;
  atoms.reserve(terms.size());
  for (const auto& [c, be] : terms) atoms.push_back({c, be});
  return TransformImage(alpha, std::move(atoms));
}

InvertedSignal nt_invert(const TransformImage& V) {
  InvertedSignal out;
  out.alpha = V.alpha();
  out.terms.reserve(V.atoms().size());
  // Linearity + the power-atom table row: u^b/s^(b+1) <-> t^b/Gamma(b+1).
  for (const ImageAtom& a : V.atoms()) out.terms.emplace_back(a.coeff, a.beta);
  return out;
}

TransformImage image_of_constant_series(const FracSeries& v) {
  validate(v);
  std::vector<ImageAtom> atoms;
  atoms.reserve(v.coeffs.size());
  for (int k = 0; k <= v.order(); ++k) {
    const auto c = as_constant(v.coeffs[k]);
    if (!c)
      throw std::invalid_argument(
          "image_of_constant_series: coefficient of t^(" + std::to_string(k) +
          " alpha) is not spatially constant");
    if (*c == 0.0) continue;
    // N[t^(k alpha)] = Gamma(k alpha + 1) u^(k alpha)/s^(k alpha + 1).
    atoms.push_back({*c * gamma(k * v.alpha + 1.0), {0.0, k}});
  }
  return TransformImage(v.alpha, std::move(atoms));
}

}  // namespace fracseries
