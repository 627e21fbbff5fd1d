#pragma once

// Field modes on the diamond: Minkowski plane waves f, diamond modes g with
// interior or exterior support, their positive-frequency continuations h,
// and the Bogoliubov coefficients that relate g to f.
//
// Frequencies are carried hatted: omega_hat = omega * alpha, k_hat = k * alpha.

#include <complex>
#include <optional>
#include <string_view>

#include "diamond/geometry.hpp"

namespace diamond::modes {

using cplx = std::complex<double>;

enum class Sigma { Plus, Minus };  // Plus: left-mover in V; Minus: right-mover in U
enum class Family { MinkowskiF, DiamondG_int, DiamondG_ext, UnruhH_int, UnruhH_ext };
enum class Support { Int, Ext };
enum class CoefKind { Alpha, Beta };

std::string_view to_string(Family f) noexcept;
std::string_view to_string(Support s) noexcept;
std::string_view to_string(CoefKind k) noexcept;

struct ModeSpec {
  Sigma sigma = Sigma::Plus;
  double freq_hat = 1.0;  // k_hat for MinkowskiF, omega_hat otherwise
  Family family = Family::DiamondG_int;
  geometry::DiamondChart chart = geometry::DiamondChart::make(1.0);

  double freq() const noexcept { return freq_hat / chart.alpha(); }
};

struct SqueezingParameter {
  double r = 0.0;
  std::optional<double> omega_hat;

  static SqueezingParameter from_r(double r);
};

/// r = atanh(exp(-pi omega_hat / 2)).
SqueezingParameter squeezing_from_frequency(double omega_hat);
SqueezingParameter squeezing_from_frequency(const geometry::DiamondChart& chart, double omega);

/// n = sinh^2 r, the Bose-Einstein occupation at the diamond temperature.
double thermal_occupation(const SqueezingParameter& s);
double thermal_occupation(const geometry::DiamondChart& chart, double omega);

struct EvalOptions {
  bool strict = false;  // raise OutOfSupport instead of returning 0
};

/// Mode value at the event p (any frame; converted to diamond Minkowski
/// coordinates). The argument is V for Sigma::Plus and U for Sigma::Minus.
cplx eval_mode(const ModeSpec& m, const geometry::EventCoords& p, const EvalOptions& opt = {});
/// Same, taking the null coordinate directly (in length units).
cplx eval_mode_at(const ModeSpec& m, double null_coord, const EvalOptions& opt = {});

struct BogoliubovPair {
  cplx alpha_coef;
  cplx beta_coef;
  double omega_hat = 0.0;
  double k_hat = 0.0;
  Support region = Support::Int;
};

/// Interior coefficients from the Kummer closed form
///   (alpha/2) sqrt(w k) / sinh(pi w / 2) e^{-+ i k} M(1 - i w/2, 2, +-2 i k).
/// Identical for both propagation directions.
cplx bogoliubov_closed_form(const geometry::DiamondChart& chart, double omega_hat, double k_hat, CoefKind kind,
                            Sigma sigma = Sigma::Plus);

struct BogoliubovQuadratureOptions {
  double rel_tol = 1e-10;
};

/// sqrt(4 pi k) / (2 pi) times the Fourier integral of g over its support,
/// evaluated numerically. Covers both supports; the exterior integral is
/// only conditionally convergent and is taken along rotated contours.
cplx bogoliubov_quadrature(const geometry::DiamondChart& chart, double omega_hat, double k_hat, CoefKind kind,
                           Support region, Sigma sigma = Sigma::Plus, const BogoliubovQuadratureOptions& opt = {});

BogoliubovPair bogoliubov_pair_closed_form(const geometry::DiamondChart& chart, double omega_hat, double k_hat);
BogoliubovPair bogoliubov_pair_quadrature(const geometry::DiamondChart& chart, double omega_hat, double k_hat,
                                          Support region, const BogoliubovQuadratureOptions& opt = {});

}  // namespace diamond::modes
