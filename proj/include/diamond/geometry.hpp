#pragma once

// Conformal diamond <-> Rindler wedge geometry.
//
// Three coordinate systems are in play:
//   * (t, x)   Minkowski coordinates of diamond spacetime; the diamond is
//              |t| + |x| < alpha.
//   * (t~, x~) Minkowski coordinates of Rindler spacetime.
//   * (eta, xi) diamond coordinates: Rindler coordinates pulled back
//              through the composite map T(-alpha) o K(1/(2 alpha)) o Lambda(lambda).
//
// The dilatation lambda only enters through alpha~ = 2 alpha / lambda. With
// the scaling constraints kappa = 4/lambda and a = 2/alpha the final
// (t, x) <-> (eta, xi) map does not depend on lambda.

#include <optional>
#include <span>
#include <string_view>
#include <utility>

namespace diamond::geometry {

/// Distance from a singular set (in units of alpha) below which maps raise.
inline constexpr double kSingularTolerance = 1e-10;

/// Immutable parameter bundle of a constrained diamond chart.
class DiamondChart {
 public:
  /// Throws InvalidArgument unless alpha > 0 and lambda > 0.
  static DiamondChart make(double alpha, double lambda = 2.0);

  double alpha() const noexcept { return alpha_; }
  double lambda() const noexcept { return lambda_; }
  double alpha_tilde() const noexcept { return alpha_tilde_; }
  double kappa() const noexcept { return kappa_; }
  double accel() const noexcept { return accel_; }
  /// Diamond temperature 2/(pi T) with lifetime T = 2 alpha.
  double temperature() const noexcept { return temperature_; }
  double lifetime() const noexcept { return 2.0 * alpha_; }

 private:
  DiamondChart(double alpha, double lambda);

  double alpha_;
  double lambda_;
  double alpha_tilde_;
  double kappa_;
  double accel_;
  double temperature_;
};

enum class Frame { MinkowskiDiamond, MinkowskiRindler, DiamondCoords };

enum class Region { D, DBar, DBarBar_FutureImage, DBarBar_PastImage, Boundary };

enum class Wedge { R, L, F, P };

std::string_view to_string(Frame f) noexcept;
std::string_view to_string(Region r) noexcept;
std::string_view to_string(Wedge w) noexcept;

/// A spacetime event expressed in one of the three frames. `c1, c2` are
/// (t, x), (t~, x~) or (eta, xi) in length units. `region` and `epsilon`
/// are the patch bookkeeping for the diamond frames; epsilon = +1 labels
/// D and the future image, -1 labels DBar and the past image.
struct EventCoords {
  Frame frame = Frame::MinkowskiDiamond;
  double c1 = 0.0;
  double c2 = 0.0;
  Region region = Region::D;
  int epsilon = +1;

  static EventCoords minkowski_diamond(double t, double x);
  static EventCoords minkowski_rindler(double t_tilde, double x_tilde);
  static EventCoords diamond(double eta, double xi, Region region);

  /// Advanced null coordinate: V, V~ or v depending on the frame.
  double advanced() const noexcept;
  /// Retarded null coordinate: U, U~ or u depending on the frame.
  double retarded() const noexcept;
};

struct Classification {
  Region region = Region::Boundary;
  std::optional<Wedge> wedge;  // empty on Boundary
};

// Pointwise maps. All throw SingularPoint / OnHorizon inside the tolerance
// band around their singular sets.

EventCoords rindler_to_diamond(const DiamondChart& chart, const EventCoords& p);
EventCoords diamond_to_rindler(const DiamondChart& chart, const EventCoords& p);

/// (V, U) -> (V~, U~); valid in every wedge.
std::pair<double, double> lightcone_map(const DiamondChart& chart, double v, double u);
/// Inverse of lightcone_map.
std::pair<double, double> lightcone_unmap(const DiamondChart& chart, double v_tilde, double u_tilde);

/// (t, x) -> (eta, xi) together with the patch label. Routed through the
/// lambda-dependent Rindler image, so lambda-independence is a checked
/// property rather than a tautology.
EventCoords diamond_coords(const DiamondChart& chart, const EventCoords& p);
/// (eta, xi) on the patch named by p.region -> (t, x).
EventCoords diamond_coords_to_minkowski(const DiamondChart& chart, const EventCoords& p);

/// Uses light-cone coordinates only: |V|, |U| against alpha for the region
/// and the signs of (V~, U~) for the wedge.
Classification classify_region(const DiamondChart& chart, const EventCoords& p);

/// Omega = F+(t~/alpha~, x~/alpha~) = (1 - U~/alpha~)(1 + V~/alpha~).
double conformal_factor(const DiamondChart& chart, const EventCoords& p);

/// Rindler-chart (eta, xi) -> (t~, x~) on the patch of `region`.
std::pair<double, double> rindler_chart(const DiamondChart& chart, double eta, double xi, Region region);

// Batch forms over spans of coordinates. Points on a singular set produce
// NaN outputs instead of throwing. These run on the dispatched SIMD kernels.

void rindler_to_diamond(const DiamondChart& chart, std::span<const double> t_tilde,
                        std::span<const double> x_tilde, std::span<double> t, std::span<double> x);
void diamond_to_rindler(const DiamondChart& chart, std::span<const double> t, std::span<const double> x,
                        std::span<double> t_tilde, std::span<double> x_tilde);

}  // namespace diamond::geometry
