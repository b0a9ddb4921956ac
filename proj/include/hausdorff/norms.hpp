#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hausdorff/catalog.hpp"
#include "hausdorff/domain.hpp"
#include "hausdorff/maximal.hpp"
#include "hausdorff/quadrature.hpp"

namespace hausdorff {

/// Integral of h(f(x)) over {r_lo <= |x| <= r_hi}. Radial fields reduce to
/// one radial integral; tabulated fields use their own angular nodes.
double annulus_integral(const ScalarField& f, int n, double r_lo, double r_hi,
                        const std::function<double(double)>& transform, double tol = kDefaultTol);

/// L^p norm over the grid's truncated domain {2^{k_min-1} <= |x| < 2^{k_max}}.
double lp_norm(const ScalarField& f, double p, const RadialGrid& grid, double tol = kDefaultTol);

/// ||f||_{L^q(C_k)}.
double shell_lq_norm(const ScalarField& f, double q, int k, int n, double tol = kDefaultTol);

/// Cubes Q(x0, s) for x0 = 0 and x0 = 2^j d (d along the axes and, for
/// n = 2, the diagonals), with j and log2 s running over the grid's shell
/// range extended by one on each side.
std::vector<Cube> morrey_battery(const RadialGrid& grid, double step = 1.0);

/// max over the battery of (s^{-lambda} int_Q |f|^p)^{1/p}, f truncated to the
/// grid domain. Throws DomainRestriction unless 0 < lambda < n.
double morrey_norm(const ScalarField& f, double p, double lambda, std::span<const Cube> battery,
                   const RadialGrid& grid, const CubeRule& rule = {});

/// (sum_{k=k_min}^{k_max} 2^{k alpha p} ||f||_{L^q(C_k)}^p)^{1/p}.
double herz_norm(const ScalarField& f, double alpha, double p, double q, int k_min, int k_max,
                 int n, double tol = kDefaultTol);

/// max over k0 in [k_min, k_max] of 2^{-k0 lambda} times the Herz sum cut at k0.
double herz_morrey_norm(const ScalarField& f, double alpha, double lambda, double p, double q,
                        int k_min, int k_max, int n, double tol = kDefaultTol);

/// Radii 2^{j step} spanning the grid's shells.
std::vector<double> cmo_radius_ladder(const RadialGrid& grid, double step = 1.0);

/// max over the ladder of the mean q-oscillation on B(0, r). Throws
/// DomainRestriction for q <= 1.
double cmo_norm(const ScalarField& b, double q, std::span<const double> radii, int n,
                double tol = kDefaultTol);

/// (x, h) pairs for difference quotients: the origin and grid points along
/// the grid directions, each paired with a dyadic h-ladder along the same
/// directions, plus seeded random pairs.
std::vector<std::pair<Point, Point>> lipschitz_battery(const RadialGrid& grid, std::uint64_t seed,
                                                       int random_pairs = 2000);

/// max over the battery of |b(x+h) - b(x)| / |h|^beta. Throws
/// DomainRestriction unless 0 < beta < 1.
double lipschitz_norm(const ScalarField& b, double beta,
                      std::span<const std::pair<Point, Point>> battery);

/// Oscillation form of the homogeneous Triebel-Lizorkin norm: the L^p norm,
/// sampled at the grid nodes, of x -> sharp_oscillation(f, beta, x,
/// cube_family(x, scales)).
double triebel_lizorkin_norm(const ScalarField& f, double beta, double p, const RadialGrid& grid,
                             std::span<const double> scales, const CubeRule& rule = {},
                             int threads = 1);

/// Tabulates fn on the grid nodes (both rays for n = 1, the grid
/// directions for n = 2) and interpolates linearly in log|x| and angle; zero
/// outside the grid domain. For n = 3 fn is wrapped untabulated.
ScalarField tabulate_field(const std::string& name, const std::function<double(const Point&)>& fn,
                           const RadialGrid& grid, int threads = 1);

enum class NormKind { Lp, Morrey, Herz, HerzMorrey, Cmo, Lipschitz, TriebelLizorkin };

NormKind parse_norm_kind(const std::string& text);
std::string norm_kind_label(NormKind kind);

struct NormParams {
  NormKind which = NormKind::Lp;
  double p = 2.0;
  double q = 2.0;
  double alpha = 0.0;
  double lambda = 0.0;
  double beta = 0.5;
  RadialGrid grid;
  /// Exponent step of the cube, radius and scale ladders.
  double ladder_step = 1.0;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  CubeRule rule;
  int threads = 1;
};

double evaluate_norm(const ScalarField& f, const NormParams& params);

}  // namespace hausdorff
