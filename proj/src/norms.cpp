#include "hausdorff/norms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "hausdorff/errors.hpp"
#include "hausdorff/parallel.hpp"

namespace hausdorff {
namespace {

std::vector<double> cuts_in(const ScalarField& f, double lo, double hi) {
  std::vector<double> out;
  auto add = [&](double r) {
    if (r > lo && r < hi) out.push_back(r);
  };
  for (double r : f.breakpoints) add(r);
  for (double r : f.radial_nodes) add(r);
  add(f.support_lo);
  add(f.support_hi);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double shell_volume(int n, double lo, double hi) {
  return ball_volume(n) * (std::pow(hi, n) - std::pow(lo, n));
}

ScalarField truncated(const ScalarField& f, const RadialGrid& grid) {
  const double lo = grid.r_lo(), hi = grid.r_hi();
  if (f.support_lo >= lo && f.support_hi <= hi) return f;
  ScalarField out = f;
  auto fn = f.fn;
  out.fn = [fn, lo, hi](const Point& x) {
    const double r = x.norm();
    return (r >= lo && r < hi) ? fn(x) : 0.0;
  };
  out.support_lo = std::max(f.support_lo, lo);
  out.support_hi = std::min(f.support_hi, hi);
  return out;
}

std::vector<Point> battery_directions(int n) {
  std::vector<Point> dirs;
  for (int a = 0; a < n; ++a) {
    for (double s : {1.0, -1.0}) {
      Point p(n);
      p.c[a] = s;
      dirs.push_back(p);
    }
  }
  if (n == 2) {
    const double d = std::numbers::sqrt2 / 2.0;
    for (double sx : {1.0, -1.0})
      for (double sy : {1.0, -1.0}) dirs.emplace_back(2, std::initializer_list<double>{sx * d, sy * d});
  }
  return dirs;
}

}  // namespace

double annulus_integral(const ScalarField& f, int n, double r_lo, double r_hi,
                        const std::function<double(double)>& transform, double tol) {
  if (!(r_hi > r_lo)) return 0.0;
  const double lo = std::max(r_lo, std::min(f.support_lo, r_hi));
  const double hi = std::min(r_hi, std::max(f.support_hi, r_lo));
  double outside = 0.0;
  const double t0 = transform(0.0);
  if (t0 != 0.0) outside = t0 * (shell_volume(n, r_lo, r_hi) - shell_volume(n, lo, hi));
  if (!(hi > lo)) return outside;

  const std::vector<double> cuts = cuts_in(f, lo, hi);
  if (f.radial || n == 1) {
    auto g = [&](double r) {
      Point x(n);
      x.c[0] = r;
      if (f.radial) {
        const double v = transform(f(x));
        return n == 1 ? 2.0 * v : sphere_area(n) * v * std::pow(r, n - 1);
      }
      Point y(1);
      y.c[0] = -r;
      return transform(f(x)) + transform(f(y));
    };
    RadialOptions opts;
    opts.tol = tol;
    opts.breakpoints = cuts;
    return outside + integrate_radial(g, lo, hi, opts).value;
  }
  AnnulusOptions opts;
  opts.tol = tol;
  opts.breakpoints = cuts;
  if (f.angular_nodes > 0 && n == 2) {
    opts.angular_order = f.angular_nodes;
    opts.adaptive_angular = false;
  }
  auto g = [&](const Point& x) { return transform(f(x)); };
  return outside + integrate_annulus(g, n, lo, hi, opts).value;
}

double lp_norm(const ScalarField& f, double p, const RadialGrid& grid, double tol) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidInput("L^p norm requires 1 <= p < inf");
  grid.validate();
  const double integral = annulus_integral(
      f, grid.n, grid.r_lo(), grid.r_hi(), [p](double v) { return std::pow(std::abs(v), p); }, tol);
  return std::pow(integral, 1.0 / p);
}

double shell_lq_norm(const ScalarField& f, double q, int k, int n, double tol) {
  if (!(q > 0.0) || !std::isfinite(q)) throw InvalidInput("shell norm requires 0 < q < inf");
  const DyadicShell shell{k};
  const double integral =
      annulus_integral(f, n, shell.inner_radius(), shell.outer_radius(),
                       [q](double v) { return std::pow(std::abs(v), q); }, tol);
  return std::pow(integral, 1.0 / q);
}

std::vector<Cube> morrey_battery(const RadialGrid& grid, double step) {
  grid.validate();
  if (!(step > 0.0)) throw InvalidInput("ladder step must be positive");
  const std::vector<Point> dirs = battery_directions(grid.n);
  std::vector<Point> centers{Point(grid.n)};
  for (int j = grid.k_min - 1; j <= grid.k_max; ++j) {
    for (const Point& d : dirs) centers.push_back(d.scaled(std::ldexp(1.0, j)));
  }
  const std::vector<double> sides = geometric_ladder(grid.k_min - 1, grid.k_max + 1, step);
  std::vector<Cube> out;
  out.reserve(centers.size() * sides.size());
  for (const Point& c : centers) {
    for (double s : sides) out.push_back(Cube{c, s});
  }
  return out;
}

double morrey_norm(const ScalarField& f, double p, double lambda, std::span<const Cube> battery,
                   const RadialGrid& grid, const CubeRule& rule) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidInput("Morrey norm requires 1 <= p < inf");
  if (!(lambda > 0.0 && lambda < grid.n)) {
    throw DomainRestriction("Morrey norm is defined here for 0 < lambda < n");
  }
  if (battery.empty()) throw InvalidInput("cube battery must not be empty");
  const ScalarField g = truncated(f, grid);
  auto power = [p](double v) { return std::pow(std::abs(v), p); };
  double best = 0.0;
  for (const Cube& q : battery) {
    const double integral = cube_integral(g, q, rule, power);
    best = std::max(best, std::pow(std::pow(q.side, -lambda) * integral, 1.0 / p));
  }
  return best;
}

double herz_norm(const ScalarField& f, double alpha, double p, double q, int k_min, int k_max,
                 int n, double tol) {
  if (k_max < k_min) throw InvalidInput("shell range is empty");
  if (!(p > 0.0) || !std::isfinite(p)) throw InvalidInput("Herz norm requires 0 < p < inf");
  double total = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    total += std::exp2(k * alpha * p) * std::pow(shell_lq_norm(f, q, k, n, tol), p);
  }
  return std::pow(total, 1.0 / p);
}

double herz_morrey_norm(const ScalarField& f, double alpha, double lambda, double p, double q,
                        int k_min, int k_max, int n, double tol) {
  if (!(lambda >= 0.0)) throw DomainRestriction("Herz-Morrey norm requires lambda >= 0");
  if (k_max < k_min) throw InvalidInput("shell range is empty");
  if (!(p > 0.0) || !std::isfinite(p)) throw InvalidInput("Herz-Morrey norm requires 0 < p < inf");
  std::vector<double> terms;
  for (int k = k_min; k <= k_max; ++k) {
    const double shell = shell_lq_norm(f, q, k, n, tol);
    terms.push_back(std::exp2(k * alpha * p) * std::pow(shell, p));
  }
  double prefix = 0.0, best = 0.0;
  for (int k0 = k_min; k0 <= k_max; ++k0) {
    prefix += terms[k0 - k_min];
    best = std::max(best, std::exp2(-k0 * lambda) * std::pow(prefix, 1.0 / p));
  }
  return best;
}

std::vector<double> cmo_radius_ladder(const RadialGrid& grid, double step) {
  grid.validate();
  return geometric_ladder(grid.k_min, grid.k_max, step);
}

double cmo_norm(const ScalarField& b, double q, std::span<const double> radii, int n, double tol) {
  if (!(q > 1.0) || !std::isfinite(q)) throw DomainRestriction("CMO norm requires 1 < q < inf");
  if (radii.empty()) throw InvalidInput("radius ladder must not be empty");
  double best = 0.0;
  for (double r : radii) {
    const double vol = ball_volume(n) * std::pow(r, n);
    const double mean = annulus_integral(b, n, 0.0, r, [](double v) { return v; }, tol) / vol;
    const double osc = annulus_integral(
        b, n, 0.0, r, [mean, q](double v) { return std::pow(std::abs(v - mean), q); }, tol);
    best = std::max(best, std::pow(osc / vol, 1.0 / q));
  }
  return best;
}

std::vector<std::pair<Point, Point>> lipschitz_battery(const RadialGrid& grid, std::uint64_t seed,
                                                       int random_pairs) {
  grid.validate();
  const int n = grid.n;
  const std::vector<Point> dirs = battery_directions(n);
  std::vector<Point> xs{Point(n)};
  for (int j = grid.k_min - 1; j <= grid.k_max; ++j) {
    for (const Point& d : dirs) xs.push_back(d.scaled(std::ldexp(1.0, j)));
  }
  std::vector<std::pair<Point, Point>> out;
  for (const Point& x : xs) {
    for (int i = grid.k_min - 1; i <= grid.k_max + 1; ++i) {
      for (const Point& d : dirs) out.emplace_back(x, d.scaled(std::ldexp(1.0, i)));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> expo(grid.k_min - 1.0, grid.k_max);
  std::normal_distribution<double> gauss;
  auto random_point = [&] {
    Point d(n);
    double len = 0.0;
    while (len == 0.0) {
      for (int i = 0; i < n; ++i) d.c[i] = gauss(rng);
      len = d.norm();
    }
    return d.scaled(std::exp2(expo(rng)) / len);
  };
  for (int i = 0; i < random_pairs; ++i) {
    const Point x = random_point();
    const Point h = random_point();
    out.emplace_back(x, h);
  }
  return out;
}

double lipschitz_norm(const ScalarField& b, double beta,
                      std::span<const std::pair<Point, Point>> battery) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainRestriction("Lipschitz norm requires 0 < beta < 1");
  if (battery.empty()) throw InvalidInput("point-pair battery must not be empty");
  double best = 0.0;
  for (const auto& [x, h] : battery) {
    const double len = h.norm();
    if (len == 0.0) continue;
    best = std::max(best, std::abs(b(x + h) - b(x)) / std::pow(len, beta));
  }
  return best;
}

double triebel_lizorkin_norm(const ScalarField& f, double beta, double p, const RadialGrid& grid,
                             std::span<const double> scales, const CubeRule& rule, int threads) {
  if (!(beta > 0.0 && beta < 1.0) || !(p > 1.0) || !std::isfinite(p)) {
    throw DomainRestriction("oscillation norm requires 0 < beta < 1 < p < inf");
  }
  if (scales.empty()) throw InvalidInput("cube scale ladder must not be empty");
  const int n = grid.n;
  const std::vector<double> radii = grid.radial_nodes();
  const std::vector<Point> dirs = grid.directions();
  const double cell = std::numbers::ln2 / grid.radial_points_per_shell;
  const double dir_weight = sphere_area(n) / static_cast<double>(dirs.size());
  std::vector<double> terms(radii.size() * dirs.size());
  parallel_for(terms.size(), threads, [&](std::size_t idx) {
    const double r = radii[idx / dirs.size()];
    const Point x = dirs[idx % dirs.size()].scaled(r);
    const std::vector<Cube> family = cube_family(x, scales);
    const double s = sharp_oscillation(f, beta, x, family, rule);
    terms[idx] = dir_weight * std::pow(r, n) * cell * std::pow(s, p);
  });
  double total = 0.0;
  for (double t : terms) total += t;
  return std::pow(total, 1.0 / p);
}

ScalarField tabulate_field(const std::string& name, const std::function<double(const Point&)>& fn,
                           const RadialGrid& grid, int threads) {
  grid.validate();
  const int n = grid.n;
  const double lo = grid.r_lo(), hi = grid.r_hi();
  ScalarField out;
  out.name = name;
  out.support_lo = lo;
  out.support_hi = hi;
  if (n == 3) {
    out.fn = [fn, lo, hi](const Point& x) {
      const double r = x.norm();
      return (r >= lo && r < hi) ? fn(x) : 0.0;
    };
    return out;
  }
  const std::vector<double> radii = grid.radial_nodes();
  const std::vector<Point> dirs = grid.directions();
  const std::size_t nr = radii.size(), nd = dirs.size();
  auto values = std::make_shared<std::vector<double>>(nr * nd);
  parallel_for(nr * nd, threads, [&](std::size_t idx) {
    (*values)[idx] = fn(dirs[idx / nr].scaled(radii[idx % nr]));
  });
  const int pts = grid.radial_points_per_shell;
  const double base = grid.k_min - 1;
  auto radial_pos = [nr, pts, base](double r, std::size_t& i0, double& a) {
    const double t = (std::log2(r) - base) * pts - 0.5;
    const double last = nr >= 2 ? static_cast<double>(nr - 2) : 0.0;
    i0 = static_cast<std::size_t>(std::clamp(std::floor(t), 0.0, last));
    a = nr >= 2 ? t - static_cast<double>(i0) : 0.0;
  };
  if (n == 1) {
    out.fn = [values, nr, lo, hi, radial_pos](const Point& x) {
      const double r = std::abs(x.c[0]);
      if (!(r >= lo && r < hi)) return 0.0;
      std::size_t i0;
      double a;
      radial_pos(r, i0, a);
      const double* row = values->data() + (x.c[0] >= 0.0 ? 0 : nr);
      return a == 0.0 ? row[i0] : (1.0 - a) * row[i0] + a * row[i0 + 1];
    };
  } else {
    out.angular_nodes = static_cast<int>(nd);
    out.fn = [values, nr, nd, lo, hi, radial_pos](const Point& x) {
      const double r = x.norm();
      if (!(r >= lo && r < hi)) return 0.0;
      std::size_t i0;
      double a;
      radial_pos(r, i0, a);
      double s = std::atan2(x.c[1], x.c[0]) / (2.0 * std::numbers::pi) * static_cast<double>(nd) - 0.5;
      const double fl = std::floor(s);
      const double b = s - fl;
      const auto m = static_cast<long>(nd);
      const long j0 = ((static_cast<long>(fl) % m) + m) % m;
      const long j1 = (j0 + 1) % m;
      auto at = [&](long j, std::size_t i) { return (*values)[static_cast<std::size_t>(j) * nr + i]; };
      auto radial = [&](long j) {
        return a == 0.0 ? at(j, i0) : (1.0 - a) * at(j, i0) + a * at(j, i0 + 1);
      };
      return b == 0.0 ? radial(j0) : (1.0 - b) * radial(j0) + b * radial(j1);
    };
  }
  out.radial_nodes = radii;
  return out;
}

NormKind parse_norm_kind(const std::string& text) {
  if (text == "lp") return NormKind::Lp;
  if (text == "morrey") return NormKind::Morrey;
  if (text == "herz") return NormKind::Herz;
  if (text == "herz-morrey") return NormKind::HerzMorrey;
  if (text == "cmo") return NormKind::Cmo;
  if (text == "lipschitz") return NormKind::Lipschitz;
  if (text == "triebel-lizorkin") return NormKind::TriebelLizorkin;
  throw InvalidInput("unknown norm: " + text);
}

std::string norm_kind_label(NormKind kind) {
  switch (kind) {
    case NormKind::Lp: return "lp";
    case NormKind::Morrey: return "morrey";
    case NormKind::Herz: return "herz";
    case NormKind::HerzMorrey: return "herz-morrey";
    case NormKind::Cmo: return "cmo";
    case NormKind::Lipschitz: return "lipschitz";
    case NormKind::TriebelLizorkin: return "triebel-lizorkin";
  }
  return "?";
}

double evaluate_norm(const ScalarField& f, const NormParams& P) {
  const RadialGrid& g = P.grid;
  g.validate();
  switch (P.which) {
    case NormKind::Lp:
      return lp_norm(f, P.p, g, P.tol);
    case NormKind::Morrey: {
      const auto battery = morrey_battery(g, P.ladder_step);
      return morrey_norm(f, P.p, P.lambda, battery, g, P.rule);
    }
    case NormKind::Herz:
      return herz_norm(f, P.alpha, P.p, P.q, g.k_min, g.k_max, g.n, P.tol);
    case NormKind::HerzMorrey:
      return herz_morrey_norm(f, P.alpha, P.lambda, P.p, P.q, g.k_min, g.k_max, g.n, P.tol);
    case NormKind::Cmo: {
      const auto radii = cmo_radius_ladder(g, P.ladder_step);
      return cmo_norm(f, P.q, radii, g.n, P.tol);
    }
    case NormKind::Lipschitz: {
      const auto battery = lipschitz_battery(g, P.seed);
      return lipschitz_norm(f, P.beta, battery);
    }
    case NormKind::TriebelLizorkin: {
      const auto scales = geometric_ladder(g.k_min - 1, g.k_max + 1, P.ladder_step);
      return triebel_lizorkin_norm(f, P.beta, P.p, g, scales, P.rule, P.threads);
    }
  }
  throw InvalidInput("unknown norm");
}

}  // namespace hausdorff
