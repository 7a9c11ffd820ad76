#include "conslaw/numeric/kp_solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace conslaw::numeric {

namespace {

using cd = std::complex<double>;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Integer |mode| limit kept by the dealiasing mask.
int mask_limit(int n, double fraction) { return static_cast<int>(std::floor(fraction * n / 2)); }

}  // namespace

Grid::Grid(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (!power_of_two(nx) || !power_of_two(ny) || nx < 16 || ny < 16)
    throw Error("grid sizes must be powers of two and at least 16, got " + std::to_string(nx) +
                "x" + std::to_string(ny));
  if (!(lx > 0) || !(ly > 0)) throw Error("domain lengths must be positive");
}

Fft::Fft(const Grid& grid) : grid_(grid) {
  real_buf_ = fftw_alloc_real(grid.size());
  auto* spec = fftw_alloc_complex(grid.spectral_size());
  spec_buf_ = spec;
  // FFTW's row-major layout puts the last dimension (x) fastest.
  forward_plan_ = fftw_plan_dft_r2c_2d(grid.ny(), grid.nx(), real_buf_, spec, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_c2r_2d(grid.ny(), grid.nx(), spec, real_buf_, FFTW_ESTIMATE);
}

Fft::~Fft() {
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_free(real_buf_);
  fftw_free(spec_buf_);
}

Spectrum Fft::forward(const std::vector<double>& real) const {
  std::copy(real.begin(), real.end(), real_buf_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  auto* spec = static_cast<fftw_complex*>(spec_buf_);
  Spectrum out(grid_.spectral_size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {spec[k][0], spec[k][1]};
  return out;
}

std::vector<double> Fft::backward(const Spectrum& in) const {
  auto* spec = static_cast<fftw_complex*>(spec_buf_);
  for (std::size_t k = 0; k < in.size(); ++k) {
    spec[k][0] = in[k].real();
    spec[k][1] = in[k].imag();
  }
  fftw_execute(static_cast<fftw_plan>(backward_plan_));
  const double scale = 1.0 / static_cast<double>(grid_.size());
  std::vector<double> out(grid_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = real_buf_[k] * scale;
  return out;
}

void SolverConfig::validate() const {
  if (!(dt > 0)) throw Error("dt must be positive");
  if (!(t_end >= dt)) throw Error("t_end must be at least dt");
  if (!(dealias > 0 && dealias <= 1)) throw Error("dealias fraction must lie in (0, 1]");
  if (snapshot_every < 1) throw Error("snapshot_every must be at least 1");
}

cd linear_symbol(const Grid& g, int i, int j) {
  if (i == 0 || i == g.nx() / 2 || j == g.ny() / 2) return 0;
  const double kx = g.kx(i), ky = g.ky(j);
  // d_x^3 -> -i kx^3 ; d_x^{-1} d_y^2 -> (-ky^2)/(i kx) = i ky^2/kx
  return cd(0, ky * ky / kx - kx * kx * kx);
}

namespace {

// Zeroes k_x = 0 and the Nyquist row/column.
void project(const Grid& g, Spectrum& s) {
  const int hx = g.half_nx();
  for (int j = 0; j < g.ny(); ++j) {
    s[static_cast<std::size_t>(j) * hx] = 0;
    s[static_cast<std::size_t>(j) * hx + hx - 1] = 0;
  }
  for (int i = 0; i < hx; ++i) s[static_cast<std::size_t>(g.ny() / 2) * hx + i] = 0;
}

class Stepper {
 public:
  Stepper(const Grid& g, const SolverConfig& cfg) : g_(g), cfg_(cfg), fft_(g) {
    const std::size_t n = g.spectral_size();
    const int hx = g.half_nx();
    const int lim_x = mask_limit(g.nx(), cfg.dealias), lim_y = mask_limit(g.ny(), cfg.dealias);
    const double h = cfg.dt;
    e_.resize(n);
    e2_.resize(n);
    nl_.resize(n);
    q_.resize(n);
    f1_.resize(n);
    f2_.resize(n);
    f3_.resize(n);
    constexpr int kContour = 32;
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < hx; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * hx + i;
        const cd l = linear_symbol(g, i, j);
        e_[k] = std::exp(h * l);
        e2_[k] = std::exp(h * l / 2.0);
        const bool keep = i <= lim_x && std::abs(g.mode_y(j)) <= lim_y;
        nl_[k] = keep ? cd(0, 0.5 * g.kx(i)) : cd(0);
        // phi-function combinations by contour averaging around h*l.
        cd q = 0, a = 0, b = 0, c = 0;
        for (int m = 0; m < kContour; ++m) {
          const double theta = 2 * M_PI * (m + 0.5) / kContour;
          const cd z = h * l + std::polar(1.0, theta);
          const cd ez = std::exp(z), z3 = z * z * z;
          q += (std::exp(z / 2.0) - 1.0) / z;
          a += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
          b += (2.0 + z + ez * (z - 2.0)) / z3;
          c += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
        }
        q_[k] = h * q / double(kContour);
        f1_[k] = h * a / double(kContour);
        f2_[k] = h * b / double(kContour);
        f3_[k] = h * c / double(kContour);
      }
    }
  }

  Spectrum nonlinear(const Spectrum& v) const {
    Spectrum out(v.size(), 0);
    if (!cfg_.nonlinear) return out;
    auto u = fft_.backward(v);
    for (double& x : u) x *= x;
    out = fft_.forward(u);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] *= nl_[k];
    return out;
  }

  void step(Spectrum& v) const {
    const std::size_t n = v.size();
    if (cfg_.integrator == Integrator::Etdrk4) {
      const Spectrum nv = nonlinear(v);
      Spectrum a(n), b(n), c(n);
      for (std::size_t k = 0; k < n; ++k) a[k] = e2_[k] * v[k] + q_[k] * nv[k];
      const Spectrum na = nonlinear(a);
      for (std::size_t k = 0; k < n; ++k) b[k] = e2_[k] * v[k] + q_[k] * na[k];
      const Spectrum nb = nonlinear(b);
      for (std::size_t k = 0; k < n; ++k) c[k] = e2_[k] * a[k] + q_[k] * (2.0 * nb[k] - nv[k]);
      const Spectrum nc = nonlinear(c);
      for (std::size_t k = 0; k < n; ++k)
        v[k] = e_[k] * v[k] + nv[k] * f1_[k] + 2.0 * (na[k] + nb[k]) * f2_[k] + nc[k] * f3_[k];
    } else {
      const double h = cfg_.dt;
      const Spectrum k1 = nonlinear(v);
      Spectrum a(n), b(n), c(n);
      for (std::size_t k = 0; k < n; ++k) a[k] = e2_[k] * (v[k] + h / 2 * k1[k]);
      const Spectrum k2 = nonlinear(a);
      for (std::size_t k = 0; k < n; ++k) b[k] = e2_[k] * v[k] + h / 2 * k2[k];
      const Spectrum k3 = nonlinear(b);
      for (std::size_t k = 0; k < n; ++k) c[k] = e_[k] * v[k] + h * e2_[k] * k3[k];
      const Spectrum k4 = nonlinear(c);
      for (std::size_t k = 0; k < n; ++k)
        v[k] = e_[k] * v[k] +
               h / 6 * (e_[k] * k1[k] + 2.0 * e2_[k] * (k2[k] + k3[k]) + k4[k]);
    }
    project(g_, v);
  }

  const Fft& fft() const { return fft_; }

 private:
  const Grid& g_;
  const SolverConfig& cfg_;
  Fft fft_;
  Spectrum e_, e2_, nl_, q_, f1_, f2_, f3_;
};

bool all_finite(const std::vector<double>& u) {
  return std::all_of(u.begin(), u.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

double max_x_mean(const Grid& g, const std::vector<double>& u) {
  double worst = 0;
  for (int j = 0; j < g.ny(); ++j) {
    double s = 0;
    for (int i = 0; i < g.nx(); ++i) s += u[static_cast<std::size_t>(j) * g.nx() + i];
    worst = std::max(worst, std::abs(s / g.nx()));
  }
  return worst;
}

void project_zero_x_mean(const Grid& g, std::vector<double>& u) {
  Fft fft(g);
  auto s = fft.forward(u);
  project(g, s);
  u = fft.backward(s);
}

Trajectory solve_kp(const Grid& grid, const SolverConfig& config, const Field& initial) {
  config.validate();
  if (initial.u.size() != grid.size()) throw Error("initial field does not match the grid");
  double scale = 1;
  for (double x : initial.u) scale = std::max(scale, std::abs(x));
  if (max_x_mean(grid, initial.u) > 1e-12 * scale * grid.nx())
    throw Error("initial field must have zero mean along x for every y");

  Stepper stepper(grid, config);
  Spectrum v = stepper.fft().forward(initial.u);
  project(grid, v);

  Trajectory traj{grid, {}};
  traj.snapshots.push_back({initial.time, stepper.fft().backward(v)});
  const long steps = std::lround(config.t_end / config.dt);
  double last_good = initial.time;
  for (long n = 1; n <= steps; ++n) {
    stepper.step(v);
    const double t = initial.time + n * config.dt;
    const bool store = n % config.snapshot_every == 0 || n == steps;
    if (store) {
      auto u = stepper.fft().backward(v);
      if (!all_finite(u)) throw BlowUp(last_good);
      last_good = t;
      traj.snapshots.push_back({t, std::move(u)});
    } else if (!std::all_of(v.begin(), v.end(), [](const cd& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); })) {
      throw BlowUp(last_good);
    }
  }
  return traj;
}

Field random_initial_field(const Grid& g, std::uint64_t seed, double amplitude, int max_mode) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> phase(0, 2 * M_PI);
  Field f;
  f.u.assign(g.size(), 0);
  double power = 0;
  for (int mx = 1; mx <= max_mode; ++mx) {
    for (int my = -max_mode; my <= max_mode; ++my) {
      const double a = normal(rng) * std::exp(-(mx * mx + my * my) / 8.0);
      const double ph = phase(rng);
      power += a * a / 2;
      const double kx = 2 * M_PI * mx / g.lx(), ky = 2 * M_PI * my / g.ly();
      for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
          f.u[static_cast<std::size_t>(j) * g.nx() + i] += a * std::cos(kx * g.x(i) + ky * g.y(j) + ph);
    }
  }
  if (power > 0)
    for (double& x : f.u) x *= amplitude / std::sqrt(power);
  return f;
}

std::vector<double> spatial_derivative(const Grid& g, const Field& field, int dep, int bx, int by) {
  if (dep != 0 && dep != 1) throw Error("only u and w are available on the grid");
  Fft fft(g);
  auto s = fft.forward(field.u);
  project(g, s);
  const int hx = g.half_nx();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < hx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * hx + i;
      const double kx = g.kx(i), ky = g.ky(j);
      cd m = std::pow(cd(0, kx), bx) * std::pow(cd(0, ky), by);
      if (dep == 1) m = i == 0 ? cd(0) : m * (ky / kx);
      s[k] *= m;
    }
  }
  return fft.backward(s);
}

}  // namespace conslaw::numeric
