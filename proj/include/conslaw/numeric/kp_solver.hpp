#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "conslaw/error.hpp"

namespace conslaw::numeric {

/// Doubly periodic grid on [0, lx) x [0, ly), stored row-major with x fastest.
class Grid {
 public:
  /// nx, ny must be powers of two and at least 16.
  Grid(int nx, int ny, double lx, double ly);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double dx() const { return lx_ / nx_; }
  double dy() const { return ly_ / ny_; }
  double x(int i) const { return i * dx(); }
  double y(int j) const { return j * dy(); }

  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  /// Number of half-spectrum coefficients, ny * (nx/2 + 1).
  std::size_t spectral_size() const { return static_cast<std::size_t>(ny_) * (nx_ / 2 + 1); }
  int half_nx() const { return nx_ / 2 + 1; }

  /// Wavenumber of half-spectrum column i (0..nx/2) and row j (FFT order).
  double kx(int i) const { return 2 * M_PI * i / lx_; }
  double ky(int j) const { return 2 * M_PI * mode_y(j) / ly_; }
  /// Signed integer mode of row j.
  int mode_y(int j) const { return j <= ny_ / 2 ? j : j - ny_; }

 private:
  int nx_, ny_;
  double lx_, ly_;
};

using Spectrum = std::vector<std::complex<double>>;

/// Forward/backward real FFT pair on a grid. Owns the FFTW plans.
class Fft {
 public:
  explicit Fft(const Grid& grid);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  Spectrum forward(const std::vector<double>& real) const;
  /// Normalized inverse, so backward(forward(u)) == u.
  std::vector<double> backward(const Spectrum& spec) const;

 private:
  Grid grid_;
  void* forward_plan_;
  void* backward_plan_;
  double* real_buf_;
  void* spec_buf_;
};

/// u on the grid at one instant. w is never stored; it is rebuilt from
/// w_x = u_y in the zero-x-mean gauge.
struct Field {
  double time = 0;
  std::vector<double> u;
};

enum class Integrator { Etdrk4, Ifrk4 };

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  /// Fraction of each half-spectrum kept in the nonlinear term (2/3 rule).
  double dealias = 2.0 / 3.0;
  Integrator integrator = Integrator::Etdrk4;
  bool nonlinear = true;
  /// Store a snapshot every this many steps (the final state is always kept).
  int snapshot_every = 10;

  /// Throws Error unless dt > 0 and t_end >= dt.
  void validate() const;
};

struct Trajectory {
  Grid grid;
  std::vector<Field> snapshots;
};

/// Non-finite values appeared during stepping.
class BlowUp : public Error {
 public:
  explicit BlowUp(double last_good_time)
      : Error("solution blew up after t = " + std::to_string(last_good_time)),
        last_good_time_(last_good_time) {}
  double last_good_time() const { return last_good_time_; }

 private:
  double last_good_time_;
};

/// Integrates u_t = u u_x + u_xxx + w_y with w_x = u_y, periodic in x and y.
/// The linear part is treated exactly by an exponential integrator; the
/// nonlinear term is dealiased. The k_x = 0 modes (and Nyquist modes) are held
/// at zero. Throws Error if `initial` does not have zero mean along x.
Trajectory solve_kp(const Grid& grid, const SolverConfig& config, const Field& initial);

/// Removes the x-mean of every y-line (and the Nyquist modes).
void project_zero_x_mean(const Grid& grid, std::vector<double>& u);

/// Largest |x-mean| over all y-lines.
double max_x_mean(const Grid& grid, const std::vector<double>& u);

/// Smooth zero-x-mean random field built from modes 1..max_mode in x and
/// -max_mode..max_mode in y, scaled to root-mean-square `amplitude`. The field
/// does not depend on the grid resolution.
Field random_initial_field(const Grid& grid, std::uint64_t seed, double amplitude = 0.2,
                           int max_mode = 4);

/// Spectral derivative d_x^bx d_y^by of u (dep 0) or w (dep 1).
std::vector<double> spatial_derivative(const Grid& grid, const Field& field, int dep, int bx, int by);

/// Linear symbol at mode (i, j): u_xxx + d_x^{-1} u_yy, zero on k_x = 0.
std::complex<double> linear_symbol(const Grid& grid, int i, int j);

}  // namespace conslaw::numeric
