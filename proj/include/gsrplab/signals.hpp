#pragma once

#include <functional>

#include "gsrplab/gsrp.hpp"

namespace gsrplab {

/// Uniform time grid covering [t_min, t_max] with step period/samples_per_period.
/// The step must divide the span evenly; the grid includes both endpoints.
struct GridSpec {
    double t_min = 0;
    double t_max = 0;
    int samples_per_period = 0;
    double period = 1.0;

    double dt() const { return period / samples_per_period; }
    int points() const;
    double time_at(int i) const { return t_min + i * dt(); }
    /// Grid index of t = 0 (nearest grid point).
    int index_of_zero() const;
    GridInnerProduct ip() const { return GridInnerProduct{dt()}; }

    void validate() const;  // throws GridTooNarrow on malformed specs
};

/// Unit-energy Gaussian x(t) = (2 pi sigma)^(-1/4) exp(-t^2 / (4 sigma)),
/// sampled on the grid; the energy density x^2 is the N(0, sigma) bell.
/// Rejects grids whose truncated tail carries >= 1e-8 of the energy.
Vector gaussian_signal(double sigma, const GridSpec& grid);

/// Centered B-spline of order 0..3 at scale `period`, sampled on the grid.
/// Order 0 is the unit-height box on [-T/2, T/2); higher orders are the
/// classic piecewise polynomials, so the integral is T for every order.
Vector bspline(int order, const GridSpec& grid);

enum class Window { rectangular, hann };

/// Zero-phase windowed-sinc low-pass generator with cutoff in rad/s,
/// truncated to |t| <= half_support * period and normalized to unit DC gain.
Vector lowpass_generator(double cutoff, int half_support, Window window,
                         const GridSpec& grid);

/// Frame whose columns are the generator shifted by integer multiples of
/// shift_step (default: one period). Shifts are truncated at the grid edges;
/// columns that vanish entirely are dropped.
Frame shift_invariant_frame(const Vector& generator, const GridSpec& grid,
                            double shift_step = -1.0);

using Spectrum = std::function<double(double)>;

/// cos(A,S) from the generators' continuous-time spectra:
/// cos^2 = inf over omega in [0, 2pi) of
///   |sum_n s^(w_n) a^(w_n)|^2 / (sum_n s^(w_n)^2 * sum_n a^(w_n)^2),
/// with w_n = (omega + 2 pi n) / period and the alias sum truncated at
/// |n| <= n_alias. Grid points with a vanishing denominator are skipped and
/// counted in *skipped when provided.
double shift_invariant_angle_cos(const Spectrum& s_hat, const Spectrum& a_hat,
                                 double period, int omega_points = 8192,
                                 int n_alias = 32, int* skipped = nullptr);

/// Spectrum of the order-k B-spline at scale T: (T sinc(w T / 2))^(k+1) / T^k.
Spectrum bspline_spectrum(int order, double period);

/// Indicator spectrum of the ideal low-pass prior: 1 for |w| <= cutoff.
Spectrum ideal_lowpass_spectrum(double cutoff);

/// Fraction of the signal's spectral energy at |omega| <= omega_c (rad/s),
/// computed from a zero-padded DFT.
double energy_fraction_below(const Vector& x, double omega_c, const GridSpec& grid);

} // namespace gsrplab
