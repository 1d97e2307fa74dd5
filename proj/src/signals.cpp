#include "gsrplab/signals.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace gsrplab {

namespace {

constexpr double kPi = std::numbers::pi;

long long round_to_index(double x) { return std::llround(x); }

} // namespace

int GridSpec::points() const {
    validate();
    return static_cast<int>(round_to_index((t_max - t_min) / dt())) + 1;
}

int GridSpec::index_of_zero() const {
    return static_cast<int>(round_to_index(-t_min / dt()));
}

void GridSpec::validate() const {
    if (!(period > 0.0) || samples_per_period < 8)
        throw GridTooNarrow("grid: need period > 0 and at least 8 samples per period");
    if (!(t_min < t_max)) throw GridTooNarrow("grid: t_min must be below t_max");
    const double steps = (t_max - t_min) / dt();
    if (std::abs(steps - std::llround(steps)) > 1e-9 * std::max(1.0, steps))
        throw GridTooNarrow("grid: the step does not divide the span evenly");
}

Vector gaussian_signal(double sigma, const GridSpec& grid) {
    grid.validate();
    if (!(sigma > 0.0)) throw GridTooNarrow("gaussian_signal: sigma must be positive");
    const double edge = std::min(std::abs(grid.t_min), std::abs(grid.t_max));
    // The energy density x^2 is the N(0, sigma) bell, so the two-sided tail
    // beyond the nearer grid edge integrates to erfc(edge / sqrt(2 sigma)).
    if (std::erfc(edge / std::sqrt(2.0 * sigma)) >= 1e-8)
        throw GridTooNarrow("gaussian_signal: truncated tail energy exceeds 1e-8");

    const int n = grid.points();
    const double amp = std::pow(2.0 * kPi * sigma, -0.25);
    Vector x(n);
    for (int i = 0; i < n; ++i) {
        const double t = grid.time_at(i);
        x(i) = amp * std::exp(-t * t / (4.0 * sigma));
    }
    return x;
}

Vector bspline(int order, const GridSpec& grid) {
    grid.validate();
    if (order < 0 || order > 3) throw UnsupportedOrder("bspline: order must be 0..3");

    const int n = grid.points();
    Vector g = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
        const double u = grid.time_at(i) / grid.period;
        const double a = std::abs(u);
        double v = 0.0;
        switch (order) {
            case 0: v = (u >= -0.5 && u < 0.5) ? 1.0 : 0.0; break;
            case 1: v = std::max(0.0, 1.0 - a); break;
            case 2:
                if (a < 0.5) v = 0.75 - a * a;
                else if (a < 1.5) v = 0.5 * (a - 1.5) * (a - 1.5);
                break;
            case 3:
                if (a < 1.0) v = 2.0 / 3.0 - a * a + 0.5 * a * a * a;
                else if (a < 2.0) v = (2.0 - a) * (2.0 - a) * (2.0 - a) / 6.0;
                break;
        }
        g(i) = v;
    }
    return g;
}

Vector lowpass_generator(double cutoff, int half_support, Window window,
                         const GridSpec& grid) {
    grid.validate();
    const double dt = grid.dt();
    if (!(cutoff > 0.0) || cutoff > kPi / dt + 1e-12)
        throw GridTooNarrow("lowpass_generator: cutoff must lie in (0, grid Nyquist]");
    if (half_support < 1)
        throw GridTooNarrow("lowpass_generator: half_support must be >= 1");
    const double half_t = half_support * grid.period;

    const int n = grid.points();
    const int zero = grid.index_of_zero();
    // The nominal support may exceed the grid; taps outside are simply lost
    // (the shift-invariant frames truncate at the grid edge anyway).
    const int half_samples = static_cast<int>(std::min<long long>(
        round_to_index(half_t / dt), std::max(zero, n - 1 - zero)));

    // Fill one side and mirror so g[i] = g[-i] holds exactly.
    std::vector<double> side(half_samples + 1, 0.0);
    for (int k = 0; k <= half_samples; ++k) {
        const double t = k * dt;
        double v = k == 0 ? cutoff / kPi : std::sin(cutoff * t) / (kPi * t);
        if (window == Window::hann)
            v *= 0.5 * (1.0 + std::cos(kPi * k / (half_samples + 1.0)));
        side[k] = v;
    }

    Vector g = Vector::Zero(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k = std::abs(i - zero);
        if (k <= half_samples) {
            g(i) = side[k];
            sum += g(i);
        }
    }
    if (!(std::abs(sum) > 0.0))
        throw GridTooNarrow("lowpass_generator: degenerate taps");
    g /= sum * dt;  // unit DC gain under the grid quadrature
    return g;
}

Frame shift_invariant_frame(const Vector& generator, const GridSpec& grid,
                            double shift_step) {
    grid.validate();
    const int n = grid.points();
    if (generator.size() != n)
        throw GridMismatch("shift_invariant_frame: generator does not live on the grid");
    if (shift_step <= 0.0) shift_step = grid.period;
    const double ratio = shift_step / grid.dt();
    const long long step_samples = round_to_index(ratio);
    if (step_samples < 1 || std::abs(ratio - step_samples) > 1e-9)
        throw GridTooNarrow("shift_invariant_frame: shift step must be a positive "
                            "multiple of the grid step");

    int lo = n, hi = -1;
    for (int i = 0; i < n; ++i)
        if (generator(i) != 0.0) { lo = std::min(lo, i); hi = std::max(hi, i); }
    if (hi < 0) throw ZeroSubspace("shift_invariant_frame: all-zero generator");

    // Keep the shifts whose centers stay on the grid. Admitting every shift
    // that merely grazes the grid would pad slowly-decaying generators (the
    // sinc) with near-zero tail columns and spoil the frame's rank.
    const int zero = grid.index_of_zero();
    const long long k_min = -(zero / step_samples);
    const long long k_max = (n - 1 - zero) / step_samples;

    std::vector<Vector> cols;
    for (long long shift = k_min; shift <= k_max; ++shift) {
        const long long off = shift * step_samples;
        Vector col = Vector::Zero(n);
        bool any = false;
        for (int i = std::max(0LL, lo + off); i <= std::min<long long>(n - 1, hi + off); ++i) {
            col(i) = generator(i - off);
            if (col(i) != 0.0) any = true;
        }
        if (any) cols.push_back(std::move(col));
    }
    if (cols.empty()) throw ZeroSubspace("shift_invariant_frame: no nonzero shifts");

    Frame f;
    f.ip = grid.ip();
    f.synthesis.resize(n, static_cast<Eigen::Index>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) f.synthesis.col(static_cast<Eigen::Index>(j)) = cols[j];
    return f;
}

double shift_invariant_angle_cos(const Spectrum& s_hat, const Spectrum& a_hat,
                                 double period, int omega_points, int n_alias,
                                 int* skipped) {
    if (omega_points < 16 || n_alias < 1 || !(period > 0.0))
        throw DegenerateSpectrum("shift_invariant_angle_cos: bad discretization parameters");

    int skip_count = 0;
    double inf_ratio = std::numeric_limits<double>::infinity();
    for (int k = 0; k < omega_points; ++k) {
        const double nu = 2.0 * kPi * k / omega_points;
        double cross = 0.0, es = 0.0, ea = 0.0;
        for (int n = -n_alias; n <= n_alias; ++n) {
            const double w = (nu + 2.0 * kPi * n) / period;
            const double sv = s_hat(w);
            const double av = a_hat(w);
            cross += sv * av;
            es += sv * sv;
            ea += av * av;
        }
        if (es <= 1e-14 || ea <= 1e-14) {
            ++skip_count;
            continue;
        }
        inf_ratio = std::min(inf_ratio, (cross * cross) / (es * ea));
    }
    if (skipped) *skipped = skip_count;
    if (skip_count == omega_points)
        throw DegenerateSpectrum("shift_invariant_angle_cos: denominator vanishes everywhere");
    return std::sqrt(std::clamp(inf_ratio, 0.0, 1.0));
}

Spectrum bspline_spectrum(int order, double period) {
    if (order < 0 || order > 3) throw UnsupportedOrder("bspline_spectrum: order must be 0..3");
    return [order, period](double w) {
        const double h = 0.5 * w * period;
        const double s = std::abs(h) < 1e-12 ? 1.0 : std::sin(h) / h;
        double v = period;
        for (int i = 0; i <= order; ++i) v *= s;
        // The piecewise-polynomial spline of order k is the (k+1)-fold box
        // convolution divided by T^k, keeping unit mass T at every order.
        return v;
    };
}

Spectrum ideal_lowpass_spectrum(double cutoff) {
    if (!(cutoff > 0.0)) throw DegenerateSpectrum("ideal_lowpass_spectrum: cutoff must be positive");
    return [cutoff](double w) { return std::abs(w) <= cutoff ? 1.0 : 0.0; };
}

double energy_fraction_below(const Vector& x, double omega_c, const GridSpec& grid) {
    grid.validate();
    const int n = grid.points();
    if (x.size() != n)
        throw GridMismatch("energy_fraction_below: signal does not live on the grid");
    if (omega_c < 0.0) return 0.0;

    // Zero-pad generously so the spectral-energy quadrature resolves the
    // band edge; 16x is enough for the tolerances used downstream.
    int m = 1;
    while (m < 16 * n) m *= 2;
    std::vector<double> padded(static_cast<size_t>(m), 0.0);
    for (int i = 0; i < n; ++i) padded[static_cast<size_t>(i)] = x(i);

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, padded);

    const double dw = 2.0 * kPi / (m * grid.dt());
    double total = 0.0, below = 0.0;
    for (int k = 0; k < m; ++k) {
        const double w = (k <= m / 2 ? k : k - m) * dw;
        const double e = std::norm(spec[static_cast<size_t>(k)]);
        total += e;
        if (std::abs(w) <= omega_c) below += e;
    }
    if (!(total > 0.0)) return 0.0;
    return below / total;
}

} // namespace gsrplab
