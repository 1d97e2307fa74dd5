#pragma once

#include <string>
#include <vector>

#include "gsrplab/signals.hpp"

namespace gsrplab {

enum class GeneratorKind { bspline, lowpass };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::bspline;
    int order = 0;             // bspline only
    double cutoff = 0.0;       // rad/s, lowpass only; set after validation
    int half_support = 0;      // in periods, lowpass only
    Window window = Window::rectangular;
    double shift_step = -1.0;  // <0 means one period
};

enum class InputKind { gaussian, file, synthetic_wideband };

struct InputSpec {
    InputKind kind = InputKind::gaussian;
    double sigma = 0.0;
    std::string path;
    unsigned long long seed = 0;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
    OutputFormat format = OutputFormat::csv;
    std::string path;  // empty: stdout
};

struct ExperimentConfig {
    GridSpec grid;
    GeneratorSpec sampling;
    GeneratorSpec reconstruction;
    GeneratorSpec prior;
    InputSpec input;
    std::vector<double> lambda_grid;
    OutputSpec output;
};

/// Parses and fully validates the INI-style experiment config (grammar in
/// docs/config-format.md). Throws ConfigParseError with line diagnostics on
/// malformed text and ConfigSemanticError on well-formed but invalid values.
ExperimentConfig validate_config(const std::string& raw_text);

/// Text of a shipped preset ("gaussian_fig3" or "synthetic_wideband").
std::string preset_text(const std::string& name);

/// Realizes a generator spec as samples on the grid.
Vector generator_samples(const GeneratorSpec& spec, const GridSpec& grid);

/// The generator's continuous-time spectrum when one is known in closed form
/// (B-splines and the ideal low-pass model of the windowed sinc).
Spectrum generator_spectrum(const GeneratorSpec& spec, const GridSpec& grid);

/// Builds the shift-invariant frame the spec describes.
Frame build_frame(const GeneratorSpec& spec, const GridSpec& grid);

/// Realizes the configured input signal on the grid (unit grid-norm for the
/// synthetic kinds).
Vector build_input(const InputSpec& input, const GridSpec& grid);

} // namespace gsrplab
