#pragma once

#include <string>

#include "gsrplab/numerics.hpp"

namespace gsrplab {

/// Two-column text: time and value per line, '#' comments allowed.
void write_signal_text(const std::string& path, const Vector& x, double t_min, double dt);
/// Returns the values; *dt_out / *t_min_out receive the grid metadata when given.
Vector read_signal_text(const std::string& path, double* t_min_out = nullptr,
                        double* dt_out = nullptr);

/// Raw little-endian binary: 8-byte magic "GSRPSIG1", u64 length, f64 dt,
/// then the samples.
void write_signal_binary(const std::string& path, const Vector& x, double dt);
Vector read_signal_binary(const std::string& path, double* dt_out = nullptr);

} // namespace gsrplab
