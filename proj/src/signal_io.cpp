#include "gsrplab/signal_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace gsrplab {

namespace {

constexpr char kMagic[8] = {'G', 'S', 'R', 'P', 'S', 'I', 'G', '1'};

} // namespace

void write_signal_text(const std::string& path, const Vector& x, double t_min, double dt) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.precision(17);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out << t_min + i * dt << ' ' << x(i) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

Vector read_signal_text(const std::string& path, double* t_min_out, double* dt_out) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);

    std::vector<double> times, values;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double t, v;
        if (ss >> t >> v) {
            times.push_back(t);
            values.push_back(v);
        }
    }
    if (values.empty()) throw IoError("no samples in " + path);
    if (t_min_out) *t_min_out = times.front();
    if (dt_out) *dt_out = times.size() > 1 ? times[1] - times[0] : 0.0;

    Vector x(static_cast<Eigen::Index>(values.size()));
    for (size_t i = 0; i < values.size(); ++i) x(static_cast<Eigen::Index>(i)) = values[i];
    return x;
}

void write_signal_binary(const std::string& path, const Vector& x, double dt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    const std::uint64_t n = static_cast<std::uint64_t>(x.size());
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&dt), sizeof dt);
    out.write(reinterpret_cast<const char*>(x.data()),
              static_cast<std::streamsize>(n * sizeof(double)));
    if (!out) throw IoError("write failed: " + path);
}

Vector read_signal_binary(const std::string& path, double* dt_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);

    char magic[8];
    std::uint64_t n = 0;
    double dt = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&dt), sizeof dt);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw IoError("bad signal header in " + path);
    if (n == 0 || n > (1ull << 32)) throw IoError("implausible sample count in " + path);

    Vector x(static_cast<Eigen::Index>(n));
    in.read(reinterpret_cast<char*>(x.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw IoError("truncated signal data in " + path);
    if (dt_out) *dt_out = dt;
    return x;
}

} // namespace gsrplab
