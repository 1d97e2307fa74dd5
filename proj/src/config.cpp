#include "gsrplab/config.hpp"

#include "gsrplab/signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace gsrplab {

namespace {

constexpr double kPi = std::numbers::pi;

struct RawValue {
    std::string text;
    int line = 0;
    mutable bool used = false;
};

using Section = std::map<std::string, RawValue>;
using Sections = std::map<std::string, Section>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Sections parse_sections(const std::string& text) {
    Sections out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigParseError("line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigParseError("line " + std::to_string(lineno) + ": empty section name");
            out[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigParseError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigParseError("line " + std::to_string(lineno) + ": empty key");
        auto [it, fresh] = out[section].emplace(key, RawValue{trim(line.substr(eq + 1)), lineno});
        if (!fresh)
            throw ConfigParseError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                                   "' in [" + section + "]");
    }
    return out;
}

class SectionReader {
  public:
    SectionReader(const Sections& all, const std::string& name) : name_(name) {
        auto it = all.find(name);
        if (it == all.end())
            throw ConfigParseError("missing required section [" + name + "]");
        section_ = &it->second;
    }

    const RawValue* find(const std::string& key) const {
        auto it = section_->find(key);
        if (it == section_->end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    const RawValue& require(const std::string& key) const {
        const RawValue* v = find(key);
        if (!v)
            throw ConfigParseError("section [" + name_ + "]: missing key '" + key + "'");
        return *v;
    }

    double number(const std::string& key) const { return to_number(require(key)); }

    double number_or(const std::string& key, double fallback) const {
        const RawValue* v = find(key);
        return v ? to_number(*v) : fallback;
    }

    long long integer(const std::string& key) const {
        const RawValue& v = require(key);
        const double d = to_number(v);
        if (d != std::floor(d))
            throw ConfigSemanticError("line " + std::to_string(v.line) + ": '" + key +
                                      "' must be an integer");
        return static_cast<long long>(d);
    }

    std::string text(const std::string& key) const { return require(key).text; }

    std::string text_or(const std::string& key, const std::string& fallback) const {
        const RawValue* v = find(key);
        return v ? v->text : fallback;
    }

    void reject_unused() const {
        for (const auto& [key, value] : *section_)
            if (!value.used)
                throw ConfigParseError("line " + std::to_string(value.line) + ": unknown key '" +
                                       key + "' in [" + name_ + "]");
    }

    double to_number(const RawValue& v) const {
        try {
            size_t pos = 0;
            const double d = std::stod(v.text, &pos);
            if (pos != v.text.size()) throw std::invalid_argument("trailing text");
            return d;
        } catch (const std::exception&) {
            throw ConfigParseError("line " + std::to_string(v.line) + ": '" + v.text +
                                   "' is not a number");
        }
    }

  private:
    std::string name_;
    const Section* section_ = nullptr;
};

GeneratorSpec read_generator(const Sections& all, const std::string& section,
                             const GridSpec& grid) {
    SectionReader r(all, section);
    GeneratorSpec spec;
    const std::string kind = r.text("kind");
    if (kind == "bspline") {
        spec.kind = GeneratorKind::bspline;
        const long long order = r.integer("order");
        if (order < 0 || order > 3)
            throw ConfigSemanticError("[" + section + "]: bspline order must be 0..3");
        spec.order = static_cast<int>(order);
    } else if (kind == "lowpass") {
        spec.kind = GeneratorKind::lowpass;
        const RawValue& cut = r.require("cutoff");
        if (cut.text == "pi") spec.cutoff = kPi / grid.period;
        else if (cut.text == "nyquist") spec.cutoff = kPi / grid.dt();
        else spec.cutoff = r.to_number(cut);
        if (!(spec.cutoff > 0.0) || spec.cutoff > kPi / grid.dt() + 1e-12)
            throw ConfigSemanticError("[" + section + "]: cutoff must lie in (0, grid Nyquist]");
        const long long hs = r.integer("half_support");
        if (hs < 1) throw ConfigSemanticError("[" + section + "]: half_support must be >= 1");
        spec.half_support = static_cast<int>(hs);
        const std::string win = r.text_or("window", "rectangular");
        if (win == "rectangular") spec.window = Window::rectangular;
        else if (win == "hann") spec.window = Window::hann;
        else throw ConfigSemanticError("[" + section + "]: unknown window '" + win + "'");
    } else {
        throw ConfigSemanticError("[" + section + "]: unknown generator kind '" + kind + "'");
    }
    spec.shift_step = r.number_or("shift_step", -1.0);
    if (spec.shift_step > 0.0) {
        const double ratio = spec.shift_step / grid.dt();
        if (std::abs(ratio - std::llround(ratio)) > 1e-9 || ratio < 0.5)
            throw ConfigSemanticError("[" + section +
                                      "]: shift_step must be a positive multiple of the grid step");
    } else if (r.find("shift_step")) {
        throw ConfigSemanticError("[" + section + "]: shift_step must be positive");
    }
    r.reject_unused();
    return spec;
}

std::vector<double> split_numbers(const SectionReader& r, const RawValue& v) {
    std::string body = v.text;
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream ss(body);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) out.push_back(r.to_number(RawValue{tok, v.line}));
    return out;
}

} // namespace

ExperimentConfig validate_config(const std::string& raw_text) {
    const Sections all = parse_sections(raw_text);

    ExperimentConfig cfg;
    {
        SectionReader r(all, "grid");
        cfg.grid.t_min = r.number("t_min");
        cfg.grid.t_max = r.number("t_max");
        const long long spp = r.integer("samples_per_period");
        cfg.grid.samples_per_period = static_cast<int>(spp);
        cfg.grid.period = r.number_or("period", 1.0);
        r.reject_unused();
        try {
            cfg.grid.validate();
        } catch (const GridTooNarrow& e) {
            throw ConfigSemanticError(std::string("[grid]: ") + e.what());
        }
    }

    cfg.sampling = read_generator(all, "sampling", cfg.grid);
    cfg.reconstruction = read_generator(all, "reconstruction", cfg.grid);
    cfg.prior = read_generator(all, "prior", cfg.grid);

    {
        SectionReader r(all, "input");
        const std::string kind = r.text("kind");
        if (kind == "gaussian") {
            cfg.input.kind = InputKind::gaussian;
            cfg.input.sigma = r.number("sigma");
            if (!(cfg.input.sigma > 0.0))
                throw ConfigSemanticError("[input]: sigma must be positive");
        } else if (kind == "file") {
            cfg.input.kind = InputKind::file;
            cfg.input.path = r.text("path");
            if (!std::filesystem::exists(cfg.input.path))
                throw ConfigSemanticError("[input]: file does not exist: " + cfg.input.path);
        } else if (kind == "synthetic_wideband") {
            cfg.input.kind = InputKind::synthetic_wideband;
            const long long seed = r.integer("seed");
            if (seed < 0) throw ConfigSemanticError("[input]: seed must be nonnegative");
            cfg.input.seed = static_cast<unsigned long long>(seed);
        } else {
            throw ConfigSemanticError("[input]: unknown kind '" + kind + "'");
        }
        r.reject_unused();
    }

    {
        SectionReader r(all, "lambda");
        const RawValue* count = r.find("count");
        const RawValue* values = r.find("values");
        if (count && values)
            throw ConfigSemanticError("[lambda]: give either count or values, not both");
        if (count) {
            const double c = r.to_number(*count);
            if (c != std::floor(c) || c < 2)
                throw ConfigSemanticError("[lambda]: count must be an integer >= 2");
            const int n = static_cast<int>(c);
            for (int i = 0; i < n; ++i)
                cfg.lambda_grid.push_back(static_cast<double>(i) / (n - 1));
        } else if (values) {
            cfg.lambda_grid = split_numbers(r, *values);
        }
        r.reject_unused();
        if (cfg.lambda_grid.empty())
            throw ConfigSemanticError("[lambda]: empty lambda grid");
        for (double l : cfg.lambda_grid)
            if (!(l >= 0.0 && l <= 1.0))
                throw ConfigSemanticError("[lambda]: values must lie in [0,1]");
        std::sort(cfg.lambda_grid.begin(), cfg.lambda_grid.end());
        cfg.lambda_grid.erase(std::unique(cfg.lambda_grid.begin(), cfg.lambda_grid.end()),
                              cfg.lambda_grid.end());
    }

    if (all.count("output")) {
        SectionReader r(all, "output");
        const std::string fmt = r.text_or("format", "csv");
        if (fmt == "csv") cfg.output.format = OutputFormat::csv;
        else if (fmt == "json") cfg.output.format = OutputFormat::json;
        else throw ConfigSemanticError("[output]: unknown format '" + fmt + "'");
        cfg.output.path = r.text_or("path", "");
        r.reject_unused();
    }

    for (const auto& [name, _] : all)
        if (name != "grid" && name != "sampling" && name != "reconstruction" &&
            name != "prior" && name != "input" && name != "lambda" && name != "output")
            throw ConfigParseError("unknown section [" + name + "]");

    return cfg;
}

std::string preset_text(const std::string& name) {
    if (name == "gaussian_fig3") {
        return R"(# Unit-energy Gaussian input, box sampling, cubic-spline reconstruction,
# pi-bandlimited prior.
[grid]
t_min = -8
t_max = 8
samples_per_period = 64
period = 1

[sampling]
kind = bspline
order = 0

[reconstruction]
kind = bspline
order = 3

[prior]
kind = lowpass
cutoff = pi
half_support = 16

[input]
kind = gaussian
sigma = 0.09

[lambda]
count = 101

[output]
format = csv
)";
    }
    if (name == "synthetic_wideband") {
        return R"(# Seeded wideband test signal through the same pipeline as gaussian_fig3.
[grid]
t_min = -8
t_max = 8
samples_per_period = 64
period = 1

[sampling]
kind = bspline
order = 0

[reconstruction]
kind = bspline
order = 3

[prior]
kind = lowpass
cutoff = pi
half_support = 16

[input]
kind = synthetic_wideband
seed = 20260823

[lambda]
count = 41

[output]
format = csv
)";
    }
    throw ConfigParseError("unknown preset '" + name + "'");
}

Vector generator_samples(const GeneratorSpec& spec, const GridSpec& grid) {
    if (spec.kind == GeneratorKind::bspline) return bspline(spec.order, grid);
    return lowpass_generator(spec.cutoff, spec.half_support, spec.window, grid);
}

Spectrum generator_spectrum(const GeneratorSpec& spec, const GridSpec& grid) {
    if (spec.kind == GeneratorKind::bspline) return bspline_spectrum(spec.order, grid.period);
    return ideal_lowpass_spectrum(spec.cutoff);
}

Frame build_frame(const GeneratorSpec& spec, const GridSpec& grid) {
    return shift_invariant_frame(generator_samples(spec, grid), grid, spec.shift_step);
}

Vector build_input(const InputSpec& input, const GridSpec& grid) {
    switch (input.kind) {
        case InputKind::gaussian:
            return gaussian_signal(input.sigma, grid);
        case InputKind::file: {
            Vector x = input.path.size() > 4 && input.path.substr(input.path.size() - 4) == ".bin"
                           ? read_signal_binary(input.path)
                           : read_signal_text(input.path);
            if (x.size() != grid.points())
                throw ConfigSemanticError("[input]: file sample count does not match the grid");
            return x;
        }
        case InputKind::synthetic_wideband: {
            std::mt19937_64 rng(input.seed);
            std::uniform_real_distribution<double> freq(0.0, 4.0 * kPi / grid.period);
            std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
            std::normal_distribution<double> amp(0.0, 1.0);

            const int n = grid.points();
            const double width = (grid.t_max - grid.t_min) / 6.0;
            Vector x = Vector::Zero(n);
            for (int k = 0; k < 40; ++k) {
                const double w = freq(rng), p = phase(rng), a = amp(rng);
                for (int i = 0; i < n; ++i)
                    x(i) += a * std::cos(w * grid.time_at(i) + p);
            }
            const double center = 0.5 * (grid.t_min + grid.t_max);
            for (int i = 0; i < n; ++i) {
                const double t = grid.time_at(i) - center;
                x(i) *= std::exp(-t * t / (2.0 * width * width));
            }
            const double norm = grid.ip().norm(x);
            if (!(norm > 0.0)) throw ZeroSubspace("synthetic_wideband: zero signal");
            return x / norm;
        }
    }
    throw ConfigSemanticError("[input]: unsupported kind");
}

} // namespace gsrplab
