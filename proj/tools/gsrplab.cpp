#include <CLI11.hpp>

#include "gsrplab/experiment.hpp"
#include "gsrplab/properties.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaimsFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gsrplab::IoError("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gsrplab::ExperimentConfig load_config(const std::string& config_path, const std::string& preset) {
    if (!preset.empty()) return gsrplab::validate_config(gsrplab::preset_text(preset));
    return gsrplab::validate_config(read_file(config_path));
}

void apply_worker_env() {
    if (const char* env = std::getenv("GSRPLAB_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) Eigen::setNbThreads(n);
    }
}

void print_angles(const gsrplab::AngleReport& rep) {
    const auto& a = rep.angles;
    std::cout << "cos(W,S)      = " << a.cos_ws << "   sin(W,S)      = " << a.sin_ws << '\n'
              << "cos(W_perp,S) = " << a.cos_wperp_s << "   sin(W_perp,S) = " << a.sin_wperp_s << '\n'
              << "cos(A,S)      = " << a.cos_as << "   sin(A,S)      = " << a.sin_as << '\n'
              << "cos(A_perp,S) = " << a.cos_aperp_s << "   sin(A_perp,S) = " << a.sin_aperp_s << '\n'
              << "cos(A,S_perp) = " << a.cos_a_sperp << "   sin(A,S_perp) = " << a.sin_a_sperp << '\n'
              << "cos(A,W_perp) = " << a.cos_a_wperp << "   sin(A,W)      = " << a.sin_aw << '\n'
              << "cos(B,S)      = " << a.cos_bs << "   sin(B_perp,S) = " << a.sin_bperp_s
              << "   (lambda = " << a.lambda << ")\n";
    if (std::isnan(rep.freq_cos_as)) {
        std::cout << "spectral cos(A,S): n/a for this configuration\n";
    } else {
        std::cout << "spectral cos(A,S) = " << rep.freq_cos_as;
        if (rep.freq_skipped_omegas > 0)
            std::cout << "  (" << rep.freq_skipped_omegas << " omega points skipped)";
        std::cout << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    apply_worker_env();

    CLI::App app{"Finite-dimensional laboratory for generalized sampling-reconstruction"};
    app.require_subcommand(1);

    std::string config_path, preset, out_path, format = "csv", claims;
    double lambda = 0.0;
    int trials = 200;
    unsigned long long seed = 1;

    auto add_config_opts = [&](CLI::App* cmd) {
        auto* c = cmd->add_option("--config", config_path, "Path to an experiment config");
        auto* p = cmd->add_option("--preset", preset,
                                  "Builtin preset (gaussian_fig3, synthetic_wideband)");
        c->excludes(p);
    };

    CLI::App* sweep = app.add_subcommand("sweep", "Run the lambda sweep and emit rows");
    add_config_opts(sweep);
    sweep->add_option("--out", out_path, "Output path (default: stdout)");
    sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* angles = app.add_subcommand("angles", "Print the subspace angles of a config");
    add_config_opts(angles);
    angles->add_option("--lambda", lambda, "Lambda for the B-related angles")
        ->check(CLI::Range(0.0, 1.0));

    CLI::App* verify = app.add_subcommand("verify", "Run a sweep and check a claim set");
    add_config_opts(verify);
    verify->add_option("--claims", claims, "Builtin claim set name or JSON claim file")
        ->required();

    CLI::App* selftest = app.add_subcommand("selftest", "Run the property suites");
    selftest->add_option("--trials", trials, "Trials per suite")->check(CLI::PositiveNumber);
    selftest->add_option("--seed", seed, "Random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            auto cfg = load_config(config_path, preset);
            if (sweep->count("--format")) {
                cfg.output.format = format == "json" ? gsrplab::OutputFormat::json
                                                     : gsrplab::OutputFormat::csv;
            }
            if (sweep->count("--out")) cfg.output.path = out_path;
            auto result = gsrplab::run_lambda_sweep(cfg);
            gsrplab::emit(result.rows, cfg.output.format, cfg.output.path);
            return kExitOk;
        }
        if (*angles) {
            auto cfg = load_config(config_path, preset);
            print_angles(gsrplab::compute_angles(cfg, lambda));
            return kExitOk;
        }
        if (*verify) {
            auto cfg = load_config(config_path, preset);
            auto result = gsrplab::run_lambda_sweep(cfg);
            auto report = gsrplab::verify_claims(result, claims);
            for (const auto& r : report.results)
                std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail
                          << '\n';
            return report.all_pass() ? kExitOk : kExitClaimsFailed;
        }
        if (*selftest) {
            auto report = gsrplab::run_property_suites(trials, seed);
            report.suites.push_back(gsrplab::run_dual_formula_suite(std::min(trials, 100), seed));
            for (const auto& s : report.suites) {
                std::cout << (s.pass() ? "PASS" : "FAIL") << "  " << s.name << " (" << s.trials
                          << " trials)";
                if (!s.pass()) std::cout << " — " << s.first_failure;
                std::cout << '\n';
            }
            return report.all_pass() ? kExitOk : kExitNumericalFailure;
        }
    } catch (const gsrplab::ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const gsrplab::ConfigSemanticError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const gsrplab::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const gsrplab::MissingLambda& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const gsrplab::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
    return kExitOk;
}
