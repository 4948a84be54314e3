#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "tangles/experiment.hpp"

namespace {

int env_threads() {
    const char* env = std::getenv("TANGLEBOUNDS_THREADS");
    if (!env) return 1;
    const int v = std::atoi(env);
    return v > 0 ? v : 1;
}

nlohmann::json load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw tangles::cli::SchemaError("config", "cannot open config file " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw tangles::cli::SchemaError("config", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw tangles::cli::SchemaError("config", "expected a JSON object");
    return j;
}

int dispatch(const nlohmann::json& config, const tangles::cli::RunOptions& run) {
    using namespace tangles;
    try {
        return cli::execute(config, run, std::cout);
    } catch (const cli::SchemaError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kExitSchema;
    } catch (const PreconditionFailed& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return cli::kExitInfeasible;
    } catch (const NotFound& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return cli::kExitInfeasible;
    } catch (const UnsupportedSetting& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return cli::kExitInfeasible;
    } catch (const NonConvergent& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return cli::kExitNumerics;
    } catch (const TangleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitOracle;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lower bounds on the probability of incomparable clique tangles in "
                 "Gaussian-mixture similarity graphs"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir = ".", figure;
    int threads = env_threads();
    bool verbose = false;
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (or TANGLEBOUNDS_THREADS)")
        ->capture_default_str();
    app.add_flag("--verbose", verbose, "per-trial logs where applicable");

    auto add_config_cmd = [&](const std::string& name, const std::string& desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->add_option("--config", config_path, "JSON experiment config")->required();
        return cmd;
    };
    add_config_cmd("threshold", "minimal separable mean distances");
    add_config_cmd("bound", "evaluate the probability lower bounds over a sweep");
    add_config_cmd("simulate", "bounds side by side with Monte Carlo estimates");
    CLI::App* verify = app.add_subcommand("verify", "run the built-in oracle suite");
    CLI::App* reproduce = app.add_subcommand("reproduce", "rebuild a figure panel");
    reproduce->add_option("figure", figure, "figure id (fig2a..fig5b)");
    reproduce->add_option("--config", config_path, "JSON config with {command:reproduce}");

    CLI11_PARSE(app, argc, argv);

    tangles::cli::RunOptions run;
    run.out_dir = out_dir;
    run.threads = threads;
    run.verbose = verbose;

    nlohmann::json config;
    try {
        if (app.got_subcommand(verify)) {
            config = {{"command", "verify"}};
        } else if (app.got_subcommand(reproduce)) {
            if (!config_path.empty()) {
                config = load_config(config_path);
            } else if (!figure.empty()) {
                config = {{"command", "reproduce"}, {"figure", figure}};
            } else {
                std::cerr << "config error: reproduce needs a figure id or --config\n";
                return tangles::cli::kExitSchema;
            }
        } else {
            config = load_config(config_path);
        }
    } catch (const tangles::cli::SchemaError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return tangles::cli::kExitSchema;
    }
    return dispatch(config, run);
}
