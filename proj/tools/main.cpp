#include "legendre_fd/cli.hpp"
#include "legendre_fd/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace legendre_fd;

int main(int argc, char** argv) {
    CLI::App app{"FD-method eigenpairs of -((1-x^2)u')' + q u = lambda u on (-1, 1)"};

    std::string n_text, breakpoints_text, potential_text, precision_text, emit_text, out_dir;
    int m = -1, K = -1, jobs = -1;
    bool preset = false, study = false, allow_interior = false;

    app.add_option("--n", n_text, "Eigenindices: 3, 0..4 or 0,2,5");
    app.add_option("--m", m, "Number of FD steps");
    app.add_option("--K", K, "Quadrature half-width (2K+1 nodes per subinterval)");
    app.add_option("--breakpoints", breakpoints_text, "Comma-separated subdivision points, e.g. -1,-1/3,0,5/12,1");
    app.add_option("--potential", potential_text,
                   "zero | constant:c | polynomial:c0,c1,... | log_product:r,s | paper");
    app.add_option("--precision", precision_text, "double or extended");
    app.add_flag("--paper-experiment", preset, "Default to the published experiment configuration");
    app.add_flag("--subdivision-study", study, "Compare lambda_0 under three subdivisions");
    app.add_flag("--allow-interior-singularities", allow_interior,
                 "Accept potential singularities strictly inside a subinterval");
    app.add_option("--emit", emit_text, "Comma-separated outputs: steps_csv, summary, samples, bounds");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--jobs", jobs, "Worker threads (default: available parallelism)");
    app.set_config("--config", "", "Settings file with one `key = value` line per flag");
    // Commas inside values belong to our own list syntax, not to CLI11 arrays.
    auto format = std::make_shared<CLI::ConfigTOML>();
    format->arrayDelimiter(';');
    app.config_formatter(format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig config = preset ? paper_experiment_config() : RunConfig{};
        if (!n_text.empty()) config.n_list = parse_n_list(n_text);
        if (app.count("--m")) config.m = m;
        if (app.count("--K")) config.K = K;
        if (!potential_text.empty()) {
            config.potential = parse_potential(potential_text);
            if (preset && breakpoints_text.empty()) config.breakpoints.clear();
        }
        if (!breakpoints_text.empty()) config.breakpoints = parse_breakpoints(breakpoints_text);
        if (!precision_text.empty()) config.precision = parse_precision(precision_text);
        if (!emit_text.empty()) config.emit = parse_emit(emit_text);
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (app.count("--jobs")) config.jobs = jobs;
        config.subdivision_study = study;
        config.allow_interior_singularities = allow_interior;
        return run(config, std::cout, std::cerr);
    } catch (const ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }
}
