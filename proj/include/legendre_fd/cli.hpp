#pragma once

// Configuration-driven driver: parses run settings, dispatches solves over a
// bounded worker pool and writes convergence tables, summaries, eigenfunction
// samples and bound reports.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace legendre_fd {

enum class Precision { double_precision, extended_precision };

enum class Emit : unsigned { steps_csv = 1, summary = 2, samples = 4, bounds = 8 };

/// Potential selection as `kind[:p1,p2,...]`; parameters stay textual so that
/// rationals such as 5/12 are parsed at the working precision.
struct PotentialChoice {
    std::string kind = "log_product";
    std::vector<std::string> params{"5/12", "1/3"};
};

struct RunConfig {
    std::vector<int> n_list{0};
    int m = 30;
    int K = 250;
    /// Empty means {-1} plus the potential's singularities plus {1}.
    std::vector<std::string> breakpoints;
    PotentialChoice potential;
    Precision precision = Precision::double_precision;
    std::filesystem::path output_dir = ".";
    unsigned emit = 0;
    bool allow_interior_singularities = false;
    bool subdivision_study = false;
    /// Worker threads; 0 means available parallelism.
    int jobs = 0;

    bool emits(Emit e) const { return (emit & static_cast<unsigned>(e)) != 0; }
};

/// The reference experiment: n = 0..4, m = 30, K = 250, the
/// log-product potential and breakpoints {-1, -1/3, 0, 5/12, 1}.
RunConfig paper_experiment_config();

/// "3", "0..4", "0,2,5" or mixtures such as "0..2,7". Throws ConfigurationError.
std::vector<int> parse_n_list(const std::string& text);
PotentialChoice parse_potential(const std::string& text);
std::vector<std::string> parse_breakpoints(const std::string& text);
unsigned parse_emit(const std::string& text);
Precision parse_precision(const std::string& text);

/// Checks every field before any computation. Throws ConfigurationError.
void validate(const RunConfig& config);

struct ReferenceRow {
    int n = 0;
    bool has_reference = false;
    double reference = 0;
    /// |lambda - reference|
    double difference = 0;
};

/// SLEIGN2 value of lambda_n for n = 0..4, if any.
std::optional<double> sleign2_reference(int n);
ReferenceRow compare_reference(double lambda, int n);

struct SubdivisionRow {
    std::string label;
    std::vector<std::string> breakpoints;
    double lambda = 0;
    ReferenceRow reference;
};

/// lambda_0 under no subdivision, a uniform 4-way split, and a split at the
/// potential's singularities and 0. Requires the log-product potential.
std::vector<SubdivisionRow> subdivision_study(const RunConfig& config);

/// Runs the configured solves and writes the requested outputs.
/// Returns 0 on success, 2 on configuration errors, 3 on numerical failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Converts a CSV cell or summary value to text with 17 significant digits.
std::string format_real(double value);

}  // namespace legendre_fd
