#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "inlsc/classifier.hpp"
#include "inlsc/evolution.hpp"
#include "inlsc/initial_data.hpp"
#include "inlsc/params.hpp"
#include "inlsc/radial_grid.hpp"

namespace inlsc {

enum class Scenario { params_check, groundstate, evolve, classify, virial_check, sweep };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& s);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation = 2;
inline constexpr int solver = 3;
inline constexpr int blowup = 4;
}  // namespace exit_code

struct ModelConfig {
    int d = 3;
    std::string b = "1";
    std::string sigma;  // empty: the energy-critical sigma*
    int lambda = -1;
    std::string c = "0";  // rational or decimal text

    ParamSet param_set() const;
};

struct GridConfig {
    double r_max = 40.0;
    int n = 4000;

    double h() const { return r_max / n; }
    GridPtr make(int d) const;
};

struct OutputConfig {
    std::string directory = "out";
    double sample_interval = 1e-2;
};

struct RunConfig {
    Scenario scenario = Scenario::evolve;
    ModelConfig params;
    GridConfig grid;
    SolverConfig solver;
    InitialData initial;
    OutputConfig output;

    DataClass data_class = DataClass::radial;
    // virial-check
    std::vector<double> virial_radii{2.0, 5.0, 10.0, 50.0};
    double virial_t_lo = 0.01;
    double virial_t_hi = -1.0;  // negative: t_end - sample_interval
    // groundstate
    bool minimize = false;
    int minimize_iters = 5000;
    // sweep
    std::vector<double> sweep_amplitudes;
    int jobs = 1;

    /// Throws std::invalid_argument on inconsistent or missing keys.
    void validate() const;
};

/// Ordered key=value run summary.
class Summary {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add(const std::string& key, long value);
    void add(const std::string& key, int value) { add(key, static_cast<long>(value)); }
    void add(const std::string& key, bool value);
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    /// Value of the first entry named `key`, or "" when absent.
    std::string get(const std::string& key) const;
    void write(std::ostream& out) const;
    void write(const std::string& path) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct RunResult {
    int exit_code = exit_code::ok;
    Summary summary;
};

/// Executes the scenario, writing CSV artifacts and summary.txt under config.output.directory.
/// The summary is written on every exit path. Human-readable progress goes to `log`.
RunResult run(const RunConfig& config, std::ostream& log);

}  // namespace inlsc
