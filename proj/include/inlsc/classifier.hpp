#pragma once

#include <string>
#include <vector>

#include "inlsc/ground_state.hpp"
#include "inlsc/params.hpp"
#include "inlsc/radial_grid.hpp"

namespace inlsc {

enum class Branch { negative_energy, above_threshold, no_prediction };
enum class DataClass { finite_variance, radial, neither };

std::string to_string(Branch b);
std::string to_string(DataClass c);
DataClass parse_data_class(const std::string& s);

/// Energy and seminorm of W at c_bar = min{c, 0}; the blowup thresholds.
struct Thresholds {
    double c_bar = 0.0;
    double energy_W = 0.0;  // E_{b,c_bar}(W_{b,c_bar})
    double norm_W = 0.0;    // ||W_{b,c_bar}|| in the c_bar seminorm
    double hs_constant = 0.0;
};

/// Requires sigma = sigma*. W is integrated on `grid` plus its power-law tail.
Thresholds thresholds(const ParamSet& params, GridPtr grid);

struct Verdict {
    Branch branch = Branch::no_prediction;
    DataClass data_class = DataClass::radial;
    double energy_u0 = 0.0;
    double norm_u0 = 0.0;  // in the c seminorm
    Thresholds threshold;
    /// Blowup predicted: a blowup branch and data that is radial or has finite variance.
    bool predicts_blowup = false;
    /// c > 0: u0 and W are measured in different seminorms.
    bool mixed_norms = false;
};

/// Sufficient blowup conditions for focusing energy-critical data. Rejects sigma != sigma*
/// and lambda != -1.
Verdict classify(const RadialField& u0, const ParamSet& params, DataClass data_class, const Thresholds& thr);
Verdict classify(const RadialField& u0, const ParamSet& params, DataClass data_class);

struct SharpnessRow {
    double amplitude = 0.0;
    double eps = 0.0;
    double lhs = 0.0;  // 8||u||^2 - 4(d s+2b)/(s+2) P + eps ||u||^2
    bool negative = false;
};

struct SharpnessReport {
    std::vector<SharpnessRow> rows;
    /// -max lhs over the rows with amplitude > 1: the strict negative margin.
    double neg_margin = 0.0;
};

/// Evaluates the left side of the strict-negativity inequality for u0 = a W at t = 0.
/// Uses the tail-corrected W integrals, which scale as a^2 and a^{sigma*+2}.
SharpnessReport sharpness_probe(const ParamSet& params, GridPtr grid, const std::vector<double>& amplitudes,
                                const std::vector<double>& eps_values);

}  // namespace inlsc
