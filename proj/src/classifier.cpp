#include "inlsc/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "inlsc/functionals.hpp"

namespace inlsc {

std::string to_string(Branch b) {
    switch (b) {
        case Branch::negative_energy: return "negative_energy";
        case Branch::above_threshold: return "above_threshold";
        case Branch::no_prediction: return "no_prediction";
    }
    return "unknown";
}

std::string to_string(DataClass c) {
    switch (c) {
        case DataClass::finite_variance: return "finite_variance";
        case DataClass::radial: return "radial";
        case DataClass::neither: return "neither";
    }
    return "unknown";
}

DataClass parse_data_class(const std::string& s) {
    if (s == "finite_variance") return DataClass::finite_variance;
    if (s == "radial") return DataClass::radial;
    if (s == "neither") return DataClass::neither;
    throw std::invalid_argument("unknown data class '" + s + "'");
}

Thresholds thresholds(const ParamSet& params, GridPtr grid) {
    if (!params.is_energy_critical()) throw std::invalid_argument("thresholds need sigma = sigma*");
    Thresholds t;
    t.c_bar = std::min(params.c(), 0.0);
    const GroundStateSpec spec(params.d(), params.b(), t.c_bar, 1.0);
    const auto integrals = ground_state_integrals(spec, std::move(grid));
    const double k = integrals.kinetic();
    const double p = integrals.potential();
    t.energy_W = 0.5 * k - p / (params.sigma_value() + 2.0);
    t.norm_W = std::sqrt(k);
    t.hs_constant = hs_constant_from_norm(t.norm_W, params.sigma_value());
    return t;
}

Verdict classify(const RadialField& u0, const ParamSet& params, DataClass data_class, const Thresholds& thr) {
    if (!params.is_energy_critical()) throw std::invalid_argument("classification needs sigma = sigma*");
    if (params.lambda() != -1) throw std::invalid_argument("blowup conditions concern the focusing flow");
    Verdict v;
    v.data_class = data_class;
    v.threshold = thr;
    const double k = kinetic_c(u0, params.c());
    v.energy_u0 = energy_from_parts(k, potential_term(u0, params.b_value(), params.sigma_value()), params);
    v.norm_u0 = std::sqrt(std::max(k, 0.0));
    v.mixed_norms = params.c() > 0.0;
    if (v.energy_u0 < 0.0)
        v.branch = Branch::negative_energy;
    else if (v.energy_u0 < thr.energy_W && v.norm_u0 > thr.norm_W)
        v.branch = Branch::above_threshold;
    else
        v.branch = Branch::no_prediction;
    v.predicts_blowup = v.branch != Branch::no_prediction && data_class != DataClass::neither;
    return v;
}

Verdict classify(const RadialField& u0, const ParamSet& params, DataClass data_class) {
    if (!params.is_energy_critical()) throw std::invalid_argument("classification needs sigma = sigma*");
    return classify(u0, params, data_class, thresholds(params, u0.grid));
}

SharpnessReport sharpness_probe(const ParamSet& params, GridPtr grid, const std::vector<double>& amplitudes,
                                const std::vector<double>& eps_values) {
    if (!params.is_energy_critical()) throw std::invalid_argument("sharpness probe needs sigma = sigma*");
    const GroundStateSpec spec(params.d(), params.b(), std::min(params.c(), 0.0), 1.0);
    const auto integrals = ground_state_integrals(spec, std::move(grid));
    const double s = params.sigma_value();
    const double coef = 4.0 * (params.d() * s + 2.0 * params.b_value()) / (s + 2.0);
    SharpnessReport rep;
    double worst = -1e300;
    for (double a : amplitudes) {
        for (double eps : eps_values) {
            SharpnessRow row;
            row.amplitude = a;
            row.eps = eps;
            const double k = a * a * integrals.kinetic();
            const double p = std::pow(a, s + 2.0) * integrals.potential();
            row.lhs = 8.0 * k - coef * p + eps * k;
            row.negative = row.lhs < 0.0;
            if (a > 1.0) worst = std::max(worst, row.lhs);
            rep.rows.push_back(row);
        }
    }
    rep.neg_margin = worst > -1e300 ? -worst : 0.0;
    return rep;
}

}  // namespace inlsc
