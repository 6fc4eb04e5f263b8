#include "inlsc/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "inlsc/ground_state.hpp"

namespace inlsc {

std::string to_string(InitialKind k) {
    switch (k) {
        case InitialKind::gaussian: return "gaussian";
        case InitialKind::ground_state: return "ground_state";
        case InitialKind::scaled_ground_state: return "scaled_ground_state";
        case InitialKind::file: return "file";
    }
    return "unknown";
}

InitialKind parse_initial_kind(const std::string& s) {
    if (s == "gaussian") return InitialKind::gaussian;
    if (s == "ground_state") return InitialKind::ground_state;
    if (s == "scaled_ground_state") return InitialKind::scaled_ground_state;
    if (s == "file") return InitialKind::file;
    throw std::invalid_argument("unknown initial data kind '" + s + "'");
}

void InitialData::validate() const {
    if (kind == InitialKind::gaussian && !(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    if (!std::isfinite(amplitude)) throw std::invalid_argument("amplitude must be finite");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (kind == InitialKind::file && path.empty()) throw std::invalid_argument("file initial data needs a path");
    if (taper && !(taper_start > 0.0 && taper_start < taper_end && taper_end <= 1.0))
        throw std::invalid_argument("taper fractions must satisfy 0 < start < end <= 1");
}

double smooth_cutoff(double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (1.0 - x));
    const double b = std::exp(-1.0 / x);
    return a / (a + b);
}

RadialField build_initial(const InitialData& data, const ParamSet& params, GridPtr grid) {
    data.validate();
    if (grid->d() != params.d()) throw std::invalid_argument("grid dimension differs from params");
    switch (data.kind) {
        case InitialKind::gaussian: {
            const double a = data.amplitude, w = data.width;
            return RadialField::sample(grid, [&](double r) { return Complex(a * std::exp(-(r / w) * (r / w)), 0.0); });
        }
        case InitialKind::ground_state:
        case InitialKind::scaled_ground_state: {
            if (params.c() > 0.0) throw std::invalid_argument("the closed-form ground state needs c <= 0");
            const GroundStateSpec spec(params.d(), params.b(), params.c(), data.epsilon);
            const double a = data.kind == InitialKind::ground_state ? 1.0 : data.amplitude;
            const double lo = data.taper_start * grid->r_max();
            const double hi = data.taper_end * grid->r_max();
            return RadialField::sample(grid, [&](double r) {
                const double cut = data.taper ? smooth_cutoff((r - lo) / (hi - lo)) : 1.0;
                return Complex(a * cut * eval_W(spec, r), 0.0);
            });
        }
        case InitialKind::file: {
            auto f = read_field_csv(data.path, params.d());
            if (f.grid->n() != grid->n() || std::abs(f.grid->h() - grid->h()) > 1e-12 * grid->h())
                throw std::invalid_argument("field file does not match the configured grid");
            return RadialField(grid, std::move(f.values));
        }
    }
    throw std::logic_error("unhandled initial data kind");
}

}  // namespace inlsc
