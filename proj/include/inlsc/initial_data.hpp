#pragma once

#include <string>

#include "inlsc/params.hpp"
#include "inlsc/radial_grid.hpp"

namespace inlsc {

enum class InitialKind { gaussian, ground_state, scaled_ground_state, file };

std::string to_string(InitialKind k);
InitialKind parse_initial_kind(const std::string& s);

struct InitialData {
    InitialKind kind = InitialKind::gaussian;
    double amplitude = 1.0;  // gaussian amplitude, or the factor a for scaled_ground_state
    double width = 1.0;      // gaussian: amplitude * exp(-(r/width)^2)
    double epsilon = 1.0;
    std::string path;
    /// W decays like r^{-(d-2)} and is not square integrable for d <= 4, so profiles built
    /// from it are rolled off smoothly between taper_start and taper_end (fractions of r_max).
    bool taper = true;
    double taper_start = 0.5;
    double taper_end = 0.9;

    void validate() const;
};

/// C-infinity step: 1 for x <= 0, 0 for x >= 1.
double smooth_cutoff(double x);

/// Samples the initial field on `grid`. Ground-state kinds need c <= 0. A file must hold a
/// cell-centred profile on exactly this grid.
RadialField build_initial(const InitialData& data, const ParamSet& params, GridPtr grid);

}  // namespace inlsc
