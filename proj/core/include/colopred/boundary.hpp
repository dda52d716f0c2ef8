// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <array>
#include <span>
#include <string>

namespace colopred {

// Resource demand of one running service, as fractions of one node's CPU and
// IO bandwidth capacity plus its last-level-cache miss rate per millisecond.
struct ResourceProfile {
    double cpu = 0.0;
    double io = 0.0;
    double llc_per_ms = 0.0;
};

// Utilization region in which predictions are trustworthy. The defaults are
// the measured limits of the reference platform; they are hardware specific
// and meant to be overridden from configuration.
struct BoundaryConfig {
    double cpu_limit = 0.94;
    double io_limit = 1.00;
    double llc_limit = 210000.0;
};

struct DimensionReport {
    std::string dimension;
    double aggregate = 0.0;
    double limit = 0.0;
    bool pass = true;
};

struct BoundaryReport {
    std::array<DimensionReport, 3> dimensions;
    bool pass = true;

    const DimensionReport& cpu() const { return dimensions[0]; }
    const DimensionReport& io() const { return dimensions[1]; }
    const DimensionReport& llc() const { return dimensions[2]; }
};

// Sums each dimension across the profiles and compares against the limits.
// Passes overall iff every dimension is within its limit.
BoundaryReport check_scenario(std::span<const ResourceProfile> profiles,
                              const BoundaryConfig& config);

// Throws ValidationError when a profile has a negative or non-finite field
// or a config limit is not positive.
void validate_profile(const ResourceProfile& profile);
void validate_config(const BoundaryConfig& config);

} // namespace colopred
