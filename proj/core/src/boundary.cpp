// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "colopred/boundary.hpp"

#include <cmath>

#include "colopred/errors.hpp"

namespace colopred {

void validate_profile(const ResourceProfile& profile) {
    const double fields[] = {profile.cpu, profile.io, profile.llc_per_ms};
    for (double v : fields) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError("resource profile fields must be finite and >= 0");
        }
    }
}

void validate_config(const BoundaryConfig& config) {
    const double limits[] = {config.cpu_limit, config.io_limit, config.llc_limit};
    for (double v : limits) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw ValidationError("boundary limits must be finite and > 0");
        }
    }
}

BoundaryReport check_scenario(std::span<const ResourceProfile> profiles,
                              const BoundaryConfig& config) {
    if (profiles.empty()) {
        throw ValidationError("boundary check needs at least one profile");
    }
    validate_config(config);

    double cpu = 0.0, io = 0.0, llc = 0.0;
    for (const auto& p : profiles) {
        validate_profile(p);
        cpu += p.cpu;
        io += p.io;
        llc += p.llc_per_ms;
    }

    BoundaryReport report;
    report.dimensions[0] = {"cpu", cpu, config.cpu_limit, cpu <= config.cpu_limit};
    report.dimensions[1] = {"io", io, config.io_limit, io <= config.io_limit};
    report.dimensions[2] = {"llc", llc, config.llc_limit, llc <= config.llc_limit};
    report.pass = report.cpu().pass && report.io().pass && report.llc().pass;
    return report;
}

} // namespace colopred
