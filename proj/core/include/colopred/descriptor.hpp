// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "colopred/boundary.hpp"

namespace colopred {

// One probabilistic latency bound: the probe's response time stays within
// time_ms with at least the given probability.
struct TimingRequirement {
    std::string probe;
    double probability = 0.0;
    double time_ms = 0.0;
};

// Parsed deployment descriptor of one microservice.
struct ServiceSpec {
    std::string name;
    std::string image;
    std::vector<std::string> probes;
    std::vector<TimingRequirement> requirements;
    ResourceProfile profile;
    std::optional<std::string> measured_workload;
};

// Parses an extended deployment descriptor (YAML). Probes may declare their
// timing requirements in a nested timingRequirements list or as sibling
// entries of the probes list; probes referenced only by requirements are
// treated as declared. Unknown keys are ignored. Throws ParseError for
// malformed documents and ValidationError for inconsistent requirements.
ServiceSpec parse_descriptor(const std::string& text);

ServiceSpec load_descriptor(const std::filesystem::path& path);

// Canonical YAML for the recognized fields; parse(serialize(spec)) == spec.
std::string serialize_descriptor(const ServiceSpec& spec);

} // namespace colopred
