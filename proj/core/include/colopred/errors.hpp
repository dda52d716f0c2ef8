// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <stdexcept>
#include <string>

namespace colopred {

// An input file could not be read or decoded. The message carries the file
// name and, where known, the offending line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A structural invariant of a domain value was violated. The message names
// the invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace colopred
