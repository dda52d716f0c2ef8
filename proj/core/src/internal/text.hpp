// Copyright the colopred contributors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "colopred/errors.hpp"

// Small CSV / number helpers shared by the file-format code. CSV fields never
// need quoting here: names are validated to contain no commas or newlines.
namespace colopred::text {

inline std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

// Shortest decimal text that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string location(std::string_view file, int line) {
    return std::string(file) + ":" + std::to_string(line);
}

inline double parse_double(std::string_view field, std::string_view file, int line) {
    double v = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw ParseError(location(file, line) + ": expected a real number, got '" +
                         std::string(field) + "'");
    }
    return v;
}

inline long long parse_int(std::string_view field, std::string_view file, int line) {
    long long v = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw ParseError(location(file, line) + ": expected an integer, got '" +
                         std::string(field) + "'");
    }
    return v;
}

} // namespace colopred::text
