#pragma once

// Machine-readable records emitted by the command-line tool. Every number is
// written as a decimal string so 64-bit values survive JSON consumers that
// parse numbers as doubles.

#include <charconv>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

namespace dickson {

struct OutputRecord {
    std::string command;
    std::map<std::string, std::string> inputs;
    nlohmann::ordered_json result = nlohmann::ordered_json::object();
    std::string method;
    double elapsed_ms = 0.0;

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

inline std::string dec(std::uint64_t v) { return std::to_string(v); }
inline std::string dec(std::int64_t v) { return std::to_string(v); }
inline std::string dec(unsigned v) { return std::to_string(v); }

inline nlohmann::ordered_json dec_array(const std::vector<std::uint64_t>& vs) {
    auto arr = nlohmann::ordered_json::array();
    for (auto v : vs) arr.push_back(dec(v));
    return arr;
}

/// Shortest string that parses back to the same double.
inline std::string format_ms(double ms) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, ms);
    if (ec != std::errc{}) throw std::runtime_error("format_ms: conversion failed");
    return std::string(buf, end);
}

inline double parse_ms(const std::string& s) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("bad elapsed_ms: " + s);
    return out;
}

inline void to_json(nlohmann::ordered_json& j, const OutputRecord& r) {
    j = nlohmann::ordered_json{{"command", r.command},
                               {"inputs", r.inputs},
                               {"result", r.result},
                               {"method", r.method},
                               {"elapsed_ms", format_ms(r.elapsed_ms)}};
}

inline void from_json(const nlohmann::ordered_json& j, OutputRecord& r) {
    j.at("command").get_to(r.command);
    j.at("inputs").get_to(r.inputs);
    r.result = j.at("result");
    j.at("method").get_to(r.method);
    r.elapsed_ms = parse_ms(j.at("elapsed_ms").get<std::string>());
}

}  // namespace dickson
