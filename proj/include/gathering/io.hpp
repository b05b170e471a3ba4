#pragma once

#include "gathering/configuration.hpp"
#include "gathering/engine.hpp"
#include "gathering/impossibility.hpp"

#include <cstdint>
#include <string>

namespace gathering {

// --- configuration files ---------------------------------------------------
// One robot per line: an exact "num/den" angle, optionally followed by a
// multiplicity suffix "xK". '#' starts a comment, blank lines are skipped.
// Writing emits canonical ascending order, so parse/format round-trips are
// byte-exact.

Configuration parse_config(const std::string& text);
std::string format_config(const Configuration& S);
Configuration load_config(const std::string& path);
void save_config(const Configuration& S, const std::string& path);

// --- JSON Lines traces -----------------------------------------------------
// A trace is one header line followed by one line per step. All angles are
// exact rational strings; identical runs serialize to identical bytes.

struct TraceHeader {
    int n = 0;
    Visibility vis = Visibility::full();
    std::string algorithm;
    std::string scheduler;
    std::uint64_t seed = 0;
    int step_cap = 0;
};

std::string format_trace_header(const TraceHeader& header);
TraceHeader parse_trace_header(const std::string& line);
std::string format_trace_record(const TraceRecord& record);
TraceRecord parse_trace_record(const std::string& line);

// --- certificates ----------------------------------------------------------
// Pretty-printed JSON with every angle and coefficient as an exact rational
// string and every verification check listed by name with its outcome.

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

}  // namespace gathering
