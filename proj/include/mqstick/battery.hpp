#ifndef MQSTICK_BATTERY_HPP
#define MQSTICK_BATTERY_HPP

#include <optional>
#include <string>
#include <vector>

#include "mqstick/report.hpp"

namespace mqstick {

// One battery row: a field together with the S-sets to run it against.
struct BatteryEntry {
    std::vector<long> generators;
    std::vector<std::vector<long>> s_sets;
};

// The built-in battery: the rationals, quadratic and triquadratic fields,
// and biquadratic fields from both saturation classes (with and without
// sqrt 2), three S-sets each.
std::vector<BatteryEntry> default_battery();

struct BatteryFile {
    std::vector<BatteryEntry> entries;
    std::optional<long> prime_bound;
    std::optional<long> window;
};

// Plain key/value battery format:
//   prime_bound = 5000
//   window = 25
//   [field]
//   generators = 3,7
//   s = 2,3,7
//   s = 2,3,7,11
// '#' starts a comment; generators may be empty for the rationals.
BatteryFile parse_battery_file(const std::string& path);

struct VerifyOptions {
    long prime_bound = 5000;
    long window = 25;
    int jobs = 0;  // 0 = one per hardware thread
};

struct VerifyRow {
    std::string field;
    std::string s;
    std::vector<ClaimVerdict> verdicts;
    std::string error;  // nonempty if the row aborted
};

struct VerifySummary {
    std::vector<VerifyRow> rows;
    long verified = 0, failed = 0, conditional = 0, errors = 0;
    bool all_hard_checks_pass() const { return failed == 0 && errors == 0; }
};

// Runs the analysis pipeline over every (field, S) pair; rows are
// independent and processed in a small work pool, results reported in
// battery order.
VerifySummary run_verify(const std::vector<BatteryEntry>& battery,
                         const VerifyOptions& options = {});

}  // namespace mqstick

#endif
