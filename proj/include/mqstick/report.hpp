#ifndef MQSTICK_REPORT_HPP
#define MQSTICK_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mqstick/ideals.hpp"

namespace mqstick {

inline constexpr const char* kToolVersion = "0.1.0";

using ojson = nlohmann::ordered_json;

// One checked statement. "verified" and "failed" are exact computed facts;
// "conditional" marks statements whose truth rests on hypotheses the tool
// cannot decide (positions of the Fitting ideal, family conclusions).
struct ClaimVerdict {
    std::string claim;
    std::string status;  // verified | failed | conditional
    std::string lhs;
    std::string rhs;
};

struct AnalysisOptions {
    long prime_bound = 5000;
    long window = 25;
    bool with_timing = false;
};

struct AnalysisResult {
    std::vector<long> generators;
    PlaceSet S_given;
    PlaceSet S_used;
    std::vector<long> S_added;  // ramified primes auto-completed into S
    AnalysisOptions options;
    IdealBundle bundle;
    std::vector<LValueRecord> lvalues;
    IndexReport indices;
    std::vector<ProjectionVerdict> projections;
    std::vector<BaseChangeVerdict> base_changes;
    std::optional<ComparisonReport> comparison;
    std::vector<ClaimVerdict> verdicts;
    std::vector<std::pair<std::string, double>> timings;

    bool any_failed() const;
    bool any_conditional() const;
};

// Full pipeline for one (field, S) pair. S is auto-completed with missing
// ramified primes (recorded in S_added; the CLI also warns on stderr).
AnalysisResult run_analysis(const std::vector<long>& generators, const PlaceSet& S,
                            const AnalysisOptions& options = {});

ojson lattice_to_json(const IntegerLattice& L);
ojson elem_to_json(const GroupRingElem& a);
ojson report_to_json(const AnalysisResult& r);

// Re-emitters for reports previously produced by report_to_json.
std::string report_json_to_csv(const ojson& report);
std::string report_json_to_markdown(const ojson& report);

}  // namespace mqstick

#endif
