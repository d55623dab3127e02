#ifndef MQSTICK_SEARCH_HPP
#define MQSTICK_SEARCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "mqstick/report.hpp"

namespace mqstick {

// One row of the Q(sqrt2, sqrt r) family search. Qualifying r are products
// of distinct primes congruent to -1 mod 8, or twice such a product; for
// each, S = {inf, 2} plus the prime divisors of r, and a witness of
// x^2 - 2 y^2 = r certifies that r is a norm from Z[sqrt 2]. The headline
// conclusion (Stick inside the Fitting ideal, index 1 or 2) is conditional
// and reported as an annotation, never as a verified fact.
struct FamilySearchRow {
    long r = 0;
    std::vector<long> prime_factors;  // odd prime divisors
    bool twice = false;               // r = 2 * (odd product)
    bool primes_mod8_ok = false;      // every odd prime divisor is 7 mod 8
    bool primes_not_1_mod4 = false;
    std::optional<std::pair<Int, Int>> witness;  // x, y
    bool witness_valid = false;                  // revalidated at emission
    std::vector<long> s_used;
    bool s_family_ok = false;  // no finite prime of S is 1 mod 4
    IndexReport indices;
    bool index_checks_ok = false;
    // All checkable sufficient conditions hold: congruences, a valid norm
    // witness, and an admissible S.
    bool hypothesis_sufficient = false;
    std::string annotation;
};

struct SearchOptions {
    long r_max = 100;
    long y_bound = 1000000;
    long prime_bound = 5000;
    long window = 25;
    std::vector<long> extra_s;  // additional primes forced into S
};

// Enumerate the qualifying r up to r_max. Only qualifying values produce
// rows; an empty result is a valid outcome.
std::vector<FamilySearchRow> run_family_search(const SearchOptions& options);

ojson search_rows_to_json(const std::vector<FamilySearchRow>& rows,
                          const SearchOptions& options);

}  // namespace mqstick

#endif
