#include "mqstick/search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace mqstick {

namespace {

struct Factored {
    std::vector<long> primes;
    bool squarefree = true;
};

Factored factor(long n) {
    Factored f;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        f.primes.push_back(p);
        n /= p;
        if (n % p == 0) f.squarefree = false;
        while (n % p == 0) n /= p;
    }
    if (n > 1) f.primes.push_back(n);
    return f;
}

}  // namespace

std::vector<FamilySearchRow> run_family_search(const SearchOptions& options) {
    if (options.r_max < 7) throw std::invalid_argument("r_max must be at least 7");
    for (long p : options.extra_s)
        if (!is_prime(p))
            throw std::invalid_argument("extra S entry is not prime: " + std::to_string(p));

    std::vector<long> qualifying;
    for (long r = 7; r <= options.r_max; ++r) {
        Factored f = factor(r);
        if (!f.squarefree) continue;
        std::vector<long> odd_primes;
        for (long p : f.primes)
            if (p != 2) odd_primes.push_back(p);
        if (odd_primes.empty()) continue;
        if (std::all_of(odd_primes.begin(), odd_primes.end(),
                        [](long p) { return p % 8 == 7; }))
            qualifying.push_back(r);
    }

    auto run_row = [&options](long r) {
        Factored f = factor(r);
        std::vector<long> odd_primes;
        for (long p : f.primes)
            if (p != 2) odd_primes.push_back(p);

        FamilySearchRow row;
        row.r = r;
        row.prime_factors = odd_primes;
        row.twice = r % 2 == 0;
        row.primes_mod8_ok = true;
        row.primes_not_1_mod4 = std::all_of(f.primes.begin(), f.primes.end(),
                                            [](long p) { return p % 4 != 1; });

        row.witness = norm_form_solve(2, r, options.y_bound);
        if (row.witness) {
            const auto& [x, y] = *row.witness;
            row.witness_valid = (x * x - 2 * y * y == r);
        }

        std::vector<long> s = {2};
        s.insert(s.end(), odd_primes.begin(), odd_primes.end());
        s.insert(s.end(), options.extra_s.begin(), options.extra_s.end());
        PlaceSet S = make_place_set(std::move(s));
        row.s_used = S.finite_primes;
        row.s_family_ok = std::none_of(S.finite_primes.begin(), S.finite_primes.end(),
                                       [](long p) { return p % 4 == 1; });

        AnalysisOptions aopts;
        aopts.prime_bound = options.prime_bound;
        aopts.window = options.window;
        AnalysisResult res = run_analysis({2, r}, S, aopts);
        row.indices = res.indices;
        row.index_checks_ok = res.indices.index_identity_holds &&
                              res.indices.biquadratic_index_holds && !res.any_failed();

        row.hypothesis_sufficient =
            row.witness_valid && row.primes_not_1_mod4 && row.s_family_ok;
        if (row.hypothesis_sufficient)
            row.annotation = "conditional: Stick lies in the Fitting ideal with index 1 or 2";
        else if (!row.s_family_ok)
            row.annotation = "flagged: S contains a prime 1 mod 4, family conclusion not applicable";
        else
            row.annotation = "no norm witness within bound; family conclusion not certified";
        return row;
    };

    // rows are independent pipelines; same pool shape as the battery runner
    std::vector<FamilySearchRow> rows(qualifying.size());
    unsigned pool = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                       qualifying.empty() ? 1 : qualifying.size());
    if (pool <= 1) {
        for (std::size_t i = 0; i < qualifying.size(); ++i) rows[i] = run_row(qualifying[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < pool; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= qualifying.size()) return;
                    rows[i] = run_row(qualifying[i]);
                }
            });
        for (auto& t : workers) t.join();
    }
    return rows;
}

ojson search_rows_to_json(const std::vector<FamilySearchRow>& rows,
                          const SearchOptions& options) {
    ojson j;
    j["tool"] = "mqstick";
    j["version"] = kToolVersion;
    j["r_max"] = options.r_max;
    j["y_bound"] = options.y_bound;
    j["prime_bound"] = options.prime_bound;
    ojson arr = ojson::array();
    for (const auto& row : rows) {
        ojson e;
        e["r"] = row.r;
        e["prime_factors"] = row.prime_factors;
        e["twice"] = row.twice;
        e["primes_mod8_ok"] = row.primes_mod8_ok;
        e["primes_not_1_mod4"] = row.primes_not_1_mod4;
        if (row.witness)
            e["witness"] = ojson{{"x", row.witness->first.get_str()},
                                 {"y", row.witness->second.get_str()},
                                 {"valid", row.witness_valid}};
        else
            e["witness"] = nullptr;
        e["s"] = row.s_used;
        e["s_family_ok"] = row.s_family_ok;
        e["hypothesis_sufficient"] = row.hypothesis_sufficient;
        e["indices"] = ojson{{"S_over_R", row.indices.S_over_R.get_str()},
                             {"R_over_stick", row.indices.R_over_stick.get_str()},
                             {"stickS_over_stick", row.indices.stickS_over_stick.get_str()},
                             {"k2_E_predicted", row.indices.k2_E_predicted.get_str()},
                             {"index_checks_ok", row.index_checks_ok}};
        e["annotation"] = row.annotation;
        arr.push_back(std::move(e));
    }
    j["rows"] = std::move(arr);
    return j;
}

}  // namespace mqstick
