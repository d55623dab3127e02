#include "mqstick/battery.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace mqstick {

std::vector<BatteryEntry> default_battery() {
    return {
        {{}, {{}, {2}, {2, 3}}},
        {{2}, {{2}, {2, 3}, {2, 5}}},
        {{3}, {{2, 3}, {2, 3, 5}, {2, 3, 7}}},
        {{5}, {{5}, {2, 5}, {3, 5}}},
        {{2, 3}, {{2, 3}, {2, 3, 5}, {2, 3, 7}}},
        {{2, 5}, {{2, 5}, {2, 3, 5}, {2, 5, 7}}},
        {{2, 7}, {{2, 7}, {2, 3, 7}, {2, 5, 7}}},
        {{2, 11}, {{2, 11}, {2, 3, 11}, {2, 5, 11}}},
        {{3, 5}, {{2, 3, 5}, {2, 3, 5, 7}, {2, 3, 5, 11}}},
        {{3, 7}, {{2, 3, 7}, {2, 3, 5, 7}, {2, 3, 7, 11}}},
        {{3, 11}, {{2, 3, 11}, {2, 3, 5, 11}, {2, 3, 7, 11}}},
        {{5, 7}, {{2, 5, 7}, {2, 3, 5, 7}, {2, 5, 7, 11}}},
        {{5, 11}, {{2, 5, 11}, {2, 3, 5, 11}, {2, 5, 7, 11}}},
        {{7, 11}, {{2, 7, 11}, {2, 3, 7, 11}, {2, 5, 7, 11}}},
        {{5, 13}, {{5, 13}, {2, 5, 13}, {3, 5, 13}}},
        {{2, 3, 5}, {{2, 3, 5}, {2, 3, 5, 7}, {2, 3, 5, 11}}},
        {{3, 5, 7}, {{2, 3, 5, 7}, {2, 3, 5, 7, 11}, {2, 3, 5, 7, 13}}},
    };
}

namespace {

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto a = tok.find_first_not_of(" \t");
        auto b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        out.push_back(std::stol(tok.substr(a, b - a + 1)));
    }
    return out;
}

std::string join_longs(const std::vector<long>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

BatteryFile parse_battery_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open battery file: " + path);
    BatteryFile file;
    BatteryEntry* current = nullptr;
    bool have_generators = false;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        auto b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        const std::string where = path + ":" + std::to_string(lineno);
        if (line == "[field]") {
            if (current && !have_generators)
                throw std::invalid_argument(where + ": previous [field] has no generators line");
            file.entries.push_back({});
            current = &file.entries.back();
            have_generators = false;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + ": expected key = value");
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string value = line.substr(eq + 1);
        if (key == "prime_bound") {
            file.prime_bound = std::stol(value);
        } else if (key == "window") {
            file.window = std::stol(value);
        } else if (key == "generators") {
            if (!current) throw std::invalid_argument(where + ": generators outside [field]");
            current->generators = parse_long_list(value);
            have_generators = true;
        } else if (key == "s") {
            if (!current) throw std::invalid_argument(where + ": s outside [field]");
            current->s_sets.push_back(parse_long_list(value));
        } else {
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
        }
    }
    if (current && !have_generators)
        throw std::invalid_argument(path + ": last [field] has no generators line");
    for (auto& e : file.entries)
        if (e.s_sets.empty()) e.s_sets.push_back({});  // ramified primes auto-complete
    if (file.entries.empty())
        throw std::invalid_argument(path + ": no [field] entries");
    return file;
}

VerifySummary run_verify(const std::vector<BatteryEntry>& battery,
                         const VerifyOptions& options) {
    struct Job {
        std::vector<long> gens;
        std::vector<long> s;
    };
    std::vector<Job> jobs;
    for (const auto& entry : battery)
        for (const auto& s : entry.s_sets) jobs.push_back({entry.generators, s});

    AnalysisOptions aopts;
    aopts.prime_bound = options.prime_bound;
    aopts.window = options.window;

    auto run_one = [&aopts](const Job& job) {
        VerifyRow row;
        row.field = join_longs(job.gens);
        row.s = join_longs(job.s);
        try {
            MultiQuadField E = MultiQuadField::build(job.gens);
            PlaceSet S = make_place_set(job.s);
            // battery rows are strict: a missing ramified prime is a config
            // error; an empty s-line means "ramified primes only"
            if (!job.s.empty() && !covers_ramified(E, S))
                throw std::invalid_argument("config error: S is missing a ramified prime");
            if (job.s.empty()) S = make_place_set(E.ramified_primes());
            AnalysisResult res = run_analysis(job.gens, S, aopts);
            row.s = join_longs(res.S_used.finite_primes);
            row.verdicts = std::move(res.verdicts);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    unsigned pool = options.jobs > 0 ? static_cast<unsigned>(options.jobs)
                                     : std::max(1u, std::thread::hardware_concurrency());
    pool = std::min<unsigned>(pool, jobs.size() ? jobs.size() : 1);

    VerifySummary summary;
    summary.rows.resize(jobs.size());
    if (pool <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) summary.rows[i] = run_one(jobs[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < pool; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) return;
                    summary.rows[i] = run_one(jobs[i]);
                }
            });
        for (auto& t : workers) t.join();
    }

    for (const auto& row : summary.rows) {
        if (!row.error.empty()) ++summary.errors;
        for (const auto& v : row.verdicts) {
            if (v.status == "verified") ++summary.verified;
            else if (v.status == "failed") ++summary.failed;
            else ++summary.conditional;
        }
    }
    return summary;
}

}  // namespace mqstick
