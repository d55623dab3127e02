// Command-line front end: analyze one field, verify the battery, search the
// Q(sqrt2, sqrt r) family, or re-emit a report in another format.
//
// Exit codes: 0 all checks verified; 2 run succeeded but the headline
// findings are conditional-only (search); 1 falsification, failed check or
// error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mqstick/battery.hpp"
#include "mqstick/report.hpp"
#include "mqstick/search.hpp"

namespace {

using namespace mqstick;

std::vector<long> parse_spec(const std::string& spec) {
    std::vector<long> out;
    if (spec.empty() || spec == "q" || spec == "Q") return out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stol(tok));
    }
    return out;
}

// The only environment knob: MQSTICK_OUT_DIR redirects relative --out paths.
std::string resolve_out_path(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("MQSTICK_OUT_DIR");
    if (!dir || !*dir) return path;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + path;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    const std::string resolved = resolve_out_path(out_path);
    std::ofstream out(resolved);
    if (!out) throw std::runtime_error("cannot write to " + resolved);
    out << text << "\n";
}

int exit_code_for(bool any_failed, bool any_verified, bool any_conditional) {
    if (any_failed) return 1;
    if (any_verified) return 0;
    return any_conditional ? 2 : 0;
}

int cmd_analyze(const std::string& field_spec, const std::string& s_spec,
                const AnalysisOptions& opts, const std::string& out_path,
                const std::string& format) {
    AnalysisResult res =
        run_analysis(parse_spec(field_spec), make_place_set(parse_spec(s_spec)), opts);
    for (long p : res.S_added)
        std::cerr << "warning: added ramified prime " << p << " to S\n";
    ojson j = report_to_json(res);
    if (format == "csv")
        write_output(report_json_to_csv(j), out_path);
    else if (format == "markdown")
        write_output(report_json_to_markdown(j), out_path);
    else
        write_output(j.dump(2), out_path);
    bool any_verified = false;
    for (const auto& v : res.verdicts)
        if (v.status == "verified") any_verified = true;
    return exit_code_for(res.any_failed(), any_verified, res.any_conditional());
}

int cmd_verify(const std::string& battery_path, VerifyOptions opts,
               const std::string& out_path) {
    std::vector<BatteryEntry> battery;
    if (battery_path.empty()) {
        battery = default_battery();
    } else {
        BatteryFile file = parse_battery_file(battery_path);
        battery = file.entries;
        if (file.prime_bound) opts.prime_bound = *file.prime_bound;
        if (file.window) opts.window = *file.window;
    }
    VerifySummary summary = run_verify(battery, opts);

    std::ostringstream table;
    for (const auto& row : summary.rows) {
        table << "field [" << row.field << "]  S={inf" << (row.s.empty() ? "" : ",")
              << row.s << "}\n";
        if (!row.error.empty()) {
            table << "  ERROR: " << row.error << "\n";
            continue;
        }
        for (const auto& v : row.verdicts)
            if (v.status != "verified")
                table << "  " << v.status << "  " << v.claim << "  lhs=" << v.lhs
                      << " rhs=" << v.rhs << "\n";
    }
    table << "claims verified: " << summary.verified << ", failed: " << summary.failed
          << ", conditional: " << summary.conditional << ", row errors: " << summary.errors;
    std::cout << table.str() << "\n";

    if (!out_path.empty()) {
        ojson j;
        j["tool"] = "mqstick";
        j["version"] = kToolVersion;
        ojson rows = ojson::array();
        for (const auto& row : summary.rows) {
            ojson r;
            r["field"] = row.field;
            r["s"] = row.s;
            if (!row.error.empty()) r["error"] = row.error;
            ojson vs = ojson::array();
            for (const auto& v : row.verdicts)
                vs.push_back(ojson{{"claim", v.claim},
                                   {"status", v.status},
                                   {"lhs", v.lhs},
                                   {"rhs", v.rhs}});
            r["verdicts"] = std::move(vs);
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
        j["summary"] = ojson{{"verified", summary.verified},
                             {"failed", summary.failed},
                             {"conditional", summary.conditional},
                             {"errors", summary.errors}};
        write_output(j.dump(2), out_path);
    }
    if (!summary.all_hard_checks_pass()) return 1;
    return 0;
}

int cmd_search(const SearchOptions& opts, const std::string& out_path) {
    std::vector<FamilySearchRow> rows = run_family_search(opts);
    bool any_failed = false;
    std::ostringstream table;
    table << "r    factors        witness        (R:Stick)      annotation\n";
    for (const auto& row : rows) {
        if ((row.witness && !row.witness_valid) || !row.index_checks_ok) any_failed = true;
        table << row.r << (row.twice ? " =2*prod " : "         ") << " [";
        for (std::size_t i = 0; i < row.prime_factors.size(); ++i)
            table << (i ? "," : "") << row.prime_factors[i];
        table << "]  ";
        if (row.witness)
            table << "(" << row.witness->first.get_str() << ","
                  << row.witness->second.get_str() << ")";
        else
            table << "none";
        table << "  " << row.indices.R_over_stick.get_str() << "  " << row.annotation
              << "\n";
    }
    table << rows.size() << " qualifying r <= " << opts.r_max;
    std::cout << table.str() << "\n";
    if (!out_path.empty()) write_output(search_rows_to_json(rows, opts).dump(2), out_path);
    if (any_failed) return 1;
    return rows.empty() ? 0 : 2;
}

int cmd_emit(const std::string& in_path, const std::string& format,
             const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open report: " + in_path);
    ojson report = ojson::parse(in);
    if (format == "json")
        write_output(report.dump(2), out_path);
    else if (format == "csv")
        write_output(report_json_to_csv(report), out_path);
    else if (format == "markdown")
        write_output(report_json_to_markdown(report), out_path);
    else
        throw std::invalid_argument("unknown format: " + format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Stickelberger-ideal computations for multi-quadratic fields"};
    app.require_subcommand(1);

    std::string field_spec, s_spec, out_path, battery_path, in_path;
    std::string format = "json";
    AnalysisOptions aopts;
    VerifyOptions vopts;
    SearchOptions sopts;
    std::string extra_s_spec;

    auto* analyze = app.add_subcommand("analyze", "analyze one field / S pair");
    analyze->add_option("--field", field_spec,
                        "comma-separated generators, e.g. 2,5 (empty or Q for the rationals)");
    analyze->add_option("--s", s_spec, "finite primes of S, e.g. 2,5 (infinite place implicit)");
    analyze->add_option("--prime-bound", aopts.prime_bound, "annihilator generator prime bound");
    analyze->add_option("--window", aopts.window, "stabilization window");
    analyze->add_option("--out", out_path, "write the report here instead of stdout");
    analyze->add_option("--format", format, "json (default), csv, or markdown");
    analyze->add_flag("--timings", aopts.with_timing,
                      "include wall times (breaks byte-for-byte determinism)");

    auto* verify = app.add_subcommand("verify", "run the exact-identity suite over a battery");
    verify->add_option("--battery", battery_path, "battery file (default: built-in battery)");
    verify->add_option("--prime-bound", vopts.prime_bound, "annihilator generator prime bound");
    verify->add_option("--window", vopts.window, "stabilization window");
    verify->add_option("--jobs", vopts.jobs, "worker threads (0 = hardware)");
    verify->add_option("--out", out_path, "also write a JSON summary here");

    auto* search = app.add_subcommand("search", "enumerate the Q(sqrt2,sqrt r) family");
    search->add_option("--r-max", sopts.r_max, "upper bound for r")->required();
    search->add_option("--y-bound", sopts.y_bound, "norm-form search bound on y");
    search->add_option("--prime-bound", sopts.prime_bound, "annihilator generator prime bound");
    search->add_option("--s-extra", extra_s_spec, "extra primes to force into S");
    search->add_option("--out", out_path, "also write JSON rows here");

    auto* emit = app.add_subcommand("emit", "re-emit an analyze report");
    emit->add_option("--in", in_path, "input JSON report")->required();
    emit->add_option("--format", format,
                     "json, csv (one row per character), or markdown")->required();
    emit->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(field_spec, s_spec, aopts, out_path, format);
        if (verify->parsed()) return cmd_verify(battery_path, vopts, out_path);
        if (search->parsed()) {
            sopts.extra_s = parse_spec(extra_s_spec);
            return cmd_search(sopts, out_path);
        }
        if (emit->parsed()) return cmd_emit(in_path, format, out_path);
    } catch (const mqstick::falsification_error& e) {
        std::cerr << "FALSIFICATION: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
