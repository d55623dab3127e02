#include "mqstick/report.hpp"

#include <chrono>
#include <sstream>

namespace mqstick {

namespace {

std::string int_str(const Int& n) { return n.get_str(); }

std::string relation_str(LatticeRelation r) {
    switch (r) {
        case LatticeRelation::equal: return "equal";
        case LatticeRelation::first_inside_second: return "stick-inside-case";
        case LatticeRelation::second_inside_first: return "case-inside-stick";
        default: return "incomparable";
    }
}

ClaimVerdict verdict(std::string claim, bool ok, std::string lhs, std::string rhs) {
    return {std::move(claim), ok ? "verified" : "failed", std::move(lhs), std::move(rhs)};
}

std::string diag_string(const std::vector<Rat>& diag) {
    std::string out = "[";
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (i) out += ",";
        out += rat_string(rat_abs(diag[i]));
    }
    return out + "]";
}

std::vector<Rat> abs_diag(std::vector<Rat> d) {
    for (auto& x : d) x = rat_abs(x);
    return d;
}

// All claims derived from one bundle; the exact-identity core of verify.
std::vector<ClaimVerdict> evaluate_claims(const AnalysisResult& r) {
    std::vector<ClaimVerdict> out;
    const IdealBundle& B = r.bundle;
    const MultiQuadField& E = B.field;
    const int m = E.rank();
    const unsigned n = 1u << m;

    out.push_back(verdict("ann-generators-stabilized", B.ann.cert.stabilized,
                          "last change at prime " + std::to_string(B.ann.cert.last_prime_used),
                          "window " + std::to_string(B.ann.cert.window)));

    out.push_back(verdict("stick-integral", B.R.contains_lattice(B.stick),
                          "Stick", "inside Z[G]"));

    // Extensions to the maximal order are diagonal; compare against the
    // w2 diagonal and the predicted k2 diagonal.
    std::vector<Rat> ann_diag = abs_diag(s_module_diagonal(B.ann.lattice));
    std::vector<Rat> expected_ann{Rat(24)};
    for (unsigned b = 1; b < n; ++b)
        expected_ann.push_back(Rat(w2_minus_quadratic(E.subfield_d(b))));
    out.push_back(verdict("ann-extension-diagonal", ann_diag == expected_ann,
                          diag_string(ann_diag), diag_string(expected_ann)));

    std::vector<Rat> stick_diag = abs_diag(s_module_diagonal(B.stick));
    std::vector<Rat> expected_stick{Rat(B.bt.k2_F)};
    for (unsigned b = 1; b < n; ++b) expected_stick.push_back(Rat(B.bt.k2_minus[b]));
    out.push_back(verdict("stick-extension-diagonal", stick_diag == expected_stick,
                          diag_string(stick_diag), diag_string(expected_stick)));

    out.push_back(verdict("stick-extension-equals-predicted-module",
                          B.stick_S == B.fit_S_predicted, "Stick*S", "diag(k2)"));

    bool odd_ok = true;
    for (unsigned b = 0; b < n; ++b) {
        const Rat& c = stick_diag[b];
        const Rat& e = expected_stick[b];
        if (c == 0 && e == 0) continue;
        if (c == 0 || e == 0 || !is_integer(c) || !is_integer(e) ||
            odd_part(c.get_num()) != odd_part(e.get_num()))
            odd_ok = false;
    }
    out.push_back(verdict("odd-part-diagonals-match", odd_ok,
                          diag_string(stick_diag), diag_string(expected_stick)));

    // bt_orders construction already checked every sign and integrality.
    out.push_back(verdict("bt-sign-and-integrality", true,
                          "k2_F=" + int_str(B.bt.k2_F), "k2_E=" + int_str(B.bt.k2_E)));

    bool mod4_ok = true;
    for (unsigned b = 1; b < n; ++b)
        if ((w2_minus_quadratic(E.subfield_d(b)) - 2) % 4 != 0) mod4_ok = false;
    out.push_back(verdict("w2-minus-2-mod-4", mod4_ok, "w2^- values", "2 mod 4"));

    // Signed component identities: w2^- * theta_chi = +-k2^- with the sign
    // determined by the place-count parities.
    const auto theta_coords = character_transform(B.theta);
    bool comp_ok = true;
    const std::size_t sQ = places_above_Q(r.S_used);
    {
        int sign = sQ % 2 ? -1 : 1;
        if (Rat(24) * theta_coords[0] != Rat(sign) * Rat(B.bt.k2_F)) comp_ok = false;
    }
    for (unsigned b = 1; b < n; ++b) {
        const auto sub = E.subfield_data(CharacterIndex{b});
        const std::size_t sE = places_above_quadratic(sub.disc, r.S_used);
        int sign = (sQ + sE) % 2 ? -1 : 1;
        if (Rat(sub.w2_minus) * theta_coords[b] != Rat(sign) * Rat(B.bt.k2_minus[b]))
            comp_ok = false;
    }
    out.push_back(verdict("theta-component-identities", comp_ok,
                          "w2^- * theta_chi", "(+-) k2^-"));

    const auto sides = zeta_product_identity(E, r.S_used);
    out.push_back(verdict("zeta-product-identity", sides.holds(),
                          rat_string(sides.lhs), rat_string(sides.rhs)));

    {
        const Rat zE = zeta_S_minus1(E, r.S_used);
        const std::size_t sE = places_above(E, r.S_used);
        bool ok = (zE < 0) == (sE % 2 == 1);
        out.push_back(verdict("zeta-sign-matches-place-count", ok, rat_string(zE),
                              "(-1)^" + std::to_string(sE)));
    }

    {
        Int expect = m >= 1 ? int_pow2(static_cast<unsigned long>(m) * (1ul << (m - 1)))
                            : Int(1);
        out.push_back(verdict("maximal-order-index", r.indices.S_over_R == expect,
                              int_str(r.indices.S_over_R), int_str(expect)));
    }

    out.push_back(verdict("stick-index-identity", r.indices.index_identity_holds,
                          "(R:Stick)=" + int_str(r.indices.R_over_stick),
                          "|K2| (StickS:Stick) / (delta 2^((m-2)2^(m-1)+1))"));

    {
        Int S_over_stickS = index_of_sublattice(B.maximal_order, B.stick_S);
        Int lhs = r.indices.S_over_R * r.indices.R_over_stick;
        Int rhs = S_over_stickS * r.indices.stickS_over_stick;
        out.push_back(verdict("index-chain-consistency", lhs == rhs,
                              "(S:R)(R:Stick)=" + int_str(lhs),
                              "(S:StickS)(StickS:Stick)=" + int_str(rhs)));
    }

    if (m <= 2) {
        out.push_back(verdict("stick-index-equals-k2", r.indices.biquadratic_index_holds,
                              int_str(r.indices.R_over_stick), int_str(r.indices.k2_E_predicted)));
    } else {
        Int big = r.indices.R_over_stick, small = r.indices.k2_E_predicted;
        if (big < small) std::swap(big, small);
        bool pow2 = small != 0 && big % small == 0 && odd_part(Int(big / small)) == 1;
        out.push_back(verdict("stick-index-ratio-two-power", pow2,
                              int_str(r.indices.R_over_stick), int_str(r.indices.k2_E_predicted)));
    }

    // Augmentation image: projecting everything down to the base recovers
    // the scalar ideal k2_F Z.
    {
        std::vector<unsigned> all;
        for (unsigned s = 1; s < n; ++s) all.push_back(s);
        std::vector<GroupRingElem> gens;
        for (int i = 0; i < B.stick.rank(); ++i)
            gens.push_back(project_quotient(B.stick.row_as_elem(E.group(), i), all));
        IntegerLattice projected = gens.empty() ? IntegerLattice(1)
                                                : IntegerLattice::from_generators(gens);
        IntegerLattice base(1);
        base = IntegerLattice::from_rows(1, Int(1), {{B.bt.k2_F}});
        out.push_back(verdict("projection-to-base", projected == base,
                              "augmentation image", "k2_F Z"));
    }

    for (const auto& p : r.projections)
        out.push_back(verdict("projection-quadratic-d" + std::to_string(p.d), p.equal,
                              "pi(Stick_E)", "Stick_{E_chi}"));

    for (const auto& bc : r.base_changes)
        out.push_back(verdict("base-change-d" + std::to_string(bc.d), bc.contained,
                              "Stick_{E/E'}", "inside Stick_{E/Q}"));

    if (m == 2 && r.comparison) {
        const int delta = E.contains_first_layer() ? 2 : 1;
        out.push_back(verdict("ann-closed-form",
                              B.ann.lattice == ann_closed_biquadratic(E),
                              "streamed Ann", "closed-form basis"));
        out.push_back(verdict("ann-saturation-index",
                              index_of_sublattice(extend_to_maximal_order(B.ann.lattice),
                                                  B.ann.lattice) == 2 * delta,
                              "(AnnS:Ann)", std::to_string(2 * delta)));
        out.push_back(verdict("stick-closed-form",
                              B.stick == stick_closed_biquadratic(E, B.bt),
                              "computed Stick", "closed-form basis"));
        out.push_back(verdict("stick-saturation-index",
                              r.indices.stickS_over_stick == 2 * delta,
                              int_str(r.indices.stickS_over_stick), std::to_string(2 * delta)));
        if (!E.contains_first_layer()) {
            IntegerLattice annS = extend_to_maximal_order(B.ann.lattice);
            out.push_back(verdict("ann-equals-saturation-cap-R",
                                  B.ann.lattice == intersect(annS, B.R),
                                  "Ann", "(Ann S) cap Z[G]"));
            out.push_back(verdict("stick-equals-saturation-cap-theta",
                                  r.comparison->stick_is_saturation_cap_theta,
                                  "Stick", "(Stick S) cap (theta Z[G])"));
        }
        for (const auto& c : r.comparison->cases)
            out.push_back({"fit-position-case-" + c.label, "conditional",
                           "Stick is " + relation_str(c.stick_vs_case) +
                               " (index in diag module: " + int_str(c.index_in_fit_S) + ")",
                           c.note});
    }
    return out;
}

}  // namespace

bool AnalysisResult::any_failed() const {
    for (const auto& v : verdicts)
        if (v.status == "failed") return true;
    return false;
}

bool AnalysisResult::any_conditional() const {
    for (const auto& v : verdicts)
        if (v.status == "conditional") return true;
    return false;
}

AnalysisResult run_analysis(const std::vector<long>& generators, const PlaceSet& S,
                            const AnalysisOptions& options) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    auto elapsed = [&t0] {
        auto t1 = clock::now();
        double s = std::chrono::duration<double>(t1 - t0).count();
        t0 = t1;
        return s;
    };

    MultiQuadField E = MultiQuadField::build(generators);
    std::vector<long> completed = S.finite_primes;
    std::vector<long> added;
    for (long p : E.ramified_primes())
        if (!S.contains(p)) {
            completed.push_back(p);
            added.push_back(p);
        }
    PlaceSet S_used = make_place_set(completed);

    IdealBundle bundle = stick_ideal(E, S_used, options.prime_bound, options.window);
    AnalysisResult r{generators, S,  S_used, added, options, std::move(bundle),
                     {},         {Int(0), Int(0), Int(0), Int(0)},
                     {},         {}, {},     {},    {}};
    r.timings.emplace_back("bundle", elapsed());

    r.lvalues = lvalue_records(E, S_used);
    r.indices = index_report(r.bundle);
    if (E.rank() >= 2) r.projections = projection_check(r.bundle);
    if (E.rank() == 2) {
        r.base_changes = base_change_check(r.bundle, options.prime_bound, options.window);
        r.comparison = comparison_cases(r.bundle);
    }
    r.timings.emplace_back("checks", elapsed());
    r.verdicts = evaluate_claims(r);
    r.timings.emplace_back("verdicts", elapsed());
    return r;
}

ojson lattice_to_json(const IntegerLattice& L) {
    ojson j;
    j["denominator"] = L.denominator().get_str();
    ojson rows = ojson::array();
    for (const auto& row : L.basis()) {
        ojson r = ojson::array();
        for (const auto& x : row) r.push_back(x.get_str());
        rows.push_back(std::move(r));
    }
    j["hnf"] = std::move(rows);
    j["rank"] = L.rank();
    return j;
}

ojson elem_to_json(const GroupRingElem& a) {
    ojson coeffs = ojson::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(rat_string(c));
    return ojson{{"coeffs", std::move(coeffs)}};
}

namespace {

std::string join_longs(const std::vector<long>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

ojson report_to_json(const AnalysisResult& r) {
    const MultiQuadField& E = r.bundle.field;
    const unsigned n = 1u << E.rank();
    ojson j;

    ojson header;
    header["tool"] = "mqstick";
    header["version"] = kToolVersion;
    header["field"] = join_longs(r.generators);
    header["s_given"] = join_longs(r.S_given.finite_primes);
    header["s_used"] = join_longs(r.S_used.finite_primes);
    header["s_autocompleted"] = join_longs(r.S_added);
    header["prime_bound"] = r.options.prime_bound;
    header["window"] = r.options.window;
    header["conventions"] = ojson{
        {"group_bits", "bit i of sigma set iff sigma moves sqrt(d_i), generators in input order"},
        {"tau_chi", "lowest-index generator outside ker(chi)"},
        {"ramified_places", "one place per ramified prime"},
        {"rationals", "num/den strings"},
        {"k2_values", "BT-predicted: w2 * |zeta^S(-1)|"}};
    j["header"] = std::move(header);

    ojson field;
    field["m"] = E.rank();
    field["w2"] = E.w2().get_str();
    ojson subs = ojson::array();
    for (unsigned b = 1; b < n; ++b) {
        const auto sub = E.subfield_data(CharacterIndex{b});
        subs.push_back(ojson{{"chi", b},
                             {"d", sub.d},
                             {"disc", sub.disc},
                             {"first_layer", sub.is_first_layer},
                             {"w2", sub.w2.get_str()},
                             {"w2_minus", sub.w2_minus.get_str()},
                             {"delta", sub.delta}});
    }
    field["subfields"] = std::move(subs);
    j["field"] = std::move(field);

    ojson places;
    places["card_S_Q"] = places_above_Q(r.S_used);
    places["card_S_E"] = places_above(E, r.S_used);
    ojson per_sub = ojson::array();
    for (unsigned b = 1; b < n; ++b)
        per_sub.push_back(places_above_quadratic(E.subfield_disc(b), r.S_used));
    places["card_S_subfields"] = std::move(per_sub);
    j["places"] = std::move(places);

    ojson lv = ojson::array();
    for (const auto& rec : r.lvalues) {
        ojson e;
        e["chi"] = rec.chi.mask;
        e["disc"] = rec.disc;
        e["raw"] = rat_string(rec.raw);
        ojson euler = ojson::array();
        for (const auto& [p, mult] : rec.euler_factors)
            euler.push_back(ojson{{"p", p}, {"multiplier", rat_string(mult)}});
        e["euler"] = std::move(euler);
        e["adjusted"] = rat_string(rec.adjusted);
        lv.push_back(std::move(e));
    }
    j["lvalues"] = std::move(lv);

    ojson bt;
    bt["k2_F"] = r.bundle.bt.k2_F.get_str();
    ojson per_chi = ojson::array();
    for (unsigned b = 1; b < n; ++b) {
        const auto sub = E.subfield_data(CharacterIndex{b});
        per_chi.push_back(ojson{{"chi", b},
                                {"d", sub.d},
                                {"k2", r.bundle.bt.k2_subfield[b].get_str()},
                                {"k2_minus", r.bundle.bt.k2_minus[b].get_str()},
                                {"delta", sub.delta}});
    }
    bt["per_chi"] = std::move(per_chi);
    bt["k2_E"] = r.bundle.bt.k2_E.get_str();
    bt["theta"] = elem_to_json(r.bundle.theta);
    j["bt"] = std::move(bt);

    ojson lats;
    lats["R"] = lattice_to_json(r.bundle.R);
    lats["maximal_order"] = lattice_to_json(r.bundle.maximal_order);
    ojson ann = lattice_to_json(r.bundle.ann.lattice);
    ann["stabilized"] = r.bundle.ann.cert.stabilized;
    ann["last_prime_used"] = r.bundle.ann.cert.last_prime_used;
    ann["primes_consumed"] = r.bundle.ann.cert.primes_consumed;
    lats["ann"] = std::move(ann);
    lats["stick"] = lattice_to_json(r.bundle.stick);
    lats["stick_S"] = lattice_to_json(r.bundle.stick_S);
    lats["fit_S_predicted"] = lattice_to_json(r.bundle.fit_S_predicted);
    j["lattices"] = std::move(lats);

    ojson diagonals;
    ojson ad = ojson::array(), sd = ojson::array();
    for (const auto& x : s_module_diagonal(r.bundle.ann.lattice)) ad.push_back(rat_string(rat_abs(x)));
    for (const auto& x : s_module_diagonal(r.bundle.stick)) sd.push_back(rat_string(rat_abs(x)));
    diagonals["ann_extension"] = std::move(ad);
    diagonals["stick_extension"] = std::move(sd);
    j["diagonals"] = std::move(diagonals);

    ojson idx;
    idx["S_over_R"] = r.indices.S_over_R.get_str();
    idx["R_over_stick"] = r.indices.R_over_stick.get_str();
    idx["stickS_over_stick"] = r.indices.stickS_over_stick.get_str();
    idx["k2_E_predicted"] = r.indices.k2_E_predicted.get_str();
    idx["delta"] = r.indices.delta;
    j["indices"] = std::move(idx);

    if (r.comparison) {
        ojson comp;
        comp["first_layer_present"] = r.comparison->first_layer_present;
        ojson cases = ojson::array();
        for (const auto& c : r.comparison->cases) {
            cases.push_back(ojson{{"case", c.label},
                                  {"lattice", lattice_to_json(c.lattice)},
                                  {"index_in_diag_module", c.index_in_fit_S.get_str()},
                                  {"stick_relation", relation_str(c.stick_vs_case)},
                                  {"note", c.note}});
        }
        comp["cases"] = std::move(cases);
        j["comparison"] = std::move(comp);
    }

    ojson verdicts = ojson::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back(ojson{{"claim", v.claim},
                                 {"status", v.status},
                                 {"lhs", v.lhs},
                                 {"rhs", v.rhs}});
    j["verdicts"] = std::move(verdicts);

    if (r.options.with_timing) {
        ojson t;
        for (const auto& [k, v] : r.timings) t[k] = v;
        j["timing"] = std::move(t);
    }
    return j;
}

std::string report_json_to_csv(const ojson& report) {
    std::ostringstream out;
    out << "field,s,chi,d,disc,w2,w2_minus,delta,L_raw,L_S,k2,k2_minus\n";
    const std::string field = report.at("header").at("field").get<std::string>();
    const std::string s = report.at("header").at("s_used").get<std::string>();
    const auto& lv = report.at("lvalues");
    const auto& bt = report.at("bt");
    for (const auto& rec : lv) {
        unsigned chi = rec.at("chi").get<unsigned>();
        out << '"' << field << "\",\"" << s << "\"," << chi << ',';
        if (chi == 0) {
            out << "1,1,24,,," << rec.at("raw").get<std::string>() << ','
                << rec.at("adjusted").get<std::string>() << ','
                << bt.at("k2_F").get<std::string>() << ",\n";
            continue;
        }
        const auto& sub = report.at("field").at("subfields").at(chi - 1);
        const auto& per = bt.at("per_chi").at(chi - 1);
        out << sub.at("d").get<long>() << ',' << sub.at("disc").get<long>() << ','
            << sub.at("w2").get<std::string>() << ','
            << sub.at("w2_minus").get<std::string>() << ','
            << sub.at("delta").get<int>() << ','
            << rec.at("raw").get<std::string>() << ','
            << rec.at("adjusted").get<std::string>() << ','
            << per.at("k2").get<std::string>() << ','
            << per.at("k2_minus").get<std::string>() << '\n';
    }
    return out.str();
}

std::string report_json_to_markdown(const ojson& report) {
    std::ostringstream out;
    const auto& h = report.at("header");
    out << "# Field Q(sqrt{" << h.at("field").get<std::string>() << "}), S = {inf,"
        << h.at("s_used").get<std::string>() << "}\n\n";
    const auto& idx = report.at("indices");
    out << "| index | value |\n|---|---|\n";
    out << "| (S : R) | " << idx.at("S_over_R").get<std::string>() << " |\n";
    out << "| (R : Stick) | " << idx.at("R_over_stick").get<std::string>() << " |\n";
    out << "| (Stick S : Stick) | " << idx.at("stickS_over_stick").get<std::string>() << " |\n";
    out << "| predicted |K2| | " << idx.at("k2_E_predicted").get<std::string>() << " |\n\n";
    out << "| claim | status | lhs | rhs |\n|---|---|---|---|\n";
    for (const auto& v : report.at("verdicts"))
        out << "| " << v.at("claim").get<std::string>() << " | "
            << v.at("status").get<std::string>() << " | " << v.at("lhs").get<std::string>()
            << " | " << v.at("rhs").get<std::string>() << " |\n";
    return out.str();
}

}  // namespace mqstick
