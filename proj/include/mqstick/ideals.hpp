#ifndef MQSTICK_IDEALS_HPP
#define MQSTICK_IDEALS_HPP

#include <string>
#include <vector>

#include "mqstick/fields.hpp"
#include "mqstick/lattice.hpp"
#include "mqstick/lvalues.hpp"

namespace mqstick {

// How the annihilator generator stream was cut off: the lattice is accepted
// once its HNF has not changed for `window` consecutive admissible primes.
struct StabilizationCert {
    bool stabilized = false;
    long prime_bound = 0;
    long window = 0;
    long last_prime_used = 0;   // last prime that changed the lattice
    long primes_consumed = 0;   // admissible primes fed in
};

struct AnnLattice {
    IntegerLattice lattice;
    StabilizationCert cert;
};

// The annihilator of W2(E) in Z[G], generated by sigma_q - q^2 over primes
// q coprime to w2(E) and the field discriminants. Streams primes up to
// prime_bound and stops early once the lattice is stable for `window`
// primes; an unstable result is reported in the certificate, not thrown.
AnnLattice ann_w2_generators(const MultiQuadField& E, long prime_bound,
                             long window = 25);

// Closed-form Z-basis of the annihilator for rank-2 fields: one shape when
// sqrt(2) is not in E (index 2 in the extension to the maximal order) and
// another when it is (index 4).
IntegerLattice ann_closed_biquadratic(const MultiQuadField& E);

// The maximal order S = (+)_chi Z e_chi of Q[G] as a lattice.
IntegerLattice maximal_order_lattice(const ExpTwoGroup& g);

// Smallest S-module containing L: diagonal in character coordinates, the
// chi entry being the Z-generator of the coordinate image.
IntegerLattice extend_to_maximal_order(const IntegerLattice& L);

// Nonnegative diagonal entries (indexed by chi mask) of the S-module
// extension of L.
std::vector<Rat> s_module_diagonal(const IntegerLattice& L);

// Everything the verification pipeline derives from one (field, S) pair.
struct IdealBundle {
    MultiQuadField field;
    PlaceSet S;
    AnnLattice ann;
    GroupRingElem theta;
    BTOrders bt;
    IntegerLattice R;              // Z[G] in the standard basis
    IntegerLattice maximal_order;  // S
    IntegerLattice stick;          // Ann * theta
    IntegerLattice stick_S;        // extension of stick to S
    IntegerLattice fit_S_predicted;  // diag(k2_F, k2_minus...) from bt

    IdealBundle(MultiQuadField f, PlaceSet s, AnnLattice a, GroupRingElem th,
                BTOrders b, IntegerLattice r, IntegerLattice mo, IntegerLattice st,
                IntegerLattice sts, IntegerLattice fsp)
        : field(std::move(f)), S(std::move(s)), ann(std::move(a)), theta(std::move(th)),
          bt(std::move(b)), R(std::move(r)), maximal_order(std::move(mo)),
          stick(std::move(st)), stick_S(std::move(sts)), fit_S_predicted(std::move(fsp)) {}
};

// Builds the full bundle: annihilator stream, theta, Stick = Ann*theta
// (integrality asserted), its extension to the maximal order, and the
// predicted diagonal module. Throws falsification_error if Stick is not
// integral, std::runtime_error if the annihilator stream did not stabilize.
IdealBundle stick_ideal(const MultiQuadField& E, const PlaceSet& S,
                        long prime_bound = 5000, long window = 25);

// Closed-form Z-basis of Stick for rank-2 fields: the annihilator shapes
// with w2 values replaced by the predicted k2 orders.
IntegerLattice stick_closed_biquadratic(const MultiQuadField& E, const BTOrders& bt);

struct IndexReport {
    Int S_over_R;            // (S : R)
    Int stickS_over_stick;   // (Stick*S : Stick)
    Int R_over_stick;        // (R : Stick)
    Int k2_E_predicted;
    int delta = 1;           // 2 iff sqrt(2) in E
    bool index_identity_holds = false;      // the (R:Stick) formula
    bool biquadratic_index_holds = false;   // (R:Stick) == k2_E (checked for m <= 2)
};

IndexReport index_report(const IdealBundle& bundle);

// For every quadratic subfield E': does projecting Stick_{E/Q} onto
// Z[Gal(E'/Q)] give exactly the independently computed Stick_{E'/Q}?
struct ProjectionVerdict {
    CharacterIndex chi;
    long d = 0;
    bool equal = false;
};
std::vector<ProjectionVerdict> projection_check(const IdealBundle& bundle);

// Stick of the quadratic step E/E' as a lattice in Z[Gal(E/E')] (rank-1
// group ring), from the relative annihilator stream and theta_relative.
AnnLattice relative_stick_quadratic(const MultiQuadField& E, CharacterIndex base_chi,
                                    const PlaceSet& S, long prime_bound = 5000,
                                    long window = 25);

// For every intermediate quadratic base E' of a rank-2 field: is the image
// of Stick_{E/E'} in Z[G] contained in Stick_{E/Q}?
struct BaseChangeVerdict {
    CharacterIndex chi;
    long d = 0;
    bool contained = false;
    StabilizationCert cert;
};
std::vector<BaseChangeVerdict> base_change_check(const IdealBundle& bundle,
                                                 long prime_bound = 5000,
                                                 long window = 25);

// Candidate positions of the Fitting ideal between 2*Fit*S and Fit*S for a
// rank-2 field, reported against the computed position of Stick. Nothing
// here asserts which case actually occurs; the relations to Stick are exact
// computed facts, the case semantics are annotations.
struct ComparisonCase {
    std::string label;          // "a", "b", "c" or "full"
    IntegerLattice lattice;
    Int index_in_fit_S;
    LatticeRelation stick_vs_case;
    std::string note;
};

struct ComparisonReport {
    bool first_layer_present = false;
    std::vector<ComparisonCase> cases;
    // For fields without sqrt(2): Stick == (Stick*S) cap (theta*R).
    bool stick_is_saturation_cap_theta = false;
};

ComparisonReport comparison_cases(const IdealBundle& bundle);

}  // namespace mqstick

#endif
