#ifndef MQSTICK_LVALUES_HPP
#define MQSTICK_LVALUES_HPP

#include <vector>

#include "mqstick/fields.hpp"
#include "mqstick/groupring.hpp"
#include "mqstick/types.hpp"

namespace mqstick {

// Exact special values at s = -1. Everything here is a finite rational
// computation through generalized Bernoulli sums; there is no analytic
// approximation anywhere.

// Second Bernoulli polynomial B2(x) = x^2 - x + 1/6.
Rat bernoulli_b2(const Rat& x);

// L(-1, chi_D) for the quadratic character of fundamental discriminant
// D > 1, via L(-1, chi) = -B_{2,chi}/2 with
// B_{2,chi} = f * sum_{a=1..f} chi(a) B2(a/f), f = |D|.
// D = 1 gives zeta(-1) = -1/12.
Rat dirichlet_L_minus1(long disc);

// 1 - chi_D(p) * p, the factor removing the Euler product term at p when
// evaluated at s = -1. chi_D(p) = 0 at ramified p (Kronecker convention),
// so ramified multipliers are 1. disc = 1 means the trivial character.
Rat euler_multiplier_minus1(long disc, long p);

// L^S(-1, chi_D): the L-value with Euler factors at S removed.
Rat lvalue_S_minus1(long disc, const PlaceSet& S);

// zeta_E^S(-1) = product of L^S(-1, chi) over all characters of Gal(E/Q).
Rat zeta_S_minus1(const MultiQuadField& E, const PlaceSet& S);

struct LValueRecord {
    CharacterIndex chi;
    long disc = 1;  // 1 for the trivial character
    Rat raw;        // L(-1, chi)
    std::vector<std::pair<long, Rat>> euler_factors;
    Rat adjusted;   // L^S(-1, chi)
};

std::vector<LValueRecord> lvalue_records(const MultiQuadField& E, const PlaceSet& S);

// The equivariant value theta_{E/Q}^S(-1) in Q[G]: the element whose
// character coordinate at chi is L^S(-1, chi). Requires S to contain the
// ramified primes.
GroupRingElem theta_minus1(const MultiQuadField& E, const PlaceSet& S);

// Orders predicted by the Birch-Tate formula |K2(O^S)| = w2 * |zeta^S(-1)|,
// with the sign of every zeta value checked against (-1)^(number of places
// above S) and all integrality requirements asserted. Violations raise
// falsification_error rather than being silently fixed.
struct BTOrders {
    Int k2_F;                    // predicted |K2(Z^S)|
    std::vector<Int> k2_subfield;  // index = chi mask; entry 0 unused (0)
    std::vector<Int> k2_minus;     // delta_chi * k2_subfield / k2_F
    Int k2_E;                    // predicted |K2(O_E^S)| for the full field
    GroupRingElem theta;
};

BTOrders bt_orders(const MultiQuadField& E, const PlaceSet& S);

// theta^S(-1) for the quadratic step E over the subfield cut out by
// base_chi, as an element of Q[Gal(E/E_chi)] (a rank-1 group ring):
//   zeta_{E_chi}^S(-1) e0' + (zeta_E^S(-1)/zeta_{E_chi}^S(-1)) e1'.
// Defined when [E : E_chi] = 2: rank 2 with base_chi nontrivial, or rank 1
// with the trivial base (where it coincides with theta_minus1).
GroupRingElem theta_relative(const MultiQuadField& E, CharacterIndex base_chi,
                             const PlaceSet& S);

// Both sides of the product identity relating the predicted k2 orders and
// w2 across the quadratic subfields,
//   (k2_E/k2_F) / (w2(E)/w2(Q)) = prod_chi (k2_chi/k2_F) / (w2_chi/w2(Q)),
// which reduces to the factorization of zeta_E into Dirichlet L-functions.
struct IdentitySides {
    Rat lhs, rhs;
    bool holds() const { return lhs == rhs; }
};

IdentitySides zeta_product_identity(const MultiQuadField& E, const PlaceSet& S);

}  // namespace mqstick

#endif
