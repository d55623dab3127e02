#ifndef MQSTICK_FIELDS_HPP
#define MQSTICK_FIELDS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "mqstick/groupring.hpp"
#include "mqstick/types.hpp"

namespace mqstick {

// Shared table of primes (built once, read-only afterwards).
const std::vector<long>& shared_prime_table();
// Primes up to n inclusive, served from the shared table when possible.
std::vector<long> primes_upto(long n);
bool is_prime(long n);

// Kronecker symbol (a|n) with the standard conventions, total on all pairs.
int kronecker(const Int& a, const Int& n);
int kronecker(long a, long n);

// Squarefree part of n, keeping the sign: n = kernel * square.
long squarefree_kernel(long n);

// d if d = 1 mod 4, else 4d. Conductor of the quadratic character of
// Q(sqrt(d)) for squarefree d.
long fundamental_discriminant(long d);
bool is_fundamental_discriminant(long D);

// The finite set S of rational primes; the infinite place is always
// implicitly included.
struct PlaceSet {
    std::vector<long> finite_primes;  // sorted, distinct

    std::size_t card_over_Q() const { return 1 + finite_primes.size(); }
    bool contains(long p) const;
};

// Validates primality, sorts and deduplicates.
PlaceSet make_place_set(std::vector<long> primes);

// Per-quadratic-subfield data: E_chi = Q(sqrt(d)) is the fixed field of
// ker(chi). w2_minus is the order of the part of W2(E_chi) killed by
// 1 + tau, always 2 mod 4; delta is 1 exactly for d = 2 (the first layer of
// the cyclotomic Z_2-extension of Q).
struct QuadraticSubfieldData {
    CharacterIndex chi;
    long d = 0;
    long disc = 0;
    bool is_first_layer = false;
    Int w2;
    Int w2_minus;
    int delta = 2;
};

// A totally real multi-quadratic field E = Q(sqrt(d_1), ..., sqrt(d_m)).
// The input order of the generators fixes the bitmask convention for the
// Galois group: bit i of sigma is set iff sigma moves sqrt(d_i); the
// character with mask b cuts out the subfield Q(sqrt(d_b)), d_b the
// squarefree part of the product of the d_i with i in b.
class MultiQuadField {
public:
    // Validates: each generator reduces to a squarefree integer > 1, and no
    // nonempty product of generators is a square (independence).
    static MultiQuadField build(const std::vector<long>& generators);

    int rank() const { return static_cast<int>(generators_.size()); }
    ExpTwoGroup group() const { return ExpTwoGroup(rank()); }
    const std::vector<long>& generators() const { return generators_; }

    // Squarefree class and conductor of the subfield indexed by a nonzero
    // character mask.
    long subfield_d(unsigned mask) const;
    long subfield_disc(unsigned mask) const;
    QuadraticSubfieldData subfield_data(CharacterIndex chi) const;
    std::vector<QuadraticSubfieldData> all_subfields() const;

    // sqrt(n) lies in E iff the squarefree part of n is 1 or some d_b.
    bool contains_sqrt(long n) const;
    bool contains_first_layer() const { return contains_sqrt(2); }

    Int w2() const;

    // Rational primes ramified in E (divisors of the subfield conductors).
    const std::vector<long>& ramified_primes() const { return ramified_; }
    bool is_unramified(long q) const;

    // Frobenius at an unramified prime: bit i is set iff (disc(d_i)|q) = -1.
    unsigned artin_symbol(long q) const;

private:
    std::vector<long> generators_;        // squarefree, validated
    std::vector<long> subfield_class_;    // d_b indexed by mask (entry 0 unused = 1)
    std::vector<long> ramified_;
};

// w2 of the quadratic field Q(sqrt(d)), d squarefree > 1; also valid for
// d = 1 (the rationals, w2 = 24).
Int w2_quadratic(long d);
// |W2(Q(sqrt d)) killed by 1+tau| = w2(Q(sqrt d)) * delta' / w2(Q) with
// delta' = 1 for d = 2 and 2 otherwise. Throws falsification_error if the
// result is not 2 mod 4.
Int w2_minus_quadratic(long d);

bool covers_ramified(const MultiQuadField& E, const PlaceSet& S);

// Number of places of the given field above S (infinite places included).
std::size_t places_above_Q(const PlaceSet& S);
std::size_t places_above_quadratic(long disc, const PlaceSet& S);
std::size_t places_above(const MultiQuadField& E, const PlaceSet& S);

struct SquareClassResult {
    bool is_square = false;
    // For a nonsquare that becomes a square after multiplying by some d_b,
    // the witness mask b.
    std::optional<unsigned> witness_mask;
};

// Decides whether a nonzero rational is a square in E, with witness subfield.
SquareClassResult square_class_test(const MultiQuadField& E, const Rat& a);

// Bounded search for x^2 - d y^2 = r with 0 <= y <= y_bound; nullopt means
// "unknown within bound", not "no solution".
std::optional<std::pair<Int, Int>> norm_form_solve(long d, long r, long y_bound = 1000000);

}  // namespace mqstick

#endif
