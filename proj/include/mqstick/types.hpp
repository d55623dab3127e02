#ifndef MQSTICK_TYPES_HPP
#define MQSTICK_TYPES_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mqstick {

// All arithmetic in this library is exact: Int is an arbitrary-precision
// integer, Rat an always-canonicalized rational. No floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

// Raised when a computation contradicts a predicted exact identity
// (sign or integrality of a predicted order, integrality of an ideal, ...).
// These are never swallowed: the CLI turns them into a failed verdict and a
// nonzero exit code.
class falsification_error : public std::runtime_error {
public:
    explicit falsification_error(const std::string& what)
        : std::runtime_error(what) {}
};

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat q;
    q.get_num() = std::move(num);
    q.get_den() = std::move(den);
    q.canonicalize();
    return q;
}

// Canonical "num/den" form, den >= 1, e.g. "-1/12", "2/1".
inline std::string rat_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Floor quotient, matching the remainder convention used by the HNF code:
// a - fdiv(a,b)*b lies in [0, b) for b > 0.
inline Int int_fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int int_pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

// Largest e with 2^e | n (n != 0).
inline unsigned long two_adic_valuation(const Int& n) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    return mpz_scan1(n.get_mpz_t(), 0);
}

inline Int odd_part(const Int& n) {
    if (n == 0) return 0;
    Int r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), n.get_mpz_t(), two_adic_valuation(n));
    return r;
}

}  // namespace mqstick

#endif
