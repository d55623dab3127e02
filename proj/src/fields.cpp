#include "mqstick/fields.hpp"

#include <algorithm>
#include <set>

namespace mqstick {

namespace {
constexpr long kSharedSieveBound = 1 << 20;

std::vector<long> sieve(long n) {
    std::vector<bool> composite(std::max<long>(n + 1, 2), false);
    std::vector<long> out;
    for (long p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (long q = p * p; q <= n; q += p) composite[q] = true;
    }
    return out;
}
}  // namespace

const std::vector<long>& shared_prime_table() {
    static const std::vector<long> table = sieve(kSharedSieveBound);
    return table;
}

std::vector<long> primes_upto(long n) {
    if (n <= kSharedSieveBound) {
        const auto& t = shared_prime_table();
        auto end = std::upper_bound(t.begin(), t.end(), n);
        return {t.begin(), end};
    }
    return sieve(n);
}

bool is_prime(long n) {
    if (n < 2) return false;
    Int z(static_cast<long int>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;  // deterministic in long range
}

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker(long a, long n) { return kronecker(Int(a), Int(n)); }

long squarefree_kernel(long n) {
    if (n == 0) return 0;
    long sign = n < 0 ? -1 : 1;
    long m = n < 0 ? -n : n;
    long kernel = 1;
    for (long d = 2; d * d <= m; ++d) {
        if (m % d != 0) continue;
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        if (e & 1) kernel *= d;
    }
    return sign * kernel * m;
}

long fundamental_discriminant(long d) {
    return ((d % 4 + 4) % 4 == 1) ? d : 4 * d;
}

bool is_fundamental_discriminant(long D) {
    if (D == 1) return true;
    if ((D % 4 + 4) % 4 == 1) return squarefree_kernel(D) == D;
    if (D % 4 != 0) return false;
    long d = D / 4;
    long r = (d % 4 + 4) % 4;
    return (r == 2 || r == 3) && squarefree_kernel(d) == d;
}

bool PlaceSet::contains(long p) const {
    return std::binary_search(finite_primes.begin(), finite_primes.end(), p);
}

PlaceSet make_place_set(std::vector<long> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (long p : primes)
        if (!is_prime(p))
            throw std::invalid_argument("place set entry is not prime: " + std::to_string(p));
    return PlaceSet{std::move(primes)};
}

MultiQuadField MultiQuadField::build(const std::vector<long>& generators) {
    if (generators.size() > ExpTwoGroup::max_rank)
        throw std::invalid_argument("too many generators");
    MultiQuadField E;
    for (long d : generators) {
        long k = squarefree_kernel(d);
        if (k <= 0)
            throw std::invalid_argument("generator " + std::to_string(d) +
                                        " does not give a totally real field");
        if (k == 1)
            throw std::invalid_argument("generator " + std::to_string(d) + " is a square");
        E.generators_.push_back(k);
    }
    const unsigned n = 1u << E.generators_.size();
    E.subfield_class_.assign(n, 1);
    std::set<long> ram;
    for (unsigned b = 1; b < n; ++b) {
        long prod = 1;
        for (std::size_t i = 0; i < E.generators_.size(); ++i)
            if (b >> i & 1u) prod *= E.generators_[i];
        long k = squarefree_kernel(prod);
        if (k == 1)
            throw std::invalid_argument(
                "generators are multiplicatively dependent modulo squares");
        E.subfield_class_[b] = k;
        if (fundamental_discriminant(k) % 2 == 0) ram.insert(2);
        long odd = k % 2 == 0 ? k / 2 : k;
        for (long p = 3; p * p <= odd; p += 2)
            if (odd % p == 0) {
                ram.insert(p);
                odd /= p;
            }
        if (odd > 1) ram.insert(odd);
    }
    E.ramified_.assign(ram.begin(), ram.end());
    return E;
}

long MultiQuadField::subfield_d(unsigned mask) const {
    if (mask == 0 || mask >= subfield_class_.size())
        throw std::invalid_argument("subfield mask out of range");
    return subfield_class_[mask];
}

long MultiQuadField::subfield_disc(unsigned mask) const {
    return fundamental_discriminant(subfield_d(mask));
}

QuadraticSubfieldData MultiQuadField::subfield_data(CharacterIndex chi) const {
    if (chi.trivial()) throw std::invalid_argument("trivial character has no subfield");
    QuadraticSubfieldData q;
    q.chi = chi;
    q.d = subfield_d(chi.mask);
    q.disc = fundamental_discriminant(q.d);
    q.is_first_layer = (q.d == 2);
    q.w2 = w2_quadratic(q.d);
    q.w2_minus = w2_minus_quadratic(q.d);
    q.delta = q.is_first_layer ? 1 : 2;
    return q;
}

std::vector<QuadraticSubfieldData> MultiQuadField::all_subfields() const {
    std::vector<QuadraticSubfieldData> out;
    for (unsigned b = 1; b < (1u << rank()); ++b)
        out.push_back(subfield_data(CharacterIndex{b}));
    return out;
}

bool MultiQuadField::contains_sqrt(long n) const {
    long k = squarefree_kernel(n);
    if (k == 1) return true;
    return std::find(subfield_class_.begin() + 1, subfield_class_.end(), k) !=
           subfield_class_.end();
}

Int MultiQuadField::w2() const {
    // For a multi-quadratic field the cyclotomic criterion closes: the only
    // prime-power trace fields of degree <= 2 are Q (3, 4), Q(sqrt2) (8) and
    // Q(sqrt5) (5); all larger prime powers force a cyclic field of degree
    // > 2, which cannot embed in a field of exponent-2 Galois group.
    Int w = 24;
    if (contains_sqrt(2)) w *= 2;
    if (contains_sqrt(5)) w *= 5;
    return w;
}

bool MultiQuadField::is_unramified(long q) const {
    return !std::binary_search(ramified_.begin(), ramified_.end(), q);
}

unsigned MultiQuadField::artin_symbol(long q) const {
    if (!is_prime(q)) throw std::invalid_argument("Frobenius requires a prime");
    if (!is_unramified(q))
        throw std::invalid_argument("prime " + std::to_string(q) + " is ramified");
    unsigned mask = 0;
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (kronecker(fundamental_discriminant(generators_[i]), q) == -1)
            mask |= 1u << i;
    return mask;
}

Int w2_quadratic(long d) {
    Int w = 24;
    if (d == 2) w *= 2;
    if (d == 5) w *= 5;
    return w;
}

Int w2_minus_quadratic(long d) {
    Int w = w2_quadratic(d) * (d == 2 ? 1 : 2) / 24;
    if ((w - 2) % 4 != 0)
        throw falsification_error("w2_minus not 2 mod 4 for d=" + std::to_string(d));
    return w;
}

bool covers_ramified(const MultiQuadField& E, const PlaceSet& S) {
    return std::all_of(E.ramified_primes().begin(), E.ramified_primes().end(),
                       [&](long p) { return S.contains(p); });
}

std::size_t places_above_Q(const PlaceSet& S) { return S.card_over_Q(); }

std::size_t places_above_quadratic(long disc, const PlaceSet& S) {
    std::size_t count = 2;  // two real places
    for (long p : S.finite_primes) count += kronecker(disc, p) == 1 ? 2 : 1;
    return count;
}

std::size_t places_above(const MultiQuadField& E, const PlaceSet& S) {
    if (!covers_ramified(E, S))
        throw std::invalid_argument("place set is missing a ramified prime");
    const int m = E.rank();
    std::size_t count = 1u << m;  // real places
    for (long p : S.finite_primes) {
        // Character subgroup unramified at p; the fixed field of the inertia
        // group is the corresponding multi-quadratic subfield, and primes
        // above p biject with the Frobenius orbits there.
        std::vector<unsigned> unram;
        for (unsigned b = 1; b < (1u << m); ++b)
            if (E.subfield_disc(b) % p != 0) unram.push_back(b);
        bool split_all = true;
        for (unsigned b : unram)
            if (kronecker(E.subfield_disc(b), p) != 1) {
                split_all = false;
                break;
            }
        const std::size_t subgroup_order = unram.size() + 1;
        count += split_all ? subgroup_order : subgroup_order / 2;
    }
    return count;
}

SquareClassResult square_class_test(const MultiQuadField& E, const Rat& a) {
    if (a == 0) throw std::invalid_argument("square class of zero is undefined");
    // a and num*den differ by a square.
    Int prod = a.get_num() * a.get_den();
    if (!prod.fits_slong_p())
        throw std::invalid_argument("square class test input too large");
    long k = squarefree_kernel(prod.get_si());
    if (k == 1) return {true, std::nullopt};
    SquareClassResult r;
    r.is_square = false;
    for (unsigned b = 1; b < (1u << E.rank()); ++b)
        if (E.subfield_d(b) == k) {
            r.is_square = true;
            r.witness_mask = b;
            return r;
        }
    return r;
}

std::optional<std::pair<Int, Int>> norm_form_solve(long d, long r, long y_bound) {
    if (d <= 1 || squarefree_kernel(d) != d)
        throw std::invalid_argument("need a squarefree d > 1");
    for (long y = 0; y <= y_bound; ++y) {
        Int x2 = Int(r) + Int(d) * Int(y) * Int(y);
        if (x2 < 0) continue;
        if (mpz_perfect_square_p(x2.get_mpz_t())) {
            Int x;
            mpz_sqrt(x.get_mpz_t(), x2.get_mpz_t());
            return std::make_pair(x, Int(y));
        }
    }
    return std::nullopt;
}

}  // namespace mqstick
