#include "mqstick/lvalues.hpp"

namespace mqstick {

Rat bernoulli_b2(const Rat& x) { return x * x - x + make_rat(1, 6); }

Rat dirichlet_L_minus1(long disc) {
    if (disc == 1) return make_rat(-1, 12);
    if (disc <= 1 || !is_fundamental_discriminant(disc))
        throw std::invalid_argument("not a real quadratic fundamental discriminant: " +
                                    std::to_string(disc));
    const long f = disc;
    Rat b(0);
    for (long a = 1; a <= f; ++a) {
        int chi = kronecker(disc, a);
        if (chi == 0) continue;
        Rat term = bernoulli_b2(make_rat(a, f));
        b += chi > 0 ? term : -term;
    }
    b *= f;
    return -b / 2;
}

Rat euler_multiplier_minus1(long disc, long p) {
    int chi = disc == 1 ? 1 : kronecker(disc, p);
    return Rat(1) - Rat(chi) * Rat(p);
}

Rat lvalue_S_minus1(long disc, const PlaceSet& S) {
    Rat v = dirichlet_L_minus1(disc);
    for (long p : S.finite_primes) v *= euler_multiplier_minus1(disc, p);
    return v;
}

Rat zeta_S_minus1(const MultiQuadField& E, const PlaceSet& S) {
    Rat z = lvalue_S_minus1(1, S);
    for (unsigned b = 1; b < (1u << E.rank()); ++b)
        z *= lvalue_S_minus1(E.subfield_disc(b), S);
    return z;
}

std::vector<LValueRecord> lvalue_records(const MultiQuadField& E, const PlaceSet& S) {
    std::vector<LValueRecord> out;
    for (unsigned b = 0; b < (1u << E.rank()); ++b) {
        LValueRecord rec;
        rec.chi = CharacterIndex{b};
        rec.disc = b == 0 ? 1 : E.subfield_disc(b);
        rec.raw = dirichlet_L_minus1(rec.disc);
        rec.adjusted = rec.raw;
        for (long p : S.finite_primes) {
            Rat m = euler_multiplier_minus1(rec.disc, p);
            rec.euler_factors.emplace_back(p, m);
            rec.adjusted *= m;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

GroupRingElem theta_minus1(const MultiQuadField& E, const PlaceSet& S) {
    if (!covers_ramified(E, S))
        throw std::invalid_argument("place set is missing a ramified prime");
    const unsigned n = 1u << E.rank();
    std::vector<Rat> v(n);
    v[0] = lvalue_S_minus1(1, S);
    for (unsigned b = 1; b < n; ++b) v[b] = lvalue_S_minus1(E.subfield_disc(b), S);
    return inverse_character_transform(E.group(), v);
}

namespace {

Int checked_order(const Rat& zeta_value, const Int& w2, std::size_t places,
                  const std::string& what) {
    if ((zeta_value < 0) != (places % 2 == 1))
        throw falsification_error("sign of zeta^S(-1) does not match the place count for " +
                                  what);
    Rat order = Rat(w2) * rat_abs(zeta_value);
    if (!is_integer(order))
        throw falsification_error("predicted order w2*|zeta^S(-1)| is not integral for " +
                                  what);
    return order.get_num();
}

}  // namespace

BTOrders bt_orders(const MultiQuadField& E, const PlaceSet& S) {
    if (!covers_ramified(E, S))
        throw std::invalid_argument("place set is missing a ramified prime");
    const unsigned n = 1u << E.rank();
    BTOrders bt{Int(0), std::vector<Int>(n, 0), std::vector<Int>(n, 0), Int(0),
                theta_minus1(E, S)};

    const Rat zeta_F = lvalue_S_minus1(1, S);
    bt.k2_F = checked_order(zeta_F, Int(24), places_above_Q(S), "Q");

    for (unsigned b = 1; b < n; ++b) {
        const auto sub = E.subfield_data(CharacterIndex{b});
        const Rat zeta_chi = zeta_F * lvalue_S_minus1(sub.disc, S);
        bt.k2_subfield[b] = checked_order(zeta_chi, sub.w2,
                                          places_above_quadratic(sub.disc, S),
                                          "Q(sqrt " + std::to_string(sub.d) + ")");
        Rat minus = Rat(sub.delta) * Rat(bt.k2_subfield[b]) / Rat(bt.k2_F);
        if (!is_integer(minus))
            throw falsification_error("k2^- = delta*k2/k2_F is not integral for d=" +
                                      std::to_string(sub.d));
        bt.k2_minus[b] = minus.get_num();
    }

    bt.k2_E = checked_order(zeta_S_minus1(E, S), E.w2(), places_above(E, S), "E");
    return bt;
}

GroupRingElem theta_relative(const MultiQuadField& E, CharacterIndex base_chi,
                             const PlaceSet& S) {
    if (!covers_ramified(E, S))
        throw std::invalid_argument("place set is missing a ramified prime");
    if (E.rank() == 1 && base_chi.trivial()) return theta_minus1(E, S);
    if (E.rank() != 2 || base_chi.trivial())
        throw std::invalid_argument("theta_relative requires a quadratic step");
    const Rat zeta_base = lvalue_S_minus1(1, S) * lvalue_S_minus1(E.subfield_disc(base_chi.mask), S);
    const Rat zeta_top = zeta_S_minus1(E, S);
    const ExpTwoGroup g(1);
    const Rat c0 = zeta_base, c1 = zeta_top / zeta_base;
    return GroupRingElem(g, {(c0 + c1) / 2, (c0 - c1) / 2});
}

IdentitySides zeta_product_identity(const MultiQuadField& E, const PlaceSet& S) {
    BTOrders bt = bt_orders(E, S);
    IdentitySides sides;
    sides.lhs = (Rat(bt.k2_E) / Rat(bt.k2_F)) / (Rat(E.w2()) / Rat(24));
    sides.rhs = Rat(1);
    for (unsigned b = 1; b < (1u << E.rank()); ++b) {
        const auto sub = E.subfield_data(CharacterIndex{b});
        sides.rhs *= (Rat(bt.k2_subfield[b]) / Rat(bt.k2_F)) / (Rat(sub.w2) / Rat(24));
    }
    return sides;
}

}  // namespace mqstick
