#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mqstick/fields.hpp"
#include "oracles.hpp"

using namespace mqstick;

TEST_CASE("build_field validation") {
    MultiQuadField E = MultiQuadField::build({2, 5});
    CHECK(E.rank() == 2);
    CHECK(E.subfield_d(1) == 2);
    CHECK(E.subfield_d(2) == 5);
    CHECK(E.subfield_d(3) == 10);

    CHECK_THROWS_AS(MultiQuadField::build({2, 8}), std::invalid_argument);   // dependent
    CHECK_THROWS_AS(MultiQuadField::build({5, -1}), std::invalid_argument);  // not totally real
    CHECK_THROWS_AS(MultiQuadField::build({4}), std::invalid_argument);      // square
    CHECK_THROWS_AS(MultiQuadField::build({3, 5, 15}), std::invalid_argument);

    // square parts are stripped
    MultiQuadField F = MultiQuadField::build({12, 5});
    CHECK(F.generators() == std::vector<long>{3, 5});
}

TEST_CASE("subfield square classes") {
    MultiQuadField E = MultiQuadField::build({3, 7});
    std::vector<long> ds;
    for (unsigned b = 1; b <= 3; ++b) ds.push_back(E.subfield_d(b));
    CHECK(ds == std::vector<long>{3, 7, 21});
    CHECK(MultiQuadField::build({5}).subfield_d(1) == 5);
    auto sub = E.subfield_data(CharacterIndex{3});
    CHECK(sub.d == 21);
    CHECK(sub.disc == 21);
    CHECK(sub.delta == 2);
    CHECK_THROWS_AS(E.subfield_data(CharacterIndex{0}), std::invalid_argument);
}

TEST_CASE("kronecker symbol conventions") {
    CHECK(kronecker(5, 19) == 1);
    CHECK(kronecker(12345, 1) == 1);
    for (long p : {7L, 17L, 23L, 31L, 41L})
        CHECK(kronecker(2, p) == ((p % 8 == 1 || p % 8 == 7) ? 1 : -1));
    CHECK(kronecker(5, 5) == 0);
    CHECK(kronecker(8, 7) == 1);
}

TEST_CASE("squarefree kernel and fundamental discriminants") {
    CHECK(squarefree_kernel(16) == 1);
    CHECK(squarefree_kernel(12) == 3);
    CHECK(squarefree_kernel(-18) == -2);
    CHECK(fundamental_discriminant(5) == 5);
    CHECK(fundamental_discriminant(2) == 8);
    CHECK(fundamental_discriminant(3) == 12);
    CHECK(is_fundamental_discriminant(1));
    CHECK(is_fundamental_discriminant(8));
    CHECK(is_fundamental_discriminant(13));
    CHECK_FALSE(is_fundamental_discriminant(4));
    CHECK_FALSE(is_fundamental_discriminant(25));
    CHECK_FALSE(is_fundamental_discriminant(18));
}

TEST_CASE("artin symbols") {
    MultiQuadField E = MultiQuadField::build({2, 5});
    CHECK(E.artin_symbol(19) == 1u);   // moves sqrt2, fixes sqrt5
    CHECK(E.artin_symbol(41) == 0u);   // 41 = 1 mod 8 and mod 5
    CHECK_THROWS_AS(MultiQuadField::build({5}).artin_symbol(5), std::invalid_argument);
    CHECK(E.ramified_primes() == std::vector<long>{2, 5});
}

TEST_CASE("character pairing matches the splitting of subfield conductors") {
    // chi(sigma_q) = (disc(E_chi) | q) for unramified q: the two splitting
    // descriptions agree.
    for (const auto& gens : {std::vector<long>{2, 5}, {3, 7}, {2, 3, 5}}) {
        MultiQuadField E = MultiQuadField::build(gens);
        for (long q : primes_upto(500)) {
            if (!E.is_unramified(q)) continue;
            unsigned sigma = E.artin_symbol(q);
            for (unsigned b = 1; b < (1u << E.rank()); ++b)
                CHECK(CharacterIndex{b}.value_on(sigma) == kronecker(E.subfield_disc(b), q));
        }
    }
}

TEST_CASE("w2 closed form") {
    CHECK(MultiQuadField::build({}).w2() == 24);
    CHECK(MultiQuadField::build({2, 5}).w2() == 240);
    CHECK(MultiQuadField::build({3, 7}).w2() == 24);
    CHECK(MultiQuadField::build({2, 3}).w2() == 48);
    CHECK(MultiQuadField::build({5, 13}).w2() == 120);
    CHECK(w2_quadratic(2) == 48);
    CHECK(w2_quadratic(5) == 120);
    CHECK(w2_quadratic(3) == 24);
}

TEST_CASE("w2 of subfields divides w2 of the field; prime powers lift") {
    for (const auto& gens :
         {std::vector<long>{2, 5}, {3, 7}, {2, 3}, {2, 3, 5}, {3, 5, 7}, {5, 13}}) {
        MultiQuadField E = MultiQuadField::build(gens);
        Int w = E.w2();
        bool has16 = w % 16 == 0, has5 = w % 5 == 0;
        bool sub16 = false, sub5 = false;
        for (unsigned b = 1; b < (1u << E.rank()); ++b) {
            Int ws = w2_quadratic(E.subfield_d(b));
            CHECK(w % ws == 0);
            if (ws % 16 == 0) sub16 = true;
            if (ws % 5 == 0) sub5 = true;
        }
        // every maximal prime power dividing w2(E) already shows up in a subfield
        CHECK(has16 == sub16);
        CHECK(has5 == sub5);
    }
}

TEST_CASE("w2_minus values and congruence") {
    CHECK(w2_minus_quadratic(2) == 2);
    CHECK(w2_minus_quadratic(5) == 10);
    CHECK(w2_minus_quadratic(3) == 2);
    for (long d : {2L, 3L, 5L, 7L, 10L, 13L, 21L, 30L})
        CHECK((w2_minus_quadratic(d) - 2) % 4 == 0);
}

TEST_CASE("places above S") {
    PlaceSet s25 = make_place_set({2, 5});
    CHECK(places_above_Q(s25) == 3);
    CHECK(places_above_quadratic(5, s25) == 4);
    CHECK(places_above_quadratic(8, make_place_set({2, 7})) == 5);

    MultiQuadField E = MultiQuadField::build({2, 5});
    // p=2: only sqrt5 unramified, inert at 2 -> 1 prime; p=5: only sqrt2
    // survives inertia, (8|5) = -1 -> 1 prime; 4 real places.
    CHECK(places_above(E, s25) == 6);
    // quadratic case through the generic routine agrees with the direct one
    MultiQuadField Q5 = MultiQuadField::build({5});
    CHECK(places_above(Q5, s25) == places_above_quadratic(5, s25));
    CHECK_THROWS_AS(places_above(E, make_place_set({2})), std::invalid_argument);
}

TEST_CASE("square class test") {
    MultiQuadField E = MultiQuadField::build({2, 5});
    CHECK(square_class_test(E, Rat(16)).is_square);
    auto ten = square_class_test(E, Rat(10));
    CHECK(ten.is_square);
    REQUIRE(ten.witness_mask.has_value());
    CHECK(*ten.witness_mask == 3u);
    CHECK_FALSE(square_class_test(E, Rat(3)).is_square);
    CHECK_FALSE(square_class_test(E, Rat(-4)).is_square);
    CHECK(square_class_test(E, make_rat(2, 5)).is_square);  // 2/5 ~ 10
    CHECK_THROWS_AS(square_class_test(E, Rat(0)), std::invalid_argument);
}

TEST_CASE("norm form solver") {
    auto w = norm_form_solve(2, 7, 100);
    REQUIRE(w.has_value());
    CHECK(w->first == 3);
    CHECK(w->second == 1);
    auto one = norm_form_solve(2, 1, 100);
    REQUIRE(one.has_value());
    CHECK(one->first == 1);
    CHECK(one->second == 0);
    CHECK_FALSE(norm_form_solve(2, 3, 2000).has_value());  // 3 mod 8 is not represented
    CHECK_THROWS_AS(norm_form_solve(12, 1, 10), std::invalid_argument);
}

TEST_CASE("norm form witnesses reconstruct their norm (property)") {
    oracle::Rng rng;
    for (int trial = 0; trial < 40; ++trial) {
        long d = squarefree_kernel(rng.uniform(2, 40));
        if (d <= 1) continue;
        long r = rng.uniform(1, 60);
        auto w = norm_form_solve(d, r, 200);
        if (w) CHECK(w->first * w->first - Int(d) * w->second * w->second == r);
    }
}

TEST_CASE("place set validation") {
    CHECK_THROWS_AS(make_place_set({4}), std::invalid_argument);
    PlaceSet s = make_place_set({5, 3, 3, 2});
    CHECK(s.finite_primes == std::vector<long>{2, 3, 5});
    CHECK(s.card_over_Q() == 4);
}
