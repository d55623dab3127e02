#include "oracles.hpp"

#include <set>

#include "mqstick/fields.hpp"

namespace mqstick::oracle {

std::vector<Rat> xor_convolve(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> c(a.size(), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i ^ j] += a[i] * b[j];
    return c;
}

Rat dirichlet_L_minus1_squares(long disc) {
    if (disc == 1) return make_rat(-1, 12);
    const long f = disc;
    Rat b(0);
    for (long a = 1; a < f; ++a) {
        int chi = kronecker(disc, a);
        if (chi == 0) continue;
        Rat term = make_rat(Int(a) * Int(a), Int(f));
        b += chi > 0 ? term : -term;
    }
    return -b / 2;
}

Rat dirichlet_s2_lower_bound(long disc, long terms) {
    Rat sum(0);
    for (long n = 1; n <= terms; ++n) {
        int chi = disc == 1 ? (n == 1 ? 1 : 0) : kronecker(disc, n);
        if (chi == 0) continue;
        Rat term = make_rat(1, Int(n) * Int(n));
        sum += chi > 0 ? term : -term;
    }
    return sum - make_rat(1, terms);
}

Int coset_count(const IntegerLattice& big, const IntegerLattice& small) {
    if (big.rank() != small.rank())
        throw std::invalid_argument("coset count requires equal rank");
    // In small-basis coordinates, membership in small means integer
    // coordinates, so per-coordinate fractional parts are canonical coset
    // representatives. BFS over the images of big's generators.
    std::set<std::vector<std::string>> seen;
    auto key_of = [&](const std::vector<Rat>& coords) {
        std::vector<std::string> key;
        for (const auto& c : coords) {
            Rat frac = c - Rat(int_fdiv(c.get_num(), c.get_den()));
            key.push_back(rat_string(frac));
        }
        return key;
    };
    std::vector<std::vector<Rat>> frontier;
    std::vector<Rat> zero(small.rank(), Rat(0));
    seen.insert(key_of(zero));
    frontier.push_back(zero);
    std::vector<std::vector<Rat>> gens;
    for (int i = 0; i < big.rank(); ++i) {
        auto coords = small.solve_coordinates(big.row_as_rationals(i));
        if (!coords) throw std::invalid_argument("big lattice not in span of small");
        gens.push_back(*coords);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<Rat>> next;
        for (const auto& v : frontier)
            for (const auto& g : gens) {
                std::vector<Rat> w(v);
                for (int j = 0; j < small.rank(); ++j) w[j] += g[j];
                auto key = key_of(w);
                if (seen.insert(key).second) next.push_back(std::move(w));
            }
        frontier = std::move(next);
        if (seen.size() > 100000)
            throw std::runtime_error("coset enumeration blew up");
    }
    return Int(static_cast<long>(seen.size()));
}

long Rng::uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(engine);
}

Rat Rng::rat(long max_abs_num, long max_den) {
    return make_rat(uniform(-max_abs_num, max_abs_num), uniform(1, max_den));
}

std::vector<Rat> Rng::rat_vector(std::size_t n, long max_abs_num, long max_den) {
    std::vector<Rat> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(rat(max_abs_num, max_den));
    return v;
}

std::vector<std::vector<Int>> Rng::nonsingular(int dim, long max_abs) {
    for (;;) {
        std::vector<std::vector<Int>> m(dim, std::vector<Int>(dim));
        for (auto& row : m)
            for (auto& x : row) x = uniform(-max_abs, max_abs);
        // determinant by fraction-free elimination on a copy
        std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(dim));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) a[i][j] = Rat(m[i][j]);
        Rat det(1);
        bool singular = false;
        for (int c = 0; c < dim && !singular; ++c) {
            int p = c;
            while (p < dim && a[p][c] == 0) ++p;
            if (p == dim) { singular = true; break; }
            if (p != c) { std::swap(a[p], a[c]); det = -det; }
            det *= a[c][c];
            for (int i = c + 1; i < dim; ++i) {
                if (a[i][c] == 0) continue;
                Rat f = a[i][c] / a[c][c];
                for (int j = c; j < dim; ++j) a[i][j] -= f * a[c][j];
            }
        }
        if (!singular && det != 0) return m;
    }
}

std::vector<std::vector<Int>> Rng::unimodular(int dim, int shear_rounds) {
    std::vector<std::vector<Int>> m(dim, std::vector<Int>(dim, 0));
    for (int i = 0; i < dim; ++i) m[i][i] = 1;
    for (int r = 0; r < shear_rounds; ++r) {
        int i = static_cast<int>(uniform(0, dim - 1));
        int j = static_cast<int>(uniform(0, dim - 1));
        if (i == j) continue;
        Int c = uniform(-2, 2);
        for (int k = 0; k < dim; ++k) m[i][k] += c * m[j][k];
    }
    return m;
}

IntegerLattice Rng::lattice(int dim, long max_abs, long max_den) {
    auto rows = nonsingular(dim, max_abs);
    return IntegerLattice::from_rows(dim, Int(uniform(1, max_den)), std::move(rows));
}

}  // namespace mqstick::oracle
