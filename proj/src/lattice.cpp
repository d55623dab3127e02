#include "mqstick/lattice.hpp"

#include <algorithm>

namespace mqstick {

namespace {

bool row_is_zero(const std::vector<Int>& r) {
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

int pivot_col(const std::vector<Int>& r) {
    for (std::size_t j = 0; j < r.size(); ++j)
        if (r[j] != 0) return static_cast<int>(j);
    return -1;
}

void row_submul(std::vector<Int>& r, const Int& q, const std::vector<Int>& src) {
    if (q == 0) return;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= q * src[j];
}

// Unimodular row echelon over the first `ncols` columns only; all rows are
// kept (zero-left-block rows end up at the bottom). Returns the rank of the
// left block.
std::size_t echelon_left(std::vector<std::vector<Int>>& rows, int ncols) {
    std::size_t pr = 0;
    for (int col = 0; col < ncols && pr < rows.size(); ++col) {
        for (;;) {
            std::size_t best = rows.size();
            int nonzero = 0;
            for (std::size_t i = pr; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                ++nonzero;
                if (best == rows.size() ||
                    cmp(abs(rows[i][col]), abs(rows[best][col])) < 0)
                    best = i;
            }
            if (nonzero == 0) break;
            std::swap(rows[pr], rows[best]);
            if (rows[pr][col] < 0)
                for (auto& x : rows[pr]) x = -x;
            if (nonzero == 1) break;
            for (std::size_t i = pr + 1; i < rows.size(); ++i)
                if (rows[i][col] != 0)
                    row_submul(rows[i], int_fdiv(rows[i][col], rows[pr][col]), rows[pr]);
        }
        if (pr < rows.size() && rows[pr][col] != 0) ++pr;
    }
    return pr;
}

// Canonical row HNF: echelon, drop zero rows, then reduce entries above each
// pivot into [0, pivot).
void hnf_inplace(std::vector<std::vector<Int>>& rows, int ncols) {
    std::erase_if(rows, row_is_zero);
    std::size_t rank = echelon_left(rows, ncols);
    rows.resize(rank);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int p = pivot_col(rows[i]);
        for (std::size_t k = 0; k < i; ++k)
            row_submul(rows[k], int_fdiv(rows[k][p], rows[i][p]), rows[i]);
    }
}

}  // namespace

IntegerLattice::IntegerLattice(int ambient_dim) : dim_(ambient_dim), denom_(1) {
    if (ambient_dim <= 0) throw std::invalid_argument("ambient dimension must be positive");
}

void IntegerLattice::canonicalize(std::vector<std::vector<Int>> rows) {
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != dim_)
            throw std::invalid_argument("row length does not match ambient dimension");
    hnf_inplace(rows, dim_);
    Int g = denom_;
    for (const auto& r : rows)
        for (const auto& x : r) {
            g = int_gcd(g, x);
            if (g == 1) break;
        }
    if (rows.empty()) {
        denom_ = 1;
    } else if (g > 1) {
        denom_ /= g;
        for (auto& r : rows)
            for (auto& x : r) x /= g;
    }
    basis_ = std::move(rows);
}

IntegerLattice IntegerLattice::standard(int ambient_dim) {
    IntegerLattice L(ambient_dim);
    std::vector<std::vector<Int>> rows(ambient_dim, std::vector<Int>(ambient_dim, 0));
    for (int i = 0; i < ambient_dim; ++i) rows[i][i] = 1;
    L.basis_ = std::move(rows);
    return L;
}

IntegerLattice IntegerLattice::from_rows(int ambient_dim, Int denominator,
                                         std::vector<std::vector<Int>> rows) {
    if (denominator <= 0) throw std::invalid_argument("denominator must be positive");
    IntegerLattice L(ambient_dim);
    L.denom_ = std::move(denominator);
    L.canonicalize(std::move(rows));
    return L;
}

IntegerLattice IntegerLattice::from_rational_rows(int ambient_dim,
                                                  const std::vector<std::vector<Rat>>& rows) {
    Int den = 1;
    for (const auto& r : rows)
        for (const auto& x : r) den = int_lcm(den, x.get_den());
    std::vector<std::vector<Int>> scaled;
    scaled.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Int> row;
        row.reserve(r.size());
        for (const auto& x : r) row.push_back(Int(x.get_num() * (den / x.get_den())));
        scaled.push_back(std::move(row));
    }
    return from_rows(ambient_dim, den, std::move(scaled));
}

IntegerLattice IntegerLattice::from_generators(const std::vector<GroupRingElem>& gens,
                                               int ambient_dim) {
    if (gens.empty()) {
        if (ambient_dim <= 0)
            throw std::invalid_argument("empty generator list needs an explicit dimension");
        return IntegerLattice(ambient_dim);
    }
    const unsigned n = gens.front().size();
    std::vector<std::vector<Rat>> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) {
        if (g.size() != n) throw std::invalid_argument("generator dimension mismatch");
        rows.push_back(g.coeffs());
    }
    return from_rational_rows(static_cast<int>(n), rows);
}

std::vector<Rat> IntegerLattice::row_as_rationals(int i) const {
    std::vector<Rat> out;
    out.reserve(dim_);
    for (const auto& x : basis_.at(i)) out.push_back(make_rat(x, denom_));
    return out;
}

GroupRingElem IntegerLattice::row_as_elem(const ExpTwoGroup& g, int i) const {
    if (g.order() != static_cast<unsigned>(dim_))
        throw std::invalid_argument("group order does not match ambient dimension");
    return GroupRingElem(g, row_as_rationals(i));
}

std::optional<std::vector<Rat>> IntegerLattice::solve_coordinates(
    const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("vector dimension mismatch");
    std::vector<Rat> t(v);
    for (auto& x : t) x *= denom_;
    std::vector<Rat> coords;
    coords.reserve(basis_.size());
    for (const auto& row : basis_) {
        const int p = pivot_col(row);
        Rat c = t[p] / row[p];
        for (int j = p; j < dim_; ++j) t[j] -= c * row[j];
        coords.push_back(std::move(c));
    }
    for (const auto& x : t)
        if (x != 0) return std::nullopt;
    return coords;
}

bool IntegerLattice::contains_vector(const std::vector<Rat>& v) const {
    auto coords = solve_coordinates(v);
    if (!coords) return false;
    return std::all_of(coords->begin(), coords->end(), is_integer);
}

bool IntegerLattice::contains_element(const GroupRingElem& a) const {
    return contains_vector(a.coeffs());
}

bool IntegerLattice::contains_lattice(const IntegerLattice& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("ambient dimension mismatch");
    for (int i = 0; i < other.rank(); ++i)
        if (!contains_vector(other.row_as_rationals(i))) return false;
    return true;
}

IntegerLattice IntegerLattice::scaled(const Rat& s) const {
    if (s == 0) return IntegerLattice(dim_);
    std::vector<std::vector<Int>> rows = basis_;
    for (auto& r : rows)
        for (auto& x : r) x *= s.get_num();
    return from_rows(dim_, Int(denom_ * s.get_den()), std::move(rows));
}

Rat IntegerLattice::covolume() const {
    if (!full_rank()) throw std::invalid_argument("covolume requires full rank");
    Rat det(1);
    for (int i = 0; i < rank(); ++i) det *= basis_[i][i];
    Int dn;
    mpz_pow_ui(dn.get_mpz_t(), denom_.get_mpz_t(), dim_);
    return det / Rat(dn);
}

IntegerLattice sum(const IntegerLattice& a, const IntegerLattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch");
    const Int den = int_lcm(a.denominator(), b.denominator());
    std::vector<std::vector<Int>> rows;
    const Int fa = den / a.denominator(), fb = den / b.denominator();
    for (const auto& r : a.basis()) {
        rows.push_back(r);
        for (auto& x : rows.back()) x *= fa;
    }
    for (const auto& r : b.basis()) {
        rows.push_back(r);
        for (auto& x : rows.back()) x *= fb;
    }
    return IntegerLattice::from_rows(a.ambient_dim(), den, std::move(rows));
}

IntegerLattice intersect(const IntegerLattice& a, const IntegerLattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch");
    const int n = a.ambient_dim();
    if (a.is_zero() || b.is_zero()) return IntegerLattice(n);
    const Int den = int_lcm(a.denominator(), b.denominator());
    const Int fa = den / a.denominator(), fb = den / b.denominator();
    const std::size_t ra = a.rank(), rb = b.rank();
    const std::size_t k = ra + rb;

    // Augment [A; B] with the identity; unimodular echelon over the left
    // block turns the trailing rows into a basis of the integer kernel of
    // [A; B], whose A-part spans the intersection.
    std::vector<std::vector<Int>> rows(k, std::vector<Int>(n + k, 0));
    for (std::size_t i = 0; i < ra; ++i)
        for (int j = 0; j < n; ++j) rows[i][j] = a.basis()[i][j] * fa;
    for (std::size_t i = 0; i < rb; ++i)
        for (int j = 0; j < n; ++j) rows[ra + i][j] = b.basis()[i][j] * fb;
    for (std::size_t i = 0; i < k; ++i) rows[i][n + i] = 1;

    const std::size_t rank = echelon_left(rows, n);
    std::vector<std::vector<Int>> vecs;
    for (std::size_t z = rank; z < k; ++z) {
        std::vector<Int> v(n, 0);
        for (std::size_t i = 0; i < ra; ++i) {
            const Int& c = rows[z][n + i];
            if (c == 0) continue;
            for (int j = 0; j < n; ++j) v[j] += c * a.basis()[i][j] * fa;
        }
        vecs.push_back(std::move(v));
    }
    return IntegerLattice::from_rows(n, den, std::move(vecs));
}

IntegerLattice mul_by_ring_element(const IntegerLattice& L, const GroupRingElem& a) {
    if (L.ambient_dim() != static_cast<int>(a.size()))
        throw std::invalid_argument("ambient dimension mismatch");
    std::vector<std::vector<Rat>> rows;
    rows.reserve(L.rank());
    for (int i = 0; i < L.rank(); ++i)
        rows.push_back(mul(L.row_as_elem(a.group(), i), a).coeffs());
    return IntegerLattice::from_rational_rows(L.ambient_dim(), rows);
}

Int index_of_sublattice(const IntegerLattice& big, const IntegerLattice& small) {
    if (big.ambient_dim() != small.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch");
    if (big.rank() != small.rank())
        throw std::invalid_argument("index requires equal rank");
    // Express small's basis over big's: the transition matrix must be
    // integral, and its determinant (up to sign) is the index.
    std::vector<std::vector<Int>> T;
    T.reserve(small.rank());
    for (int i = 0; i < small.rank(); ++i) {
        auto coords = big.solve_coordinates(small.row_as_rationals(i));
        if (!coords) throw std::invalid_argument("not a sublattice");
        std::vector<Int> row;
        row.reserve(coords->size());
        for (const auto& c : *coords) {
            if (!is_integer(c)) throw std::invalid_argument("not a sublattice");
            row.push_back(c.get_num());
        }
        T.push_back(std::move(row));
    }
    hnf_inplace(T, small.rank());
    if (static_cast<int>(T.size()) != small.rank())
        throw std::invalid_argument("not finite index");
    Int det = 1;
    for (int i = 0; i < small.rank(); ++i) det *= T[i][i];
    return det;
}

CompareResult compare(const IntegerLattice& a, const IntegerLattice& b) {
    const bool ab = b.contains_lattice(a);
    const bool ba = a.contains_lattice(b);
    if (ab && ba) return {LatticeRelation::equal, Int(1)};
    if (ab) {
        std::optional<Int> idx;
        if (a.rank() == b.rank()) idx = index_of_sublattice(b, a);
        return {LatticeRelation::first_inside_second, idx};
    }
    if (ba) {
        std::optional<Int> idx;
        if (a.rank() == b.rank()) idx = index_of_sublattice(a, b);
        return {LatticeRelation::second_inside_first, idx};
    }
    return {LatticeRelation::incomparable, std::nullopt};
}

}  // namespace mqstick
