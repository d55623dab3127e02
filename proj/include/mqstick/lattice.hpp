#ifndef MQSTICK_LATTICE_HPP
#define MQSTICK_LATTICE_HPP

#include <optional>
#include <vector>

#include "mqstick/groupring.hpp"
#include "mqstick/types.hpp"

namespace mqstick {

// A finitely generated Z-lattice inside Q^n, stored as (1/D) times the row
// span of an integer matrix in canonical Hermite normal form:
//   - rows ordered by pivot column, pivots positive,
//   - entries below a pivot zero, entries above reduced into [0, pivot),
//   - gcd of D with the matrix content is 1.
// The canonical form makes equality, containment and index computations
// exact and representation-independent.
class IntegerLattice {
public:
    // Zero lattice of the given ambient dimension.
    explicit IntegerLattice(int ambient_dim);

    static IntegerLattice standard(int ambient_dim);  // Z^n
    static IntegerLattice from_rows(int ambient_dim, Int denominator,
                                    std::vector<std::vector<Int>> rows);
    static IntegerLattice from_rational_rows(int ambient_dim,
                                             const std::vector<std::vector<Rat>>& rows);
    // Z-span of group-ring elements. The dimension is inferred from the
    // generators; pass ambient_dim for an empty list (zero lattice).
    static IntegerLattice from_generators(const std::vector<GroupRingElem>& gens,
                                          int ambient_dim = 0);

    int ambient_dim() const { return dim_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    bool is_zero() const { return basis_.empty(); }
    bool full_rank() const { return rank() == dim_; }
    const Int& denominator() const { return denom_; }
    const std::vector<std::vector<Int>>& basis() const { return basis_; }

    std::vector<Rat> row_as_rationals(int i) const;
    GroupRingElem row_as_elem(const ExpTwoGroup& g, int i) const;

    // Coordinates of v in the basis (exact), or nullopt if v is outside the
    // rational span.
    std::optional<std::vector<Rat>> solve_coordinates(const std::vector<Rat>& v) const;

    bool contains_vector(const std::vector<Rat>& v) const;
    bool contains_element(const GroupRingElem& a) const;
    bool contains_lattice(const IntegerLattice& other) const;

    // Every vector multiplied by a nonzero rational scalar.
    IntegerLattice scaled(const Rat& s) const;

    // |det| of the basis as a lattice covolume contribution: for a full-rank
    // lattice this is (prod of pivots) / D^n.
    Rat covolume() const;

    friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;

private:
    int dim_;
    Int denom_;
    std::vector<std::vector<Int>> basis_;

    void canonicalize(std::vector<std::vector<Int>> rows);
};

// Smallest lattice containing both summands.
IntegerLattice sum(const IntegerLattice& a, const IntegerLattice& b);

// Largest common sublattice, via the integer kernel of the stacked bases.
IntegerLattice intersect(const IntegerLattice& a, const IntegerLattice& b);

// Lattice generated by { v * a : v basis vector }, products taken in Q[G].
IntegerLattice mul_by_ring_element(const IntegerLattice& L, const GroupRingElem& a);

enum class LatticeRelation { equal, first_inside_second, second_inside_first, incomparable };

struct CompareResult {
    LatticeRelation relation;
    // Group index of the smaller lattice in the larger one; present only
    // when the two lattices have equal rank.
    std::optional<Int> index;
};

CompareResult compare(const IntegerLattice& a, const IntegerLattice& b);

// Index (B : A) for A inside B of equal rank; throws if A is not a
// finite-index sublattice of B.
Int index_of_sublattice(const IntegerLattice& big, const IntegerLattice& small);

}  // namespace mqstick

#endif
