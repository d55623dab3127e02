#ifndef MQSTICK_GROUPRING_HPP
#define MQSTICK_GROUPRING_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "mqstick/types.hpp"

namespace mqstick {

// Elementary abelian 2-group of rank m (0 <= m <= 6). Elements are bitmasks
// 0..2^m-1, the group law is XOR, so every element is its own inverse.
class ExpTwoGroup {
public:
    static constexpr int max_rank = 6;

    explicit ExpTwoGroup(int rank) : rank_(rank) {
        if (rank < 0 || rank > max_rank)
            throw std::invalid_argument("group rank out of range");
    }

    int rank() const { return rank_; }
    unsigned order() const { return 1u << rank_; }
    bool contains(unsigned mask) const { return mask < order(); }

    friend bool operator==(const ExpTwoGroup&, const ExpTwoGroup&) = default;

private:
    int rank_;
};

// Quadratic character chi(sigma) = (-1)^popcount(mask & sigma).
// mask 0 is the trivial character; chi^2 = chi_0 for all chi.
struct CharacterIndex {
    unsigned mask = 0;

    int value_on(unsigned sigma) const {
        return (std::popcount(mask & sigma) & 1) ? -1 : 1;
    }
    bool trivial() const { return mask == 0; }

    // The distinguished group element outside ker(chi): the generator with
    // the lowest index not in the kernel. Deterministic so that reports are
    // reproducible.
    unsigned tau() const {
        if (trivial()) throw std::invalid_argument("trivial character has no tau");
        return mask & (0u - mask);
    }

    friend bool operator==(const CharacterIndex&, const CharacterIndex&) = default;
};

// Element of Q[G] for G of exponent 2: a vector of exact rationals indexed
// by element bitmask. Elements of Z[G] are those with all-integer
// coefficients. Value semantics throughout; all operations are exact.
class GroupRingElem {
public:
    explicit GroupRingElem(ExpTwoGroup g) : group_(g), coeffs_(g.order(), Rat(0)) {}
    GroupRingElem(ExpTwoGroup g, std::vector<Rat> coeffs)
        : group_(g), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != group_.order())
            throw std::invalid_argument("coefficient count does not match group order");
    }

    static GroupRingElem one(ExpTwoGroup g) { return basis_element(g, 0); }
    static GroupRingElem basis_element(ExpTwoGroup g, unsigned sigma) {
        if (!g.contains(sigma)) throw std::invalid_argument("element outside group");
        GroupRingElem e(g);
        e.coeffs_[sigma] = 1;
        return e;
    }

    const ExpTwoGroup& group() const { return group_; }
    unsigned size() const { return group_.order(); }

    const Rat& operator[](unsigned sigma) const { return coeffs_.at(sigma); }
    Rat& operator[](unsigned sigma) { return coeffs_.at(sigma); }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_integral() const;

    GroupRingElem& operator+=(const GroupRingElem& rhs);
    GroupRingElem& operator-=(const GroupRingElem& rhs);
    GroupRingElem& operator*=(const Rat& scalar);

    friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
    friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }
    friend GroupRingElem operator*(GroupRingElem a, const Rat& s) { return a *= s; }
    friend GroupRingElem operator*(const Rat& s, GroupRingElem a) { return a *= s; }
    friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
        return mul(a, b);
    }
    friend bool operator==(const GroupRingElem&, const GroupRingElem&) = default;

    // Ring product: coefficient of g is sum of a_x * b_y over x XOR y = g.
    friend GroupRingElem mul(const GroupRingElem& a, const GroupRingElem& b);

private:
    ExpTwoGroup group_;
    std::vector<Rat> coeffs_;
};

// Character coordinates of a: entry for chi is sum over sigma of
// chi(sigma) a_sigma. Turns ring products into entrywise products.
std::vector<Rat> character_transform(const GroupRingElem& a);

// Inverse of character_transform: returns sum over chi of v_chi * e_chi.
GroupRingElem inverse_character_transform(const ExpTwoGroup& g, std::span<const Rat> v);

// e_chi = (1/2^m) sum_sigma chi(sigma) sigma. Orthogonal idempotents:
// e_chi^2 = e_chi, e_chi e_psi = 0 for chi != psi, and they sum to 1.
GroupRingElem idempotent(const ExpTwoGroup& g, CharacterIndex chi);

// F2-linear span of a set of bitmasks; used for subgroups of G and for
// subgroups of the character group. Basis kept in reduced echelon form with
// the lowest set bit of each basis vector as its pivot.
class MaskSpan {
public:
    MaskSpan(int ambient_rank, std::span<const unsigned> generators);

    int ambient_rank() const { return ambient_rank_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<unsigned>& basis() const { return basis_; }

    bool contains(unsigned mask) const { return reduce(mask) == 0; }
    // Canonical coset representative: pivot bits eliminated.
    unsigned reduce(unsigned mask) const;
    // Non-pivot bit positions, increasing.
    std::vector<int> free_bits() const;
    // Pack the free-bit coordinates of a reduced representative into a
    // quotient-group mask (bit k of the result = free bit number k).
    unsigned compress(unsigned reduced_mask) const;

private:
    int ambient_rank_;
    std::vector<unsigned> basis_;
    unsigned pivot_mask_ = 0;
};

// Projection Z[G] -> Z[G/H] for H generated by the given elements:
// coefficients are summed over cosets of H. Cosets are labelled canonically
// via their reduced representative's free bits, so the quotient of a rank-m
// group by a rank-r subgroup is ExpTwoGroup(m - r) with a stable indexing.
GroupRingElem project_quotient(const GroupRingElem& a,
                               std::span<const unsigned> kernel_generators);

// Inclusion Z[H] -> Z[G] for the subgroup H generated by generator_images
// (one ambient mask per generator of a's group; must be independent).
// A ring homomorphism placing coefficients at the corresponding ambient
// bitmasks.
GroupRingElem embed_subring(const GroupRingElem& a, const ExpTwoGroup& ambient,
                            std::span<const unsigned> generator_images);

}  // namespace mqstick

#endif
