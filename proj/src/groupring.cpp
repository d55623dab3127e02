#include "mqstick/groupring.hpp"

#include <algorithm>

namespace mqstick {

bool GroupRingElem::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rat& c) { return c == 0; });
}

bool GroupRingElem::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rat& c) { return c.get_den() == 1; });
}

GroupRingElem& GroupRingElem::operator+=(const GroupRingElem& rhs) {
    if (group_ != rhs.group_) throw std::invalid_argument("group mismatch");
    for (unsigned i = 0; i < size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

GroupRingElem& GroupRingElem::operator-=(const GroupRingElem& rhs) {
    if (group_ != rhs.group_) throw std::invalid_argument("group mismatch");
    for (unsigned i = 0; i < size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

GroupRingElem& GroupRingElem::operator*=(const Rat& scalar) {
    for (auto& c : coeffs_) c *= scalar;
    return *this;
}

GroupRingElem mul(const GroupRingElem& a, const GroupRingElem& b) {
    if (a.group() != b.group()) throw std::invalid_argument("group mismatch");
    GroupRingElem c(a.group());
    const unsigned n = a.size();
    for (unsigned x = 0; x < n; ++x) {
        if (a[x] == 0) continue;
        for (unsigned y = 0; y < n; ++y) {
            if (b[y] == 0) continue;
            c[x ^ y] += a[x] * b[y];
        }
    }
    return c;
}

std::vector<Rat> character_transform(const GroupRingElem& a) {
    const unsigned n = a.size();
    std::vector<Rat> t(n, Rat(0));
    for (unsigned chi = 0; chi < n; ++chi) {
        const CharacterIndex c{chi};
        for (unsigned s = 0; s < n; ++s) {
            if (a[s] == 0) continue;
            if (c.value_on(s) > 0)
                t[chi] += a[s];
            else
                t[chi] -= a[s];
        }
    }
    return t;
}

GroupRingElem inverse_character_transform(const ExpTwoGroup& g, std::span<const Rat> v) {
    const unsigned n = g.order();
    if (v.size() != n) throw std::invalid_argument("transform length mismatch");
    GroupRingElem a(g);
    for (unsigned s = 0; s < n; ++s) {
        Rat acc(0);
        for (unsigned chi = 0; chi < n; ++chi) {
            if (CharacterIndex{chi}.value_on(s) > 0)
                acc += v[chi];
            else
                acc -= v[chi];
        }
        a[s] = acc / n;
    }
    return a;
}

GroupRingElem idempotent(const ExpTwoGroup& g, CharacterIndex chi) {
    if (!g.contains(chi.mask)) throw std::invalid_argument("character outside dual group");
    const unsigned n = g.order();
    GroupRingElem e(g);
    const Rat unit = make_rat(1, n);
    for (unsigned s = 0; s < n; ++s)
        e[s] = chi.value_on(s) > 0 ? unit : -unit;
    return e;
}

MaskSpan::MaskSpan(int ambient_rank, std::span<const unsigned> generators)
    : ambient_rank_(ambient_rank) {
    for (unsigned g : generators) {
        if (g >= (1u << ambient_rank)) throw std::invalid_argument("mask outside group");
        unsigned x = g;
        for (unsigned b : basis_)
            if (x & (b & (0u - b))) x ^= b;
        if (x) basis_.push_back(x);
    }
    // reduced echelon form: clear each pivot bit from the other basis vectors
    for (std::size_t i = 0; i < basis_.size(); ++i)
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            if (i == j) continue;
            unsigned pj = basis_[j] & (0u - basis_[j]);
            if (basis_[i] & pj) basis_[i] ^= basis_[j];
        }
    std::sort(basis_.begin(), basis_.end(),
              [](unsigned a, unsigned b) { return (a & (0u - a)) < (b & (0u - b)); });
    for (unsigned b : basis_) pivot_mask_ |= b & (0u - b);
}

unsigned MaskSpan::reduce(unsigned mask) const {
    for (unsigned b : basis_)
        if (mask & (b & (0u - b))) mask ^= b;
    return mask;
}

std::vector<int> MaskSpan::free_bits() const {
    std::vector<int> out;
    for (int i = 0; i < ambient_rank_; ++i)
        if (!(pivot_mask_ >> i & 1u)) out.push_back(i);
    return out;
}

unsigned MaskSpan::compress(unsigned reduced_mask) const {
    unsigned out = 0, k = 0;
    for (int i = 0; i < ambient_rank_; ++i) {
        if (pivot_mask_ >> i & 1u) continue;
        if (reduced_mask >> i & 1u) out |= 1u << k;
        ++k;
    }
    return out;
}

GroupRingElem project_quotient(const GroupRingElem& a,
                               std::span<const unsigned> kernel_generators) {
    const ExpTwoGroup& g = a.group();
    MaskSpan H(g.rank(), kernel_generators);
    ExpTwoGroup quotient(g.rank() - H.rank());
    GroupRingElem out(quotient);
    for (unsigned s = 0; s < g.order(); ++s) {
        if (a[s] == 0) continue;
        out[H.compress(H.reduce(s))] += a[s];
    }
    return out;
}

GroupRingElem embed_subring(const GroupRingElem& a, const ExpTwoGroup& ambient,
                            std::span<const unsigned> generator_images) {
    const int r = a.group().rank();
    if (static_cast<int>(generator_images.size()) != r)
        throw std::invalid_argument("need one ambient image per subgroup generator");
    MaskSpan span(ambient.rank(), generator_images);
    if (span.rank() != r)
        throw std::invalid_argument("generator images are dependent: not a subgroup embedding");
    GroupRingElem out(ambient);
    for (unsigned b = 0; b < a.size(); ++b) {
        if (a[b] == 0) continue;
        unsigned image = 0;
        for (int i = 0; i < r; ++i)
            if (b >> i & 1u) image ^= generator_images[i];
        out[image] += a[b];
    }
    return out;
}

}  // namespace mqstick
