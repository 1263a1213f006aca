#pragma once

#include <optional>
#include <vector>

#include "gkz/matrix.hpp"

namespace gkz {

// A sublattice of Z^m, stored with an HNF-reduced basis so that equal lattices
// compare equal as values. The zero lattice {0} is the empty basis.
class Lattice {
public:
    Lattice() = default;

    static Lattice zero(int ambient) { return Lattice(ambient, IntMat(ambient, 0)); }

    // HNF-reduces the generator columns; dependent and zero generators are fine.
    static Lattice from_generators(int ambient, const IntMat& generators);
    static Lattice from_generators(int ambient, const std::vector<IntVec>& generators);

    int ambient() const { return ambient_; }
    int lattice_rank() const { return basis_.cols(); }
    const IntMat& basis() const { return basis_; }
    IntVec basis_vector(int j) const { return basis_.column(j); }

    // True iff v is an integer combination of the basis.
    bool contains(const RatVec& v) const;

    // Integer coordinates of v in the basis; nullopt when v is not in the lattice.
    std::optional<IntVec> coordinates_of(const RatVec& v) const;

    // True iff v lies in the rational span of the lattice.
    bool span_contains(const RatVec& v) const;

    bool operator==(const Lattice& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    Lattice(int ambient, IntMat basis) : ambient_(ambient), basis_(std::move(basis)) {}

    int ambient_ = 0;
    IntMat basis_;  // ambient_ x rank, column HNF
};

// Spec-level membership operation.
inline bool member(const RatVec& v, const Lattice& l) { return l.contains(v); }

// |super/sub|, or nullopt for an infinite quotient (rank drop).
// Throws NotSublattice when sub is not contained in super.
std::optional<Int> lattice_index(const Lattice& sub, const Lattice& super);

// The finitely generated abelian group super/sub together with projection and
// representative maps. Trailing zero invariant factors encode the free rank.
class QuotientGroup {
public:
    QuotientGroup(const Lattice& super, const Lattice& sub);

    const std::vector<Int>& invariant_factors() const { return factors_; }
    bool finite() const { return free_rank_ == 0; }
    Int order() const;  // throws when infinite

    // Class key of a vector of super (reduced SNF coordinates).
    // Throws NotSublattice when v is not in super.
    IntVec project(const RatVec& v) const;
    IntVec zero_key() const { return IntVec(factors_.size(), Int(0)); }

    IntVec add(const IntVec& a, const IntVec& b) const;
    IntVec negate(const IntVec& a) const;

    // Smallest r >= 1 with r*key == 0; throws when the key has infinite order.
    Int element_order(const IntVec& key) const;

    // Ambient representative of a class key, taken in the SNF fundamental domain.
    RatVec representative(const IntVec& key) const;

    // All class keys, fundamental-domain order. Finite quotients only.
    std::vector<IntVec> enumerate_keys() const;

private:
    IntVec reduce(IntVec y) const;

    Lattice super_, sub_;
    IntMat uinv_;                // super-coordinate change, unimodular
    IntMat u_;
    std::vector<Int> factors_;   // nonzero factors first, then zeros
    int free_rank_ = 0;
};

}  // namespace gkz
