#include "gkz/lattice.hpp"

#include <algorithm>

#include "gkz/errors.hpp"

namespace gkz {

Lattice Lattice::from_generators(int ambient, const IntMat& generators) {
    return Lattice(ambient, hnf_columns(generators));
}

Lattice Lattice::from_generators(int ambient, const std::vector<IntVec>& generators) {
    IntMat g(ambient, int(generators.size()));
    for (int j = 0; j < g.cols(); ++j) g.set_column(j, generators[std::size_t(j)]);
    return from_generators(ambient, g);
}

std::optional<IntVec> Lattice::coordinates_of(const RatVec& v) const {
    if (int(v.size()) != ambient_) throw std::invalid_argument("lattice: dimension mismatch");
    if (basis_.cols() == 0) return is_zero_vec(v) ? std::optional<IntVec>(IntVec{}) : std::nullopt;
    auto x = solve(basis_, v);
    if (!x) return std::nullopt;
    IntVec c(x->size());
    for (std::size_t i = 0; i < x->size(); ++i) {
        if (!is_integer((*x)[i])) return std::nullopt;
        c[i] = numerator((*x)[i]);
    }
    // Basis columns are independent, so the solution is exact; no residual check needed.
    return c;
}

bool Lattice::contains(const RatVec& v) const { return coordinates_of(v).has_value(); }

bool Lattice::span_contains(const RatVec& v) const {
    if (basis_.cols() == 0) return is_zero_vec(v);
    return solve(basis_, v).has_value();
}

std::optional<Int> lattice_index(const Lattice& sub, const Lattice& super) {
    if (sub.ambient() != super.ambient())
        throw std::invalid_argument("lattice_index: ambient dimension mismatch");
    // sub in super, with sub basis rewritten in super coordinates
    IntMat c(super.lattice_rank(), sub.lattice_rank());
    for (int j = 0; j < sub.lattice_rank(); ++j) {
        auto coords = super.coordinates_of(to_rat(sub.basis_vector(j)));
        if (!coords) throw NotSublattice("lattice_index: sub is not contained in super");
        c.set_column(j, *coords);
    }
    if (sub.lattice_rank() < super.lattice_rank()) return std::nullopt;  // infinite
    SmithForm f = smith_normal_form(c);
    Int idx = 1;
    for (int i = 0; i < std::min(f.s.rows(), f.s.cols()); ++i) idx *= f.s(i, i);
    if (idx == 0) throw InternalInconsistency("lattice_index: dependent sub basis");
    return idx;
}

QuotientGroup::QuotientGroup(const Lattice& super, const Lattice& sub)
    : super_(super), sub_(sub) {
    int r = super.lattice_rank();
    IntMat c(r, sub.lattice_rank());
    for (int j = 0; j < sub.lattice_rank(); ++j) {
        auto coords = super.coordinates_of(to_rat(sub.basis_vector(j)));
        if (!coords) throw NotSublattice("QuotientGroup: sub is not contained in super");
        c.set_column(j, *coords);
    }
    SmithForm f = smith_normal_form(c);
    u_ = f.u;
    uinv_ = inverse_unimodular(f.u);
    factors_.assign(std::size_t(r), Int(0));
    for (int i = 0; i < std::min(f.s.rows(), f.s.cols()); ++i) factors_[std::size_t(i)] = f.s(i, i);
    // nonzero factors first; SNF already orders them, zeros trail
    free_rank_ = 0;
    for (const Int& d : factors_)
        if (d == 0) ++free_rank_;
}

Int QuotientGroup::order() const {
    if (!finite()) throw std::invalid_argument("QuotientGroup::order on infinite quotient");
    Int n = 1;
    for (const Int& d : factors_) n *= d;
    return n;
}

IntVec QuotientGroup::reduce(IntVec y) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] == 0) continue;
        Int m = y[i] % factors_[i];
        if (m < 0) m += factors_[i];
        y[i] = m;
    }
    return y;
}

IntVec QuotientGroup::project(const RatVec& v) const {
    auto coords = super_.coordinates_of(v);
    if (!coords) throw NotSublattice("QuotientGroup::project: vector not in super");
    IntVec y = mul(u_, *coords);
    return reduce(std::move(y));
}

IntVec QuotientGroup::add(const IntVec& a, const IntVec& b) const {
    IntVec y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) y[i] = a[i] + b[i];
    return reduce(std::move(y));
}

IntVec QuotientGroup::negate(const IntVec& a) const {
    IntVec y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) y[i] = -a[i];
    return reduce(std::move(y));
}

Int QuotientGroup::element_order(const IntVec& key) const {
    Int r = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (key[i] == 0) continue;
        if (factors_[i] == 0) throw std::invalid_argument("element_order: infinite order");
        Int g = gcd(factors_[i], key[i]);
        r = lcm(r, factors_[i] / g);
    }
    return r;
}

RatVec QuotientGroup::representative(const IntVec& key) const {
    IntVec coords = mul(uinv_, key);
    RatVec v(std::size_t(super_.ambient()), Rat(0));
    for (int j = 0; j < super_.lattice_rank(); ++j) {
        IntVec b = super_.basis_vector(j);
        for (int i = 0; i < super_.ambient(); ++i) v[std::size_t(i)] += Rat(coords[std::size_t(j)] * b[std::size_t(i)]);
    }
    return v;
}

std::vector<IntVec> QuotientGroup::enumerate_keys() const {
    if (!finite()) throw std::invalid_argument("enumerate_keys on infinite quotient");
    std::vector<IntVec> keys;
    keys.push_back(zero_key());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        std::vector<IntVec> next;
        for (Int c = 0; c < factors_[i]; ++c)
            for (const IntVec& k : keys) {
                IntVec k2 = k;
                k2[i] = c;
                next.push_back(std::move(k2));
            }
        keys = std::move(next);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace gkz
