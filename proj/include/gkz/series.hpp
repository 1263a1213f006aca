#pragma once

#include <optional>
#include <vector>

#include "gkz/geometry.hpp"
#include "gkz/params.hpp"

namespace gkz {

// L = { u in Z^n : Au = 0 }, the integer kernel of the configuration matrix.
struct KernelLattice {
    Lattice l;
    int ambient() const { return l.ambient(); }
    int kernel_rank() const { return l.lattice_rank(); }
};

KernelLattice kernel_lattice(const Configuration& cfg);

// A vector v with Av = beta, together with its support bookkeeping, the face
// tau_v spanned by the non-natural coordinates, and the class lambda_v.
struct Exponent {
    RatVec v;
    std::vector<int> nsupp;  // v_i a negative integer
    std::vector<int> psupp;  // v_i a nonnegative integer
    Face face;               // tau_v, vertices { j : v_j not in N }
    EClass klass;            // lambda_v on tau_v
};

// Computes supports, tau_v and lambda_v for a raw vector.
Exponent analyze_exponent(const Configuration& cfg, const RatVec& v);

// True iff no u in L shrinks nsupp(v) strictly. Exact: each candidate drop of
// an index reduces to a localized-semigroup membership query.
bool has_minimal_negative_support(const Configuration& cfg, const RatVec& v,
                                  long budget = kDefaultBudget);

// One strict shrink of the negative support, when one exists.
std::optional<RatVec> shrink_negative_support(const Configuration& cfg, const RatVec& v,
                                              long budget = kDefaultBudget);

// Applies shrink steps until the negative support is minimal.
RatVec minimal_support_repair(const Configuration& cfg, const RatVec& v,
                              long budget = kDefaultBudget);

// u in N_v, i.e. nsupp(v + u) = nsupp(v).
bool in_n_v(const RatVec& v, const IntVec& u);

// Replaces v by the w-minimal representative of N_v (the unique optimum of the
// integer program min w.u over N_v). Ties and unbounded objectives signal a
// non-generic weight.
RatVec canonicalize_exponent(const RatVec& v, const RatVec& w, const KernelLattice& l,
                             long budget = kDefaultBudget);

// The vol(tau) canonical exponents attached to lambda in E_tau(beta): one per
// class of Z(A cap tau) / sum of vertex lattices, each with minimal negative
// support and IP-canonicalized. Exponents whose own face is smaller than tau
// are still returned; minex() attributes them to their own face.
std::vector<Exponent> exponents_for(const Configuration& cfg, const Face& tau,
                                    const EClass& lambda, const Parameter& beta,
                                    const RatVec& w, long budget = kDefaultBudget);

// The full set of minimal-negative-support fake exponents with respect to w,
// each annotated with its own (tau_v, lambda_v). Cross-checked against the
// dimension formula; a count mismatch raises InternalInconsistency.
std::vector<Exponent> minex(const Configuration& cfg, const Parameter& beta, const RatVec& w,
                            long budget = kDefaultBudget);

struct TruncatedSeries {
    Exponent base;
    RatVec w;
    Rat order;                                 // truncation bound in w-weight
    std::vector<std::pair<IntVec, Rat>> terms;  // (u, coefficient), u = 0 first
    bool polynomial = false;                    // N_v is finite
};

// phi_v truncated at the given w-weight: coefficient [v]_{u-} / [v+u]_{u+} for
// every u in N_v with w.u <= order.
TruncatedSeries phi_series(const Configuration& cfg, const Exponent& base, const RatVec& w,
                           const Rat& order, long budget = kDefaultBudget);

struct AnnihilationReport {
    bool euler_exact = false;  // all Euler operators kill every term
    struct BoxCheck {
        IntVec op;          // lattice vector; the operator is d^{op+} - d^{op-}
        bool vanished = false;
        Rat checked_up_to;  // w-weight up to which cancellation is guaranteed checkable
    };
    std::vector<BoxCheck> boxes;

    bool all_pass() const {
        if (!euler_exact) return false;
        for (const auto& b : boxes)
            if (!b.vanished) return false;
        return true;
    }
};

// Applies every Euler operator and every box operator of coordinate norm at
// most degree_bound to the truncated series, symbolically and exactly.
AnnihilationReport verify_annihilation(const Configuration& cfg, const TruncatedSeries& s,
                                       const Parameter& beta, long degree_bound,
                                       long budget = kDefaultBudget);

}  // namespace gkz
