#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "gkz/geometry.hpp"
#include "gkz/lattice.hpp"

namespace gkz {

inline constexpr long kDefaultBudget = 64;

using Parameter = RatVec;

// An element of E_tau(beta): a class of k(A cap tau)/Z(A cap tau), stored via a
// representative in the span of the face members.
struct EClass {
    Face face;
    RatVec rep;
    Lattice modulus;  // Z(A cap face)
};

bool eclass_equal(const EClass& a, const EClass& b);
bool eclass_less(const EClass& a, const EClass& b);  // deterministic output order only

// Membership in A(N^{T^c} x Z^T) -- the semigroup NA with the columns in T
// inverted. The decision runs a breadth-first search in Z^d modulo the lattice
// spanned by T and the detected unit generators; a covector positive on the
// remaining generators bounds the depth, so the search terminates. Witnesses
// express the queried vector as an integer combination that is nonnegative
// off T.
class LocalizedMonoid {
public:
    LocalizedMonoid(const Configuration& cfg, std::vector<int> t_columns);

    const std::vector<int>& t_columns() const { return t_; }
    const std::vector<int>& unit_columns() const { return units_; }

    bool contains(const IntVec& gamma, long budget = kDefaultBudget) const;

    // Coefficients per column index; values at indices outside T are >= 0.
    std::optional<std::map<int, Int>> member_witness(const IntVec& gamma,
                                                     long budget = kDefaultBudget) const;

private:
    RatVec project_mod_span(const RatVec& x) const;    // Q^d -> Q^d/S''
    std::optional<std::map<int, Int>> decompose_in_lambda(const IntVec& rho) const;

    const Configuration* cfg_;
    std::vector<int> t_;
    std::vector<int> units_;
    std::vector<int> remaining_;
    std::vector<std::map<int, Int>> unit_inverse_;  // -a_u as N off T, Z on T

    // complement-basis solve data for the span S'' of T + units
    RatMat span_solver_;  // [span basis | complement basis], invertible
    int span_rank_ = 0;

    Lattice lambda_;              // Z{a_t : t in T or unit}
    IntMat lambda_generators_;    // columns: T then units
    IntMat lambda_transform_;     // hnf transform of the generators
    std::unique_ptr<QuotientGroup> gamma_;  // Z^d / lambda_
    RatVec phi_;                  // positive covector on the remaining generators
    std::vector<Rat> phi_gen_;    // phi of each remaining generator
};

// The finite set E_tau(beta) = { lambda : beta - lambda in NA + Z(A cap tau) }.
std::vector<EClass> e_tau(const Configuration& cfg, const Face& tau, const Parameter& beta,
                          long budget = kDefaultBudget);

// Reinterprets a class modulo Z(A cap tau). Throws SpanMismatch when the
// representative does not lie in the span of tau's members.
EClass natural_map(const Configuration& cfg, const EClass& lambda, const Face& tau);

// Inclusion-minimal cone faces with nonempty E_tau(beta).
std::vector<Face> minface(const Configuration& cfg, const Parameter& beta,
                          long budget = kDefaultBudget);

// E_tau(beta) over every cone face, keyed canonically.
struct Fingerprint {
    std::vector<std::pair<Face, std::vector<EClass>>> entries;
};

Fingerprint fingerprint(const Configuration& cfg, const Parameter& beta,
                        long budget = kDefaultBudget);
bool fingerprint_equal(const Fingerprint& a, const Fingerprint& b);
// Member sets of the faces where the two fingerprints differ.
std::vector<Face> fingerprint_diff(const Fingerprint& a, const Fingerprint& b);

// One representative vector per class of Exp(tau, lambda)/L: the witness-based
// base vector plus one kernel shift per class of Z(A cap tau) modulo the
// vertex lattice. Coordinates off the vertices are nonnegative integers.
// Throws std::invalid_argument when lambda is not in E_tau(beta).
std::vector<RatVec> exp_class_candidates(const Configuration& cfg, const Face& tau,
                                         const EClass& lambda, const Parameter& beta,
                                         const LocalizedMonoid& monoid,
                                         long budget = kDefaultBudget);
std::vector<RatVec> exp_class_candidates(const Configuration& cfg, const Face& tau,
                                         const EClass& lambda, const Parameter& beta,
                                         long budget = kDefaultBudget);

// gamma in NA, decided by layered enumeration of the graded semigroup.
bool semigroup_member(const Configuration& cfg, const RatVec& gamma);

// Degree layers of NA, grown on demand. Not thread-safe; clone per worker.
class SemigroupTable {
public:
    explicit SemigroupTable(const Configuration& cfg) : cfg_(&cfg) {
        layers_.push_back({IntVec(std::size_t(cfg.dim()), Int(0))});
    }
    const std::set<IntVec>& layer(int k);
    bool contains(const IntVec& gamma);

private:
    const Configuration* cfg_;
    std::vector<std::set<IntVec>> layers_;
};

// Caches one LocalizedMonoid per face member set. prepare() makes later
// concurrent reads safe.
class EtauEngine {
public:
    explicit EtauEngine(const Configuration& cfg) : cfg_(&cfg) {}

    const Configuration& config() const { return *cfg_; }
    const LocalizedMonoid& monoid_for(const std::vector<int>& members) const;
    void prepare(const std::vector<Face>& faces) const;

    std::vector<EClass> e_tau(const Face& tau, const Parameter& beta,
                              long budget = kDefaultBudget) const;

private:
    const Configuration* cfg_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<int>, std::unique_ptr<LocalizedMonoid>> cache_;
};

}  // namespace gkz
