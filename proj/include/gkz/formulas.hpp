#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gkz/geometry.hpp"
#include "gkz/params.hpp"

namespace gkz {

struct ContributionLine {
    Face face;
    EClass lambda;
    Int volume;
    Int correction;    // inclusion-exclusion sum over facet subsets carrying lambda
    Int contribution;  // volume - correction
};

struct DimensionBreakdown {
    std::vector<ContributionLine> lines;
    Int total = 0;
};

// Dimension of the space of logarithm-free series solutions in the direction
// of w: for every face of the triangulation and every class in E_tau(beta),
// vol(tau) minus the inclusion-exclusion correction over the facets that carry
// a lift of the class.
DimensionBreakdown dim_log_free(const Configuration& cfg, const Parameter& beta, const RatVec& w,
                                long budget = kDefaultBudget);
DimensionBreakdown dim_log_free(const Configuration& cfg, const Parameter& beta,
                                const Triangulation& t, long budget = kDefaultBudget);

struct RankResult {
    Int rank;
    Int volume;  // vol(A)
    bool exceptional = false;
    DimensionBreakdown breakdown;
    RatVec weight;  // single-cell weight used
    bool perturbed = false;
};

// Rank of the hypergeometric system when conv(A) is a simplex, via the
// dimension formula over a weight whose triangulation is conv(A) itself.
RankResult rank_simplex(const Configuration& cfg, const Parameter& beta,
                        long budget = kDefaultBudget);

// A triangulation whose single cell is conv(A) (simplex case): vertices at
// height zero, deterministic pseudo-random heights above. Distinct attempts
// give distinct height patterns; callers retry on downstream weight ties.
Triangulation single_cell_triangulation(const Configuration& cfg, int attempt = 0);

struct ExceptionalWitness {
    Face tau1, tau2;
    RatVec lambda;  // common class representative missing from E on the intersection
};

struct ExceptionalResult {
    bool exceptional = false;
    std::optional<ExceptionalWitness> witness;
};

// Precomputed face/pair geometry for repeated exceptionality queries. The
// verdict is cross-checked against the rank formula on every query.
class ExceptionalTester {
public:
    explicit ExceptionalTester(const Configuration& cfg);

    ExceptionalResult test(const Parameter& beta, long budget = kDefaultBudget) const;
    Int volume() const { return volume_; }
    const Triangulation& single_cell_triangulation() const { return tri_; }

private:
    struct PairData {
        std::size_t i, j;       // indices into faces_
        Face sigma;             // geometric intersection
        Lattice sigma_lattice;  // Z(A cap sigma)
        RatMat sigma_residue;   // linear map with kernel span(sigma)
        std::vector<RatVec> common_shifts;  // fundamental domain of Lc / Z sigma
    };

    const Configuration* cfg_;
    std::vector<Face> faces_;  // cone faces
    Triangulation tri_;
    Int volume_ = 0;
    std::vector<PairData> pairs_;
    std::unique_ptr<EtauEngine> engine_;
};

ExceptionalResult is_exceptional(const Configuration& cfg, const Parameter& beta,
                                 long budget = kDefaultBudget);

enum class CMStatus { CohenMacaulay, NotCohenMacaulay, Inconclusive };

struct CMWitness {
    IntVec beta_hole;
    std::map<int, Int> m1, m2;  // column index -> exponent, disjoint supports in the vertices
};

struct CMResult {
    CMStatus status = CMStatus::Inconclusive;
    std::optional<CMWitness> witness;
    std::vector<IntVec> holes;  // saturation points missing from NA, up to the bound
};

// Semi-decision for Cohen-Macaulayness of the semigroup ring, by searching for
// holes admitting two disjoint vertex shifts back into NA. "CohenMacaulay" is
// reported only when the hole layers stabilize below the bound.
CMResult is_cohen_macaulay(const Configuration& cfg, long search_bound);

// All exceptional parameters in the saturation of NA whose h-degree lies in
// [degree_lo, degree_hi]; exact and exhaustive within that slice.
std::vector<Parameter> exceptional_sweep(const Configuration& cfg, int degree_lo, int degree_hi,
                                         long budget = kDefaultBudget);

// Lattice points of the degree-k slice of the saturation ZA cap cone(A).
std::vector<IntVec> saturation_layer(const Configuration& cfg, int degree);

}  // namespace gkz
