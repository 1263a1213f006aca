#include "gkz/formulas.hpp"

#include <algorithm>

#include "gkz/errors.hpp"
#include "gkz/parallel.hpp"
#include "gkz/polytope.hpp"

namespace gkz {

namespace {

// Rows of a linear map Q^d -> Q^(d-s) whose kernel is exactly the column span
// of span_basis: complete the span to a full basis and take the complementary
// coordinates of the inverse.
RatMat residue_map(int d, const RatMat& span_basis) {
    std::vector<RatVec> basis;
    auto try_add = [&](const RatVec& v) {
        std::vector<RatVec> trial = basis;
        trial.push_back(v);
        RatMat m(d, int(trial.size()));
        for (int j = 0; j < int(trial.size()); ++j)
            for (int i = 0; i < d; ++i) m(i, j) = trial[std::size_t(j)][std::size_t(i)];
        if (rank(m) == int(trial.size())) basis.push_back(v);
    };
    for (int j = 0; j < span_basis.cols(); ++j) try_add(span_basis.column(j));
    int s = int(basis.size());
    for (int i = 0; i < d && int(basis.size()) < d; ++i) {
        RatVec e(std::size_t(d), Rat(0));
        e[std::size_t(i)] = 1;
        try_add(e);
    }
    RatMat m(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) m(i, j) = basis[std::size_t(j)][std::size_t(i)];
    RatMat r(d - s, d);
    for (int c = 0; c < d; ++c) {
        RatVec e(std::size_t(d), Rat(0));
        e[std::size_t(c)] = 1;
        auto y = solve(m, e);
        if (!y) throw InternalInconsistency("residue map basis completion failed");
        for (int i = s; i < d; ++i) r(i - s, c) = (*y)[std::size_t(i)];
    }
    return r;
}

// E_tau for every poset face, keyed by member set.
std::map<std::vector<int>, std::vector<EClass>> e_sets(const EtauEngine& engine,
                                                       const std::vector<Face>& faces,
                                                       const Parameter& beta, long budget) {
    std::map<std::vector<int>, std::vector<EClass>> out;
    for (const Face& f : faces)
        if (!out.count(f.members)) out[f.members] = engine.e_tau(f, beta, budget);
    return out;
}

// The contribution of a pair (tau, lambda) is vol(tau) minus the number of
// Exp-classes already realized by a strictly smaller pair. The facet-level
// inclusion-exclusion collapses to this count, except that a facet carrying
// several lifts of lambda removes one vol(facet) block per lift; counting the
// union of class sets directly handles that case exactly.
DimensionBreakdown dim_breakdown(const Configuration& cfg, const Parameter& beta,
                                 const Triangulation& t, const EtauEngine& engine, long budget) {
    DimensionBreakdown out;
    auto classes = e_sets(engine, t.face_poset, beta, budget);
    Lattice kernel = Lattice::from_generators(cfg.npoints(), integer_kernel(cfg.matrix()));

    struct PairEntry {
        const Face* tau;
        EClass lambda;
        std::vector<RatVec> reps;  // one vector per Exp class
    };
    std::vector<PairEntry> pairs;
    for (const Face& tau : t.face_poset)
        for (const EClass& lambda : classes.at(tau.members))
            pairs.push_back(PairEntry{
                &tau, lambda,
                exp_class_candidates(cfg, tau, lambda, beta, engine.monoid_for(tau.members),
                                     budget)});

    auto strictly_below = [&](const PairEntry& small, const PairEntry& large) {
        if (small.tau->vertices == large.tau->vertices) return false;
        if (!std::includes(large.tau->vertices.begin(), large.tau->vertices.end(),
                           small.tau->vertices.begin(), small.tau->vertices.end()))
            return false;
        return eclass_equal(natural_map(cfg, small.lambda, *large.tau), large.lambda);
    };

    for (const PairEntry& p : pairs) {
        Int vol = normalized_volume(cfg, *p.tau);
        Int correction = 0;
        for (const RatVec& rep : p.reps) {
            bool realized_below = false;
            for (const PairEntry& q : pairs) {
                if (realized_below || !strictly_below(q, p)) continue;
                for (const RatVec& qrep : q.reps)
                    if (kernel.contains(vec_sub(rep, qrep))) {
                        realized_below = true;
                        break;
                    }
            }
            if (realized_below) correction += 1;
        }
        Int contribution = vol - correction;
        if (contribution < 0 || contribution > vol)
            throw InternalInconsistency("dimension contribution out of range");
        out.lines.push_back(ContributionLine{*p.tau, p.lambda, vol, correction, contribution});
        out.total += contribution;
    }
    return out;
}

}  // namespace

DimensionBreakdown dim_log_free(const Configuration& cfg, const Parameter& beta,
                                const Triangulation& t, long budget) {
    EtauEngine engine(cfg);
    engine.prepare(t.face_poset);
    return dim_breakdown(cfg, beta, t, engine, budget);
}

DimensionBreakdown dim_log_free(const Configuration& cfg, const Parameter& beta, const RatVec& w,
                                long budget) {
    Triangulation t = regular_triangulation(cfg, w);
    return dim_log_free(cfg, beta, t, budget);
}

namespace {

// Vertex set of conv(A): extreme points among all columns.
std::vector<int> hull_vertices(const Configuration& cfg) {
    for (const Face& f : cone_faces(cfg))
        if (f.span_dim == cfg.dim()) return f.vertices;
    throw InternalInconsistency("cone face lattice has no full face");
}

}  // namespace

Triangulation single_cell_triangulation(const Configuration& cfg, int attempt) {
    std::vector<int> verts = hull_vertices(cfg);
    if (int(verts.size()) != cfg.dim()) throw NotSimplex("conv(A) is not a simplex");
    // vertices at height zero, everything else strictly above: the lower hull
    // is the simplex itself whatever the positive heights are. Deterministic
    // pseudo-random heights break the lifted coplanarities; fall back to the
    // symbolic perturbation if a run of patterns stays degenerate.
    auto base_weight = [&](int round) {
        RatVec w(std::size_t(cfg.npoints()), Rat(1));
        unsigned state = 0x9e3779b9u * unsigned(round * 64 + attempt + 1);
        for (int j = 0; j < cfg.npoints(); ++j) {
            state = state * 1103515245u + 12345u;
            w[std::size_t(j)] = 1 + long((state >> 8) % 997u);
        }
        for (int v : verts) w[std::size_t(v)] = 0;
        return w;
    };
    RatVec w = base_weight(0);
    TriangulationOptions opt;
    for (int round = 0; round < 40; ++round) {
        RatVec cand = base_weight(round);
        if (is_generic_weight(cfg, cand)) {
            w = cand;
            break;
        }
        if (round == 39) opt.perturb = true;
    }
    // scaling keeps the triangulation and genericity but keeps series
    // truncation orders in the usual range
    for (Rat& q : w) q /= 100;
    Triangulation t = regular_triangulation(cfg, w, opt);
    if (t.maximal_cells.size() != 1 || t.maximal_cells[0].vertices != verts)
        throw NoSingleCellWeight("no weight with the one-cell triangulation was found");
    return t;
}

RankResult rank_simplex(const Configuration& cfg, const Parameter& beta, long budget) {
    Triangulation t = single_cell_triangulation(cfg);
    RankResult r;
    r.breakdown = dim_log_free(cfg, beta, t, budget);
    r.rank = r.breakdown.total;
    r.volume = normalized_volume(cfg, t.maximal_cells[0]);
    r.exceptional = r.rank > r.volume;
    r.weight = t.weight;
    r.perturbed = t.perturbed;
    return r;
}

ExceptionalTester::ExceptionalTester(const Configuration& cfg) : cfg_(&cfg) {
    faces_ = cone_faces(cfg);
    tri_ = gkz::single_cell_triangulation(cfg);
    volume_ = normalized_volume(cfg, tri_.maximal_cells[0]);
    engine_ = std::make_unique<EtauEngine>(cfg);
    engine_->prepare(faces_);
    engine_->prepare(tri_.face_poset);

    // the simplex case identifies cone faces with triangulation faces
    {
        std::set<std::vector<int>> a, b;
        for (const Face& f : faces_) a.insert(f.members);
        for (const Face& f : tri_.face_poset) b.insert(f.members);
        if (a != b)
            throw InternalInconsistency("cone faces and one-cell triangulation faces differ");
    }

    const int d = cfg.dim();
    for (std::size_t i = 0; i < faces_.size(); ++i) {
        for (std::size_t j = i + 1; j < faces_.size(); ++j) {
            const Face& t1 = faces_[i];
            const Face& t2 = faces_[j];
            std::vector<int> common;
            std::set_intersection(t1.members.begin(), t1.members.end(), t2.members.begin(),
                                  t2.members.end(), std::back_inserter(common));
            if (common == t1.members || common == t2.members) continue;  // nested pair
            PairData pd;
            pd.i = i;
            pd.j = j;
            bool sigma_found = false;
            for (const Face& f : faces_)
                if (f.members == common) {
                    pd.sigma = f;
                    sigma_found = true;
                }
            if (!sigma_found)
                throw InternalInconsistency("face intersection missing from the cone lattice");
            pd.sigma_lattice = member_lattice(cfg, pd.sigma);
            pd.sigma_residue = residue_map(d, to_rat(pd.sigma_lattice.basis()));

            // Lc = Z tau1 cap Z tau2 cap span(sigma)
            Lattice l1 = member_lattice(cfg, t1), l2 = member_lattice(cfg, t2);
            IntMat both(d, l1.lattice_rank() + l2.lattice_rank());
            for (int k = 0; k < l1.lattice_rank(); ++k) both.set_column(k, l1.basis_vector(k));
            for (int k = 0; k < l2.lattice_rank(); ++k) {
                IntVec v = l2.basis_vector(k);
                for (Int& x : v) x = -x;
                both.set_column(l1.lattice_rank() + k, v);
            }
            IntMat ker = integer_kernel(both);
            std::vector<IntVec> inter_gens;
            for (int c = 0; c < ker.cols(); ++c) {
                IntVec v(std::size_t(d), Int(0));
                for (int k = 0; k < l1.lattice_rank(); ++k) {
                    IntVec bvec = l1.basis_vector(k);
                    for (int x = 0; x < d; ++x) v[std::size_t(x)] += ker(k, c) * bvec[std::size_t(x)];
                }
                inter_gens.push_back(std::move(v));
            }
            Lattice l12 = Lattice::from_generators(d, inter_gens);

            // intersect with span(sigma): integer kernel of the residue map on
            // the intersection basis
            std::vector<IntVec> in_span;
            if (l12.lattice_rank() > 0 && pd.sigma_residue.rows() > 0) {
                std::vector<RatVec> proj;
                for (int k = 0; k < l12.lattice_rank(); ++k)
                    proj.push_back(mul(pd.sigma_residue, to_rat(l12.basis_vector(k))));
                Int den = 1;
                for (const RatVec& v : proj)
                    for (const Rat& q : v) den = lcm(den, denominator(q));
                int rrows = pd.sigma_residue.rows();
                IntMat pm(rrows, l12.lattice_rank());
                for (int k = 0; k < l12.lattice_rank(); ++k)
                    for (int x = 0; x < rrows; ++x)
                        pm(x, k) = numerator(proj[std::size_t(k)][std::size_t(x)] * Rat(den));
                IntMat kn = integer_kernel(pm);
                for (int c = 0; c < kn.cols(); ++c) {
                    IntVec v(std::size_t(d), Int(0));
                    for (int k = 0; k < l12.lattice_rank(); ++k) {
                        IntVec bvec = l12.basis_vector(k);
                        for (int x = 0; x < d; ++x)
                            v[std::size_t(x)] += kn(k, c) * bvec[std::size_t(x)];
                    }
                    in_span.push_back(std::move(v));
                }
            } else if (pd.sigma_residue.rows() == 0) {
                // sigma spans everything; the whole intersection qualifies
                for (int k = 0; k < l12.lattice_rank(); ++k) in_span.push_back(l12.basis_vector(k));
            }
            Lattice lc = Lattice::from_generators(d, in_span);
            QuotientGroup shifts(lc, pd.sigma_lattice);
            for (const IntVec& key : shifts.enumerate_keys())
                pd.common_shifts.push_back(shifts.representative(key));
            pairs_.push_back(std::move(pd));
        }
    }
}

ExceptionalResult ExceptionalTester::test(const Parameter& beta, long budget) const {
    const Configuration& cfg = *cfg_;
    std::map<std::vector<int>, std::vector<EClass>> classes;
    for (const Face& f : faces_)
        if (!classes.count(f.members)) classes[f.members] = engine_->e_tau(f, beta, budget);

    ExceptionalResult result;
    for (const PairData& pd : pairs_) {
        const Face& t1 = faces_[pd.i];
        const Face& t2 = faces_[pd.j];
        Lattice z1 = member_lattice(cfg, t1);
        Lattice z2 = member_lattice(cfg, t2);
        const auto& e_sigma = classes.at(pd.sigma.members);
        for (const EClass& l1 : classes.at(t1.members)) {
            for (const EClass& l2 : classes.at(t2.members)) {
                // common representative x in span(sigma) with x = l1 mod Ztau1,
                // x = l2 mod Ztau2
                const int d = cfg.dim();
                int r1 = z1.lattice_rank(), r2 = z2.lattice_rank();
                RatVec rhs_top = vec_sub(l1.rep, l2.rep);
                int rrows = pd.sigma_residue.rows();
                // assemble rational system M (columns y1 | y2) = rhs
                int rows = d + rrows;
                RatMat m(rows, r1 + r2);
                RatVec rhs(std::size_t(rows), Rat(0));
                for (int x = 0; x < d; ++x) {
                    for (int k = 0; k < r1; ++k) m(x, k) = Rat(z1.basis()(x, k));
                    for (int k = 0; k < r2; ++k) m(x, r1 + k) = Rat(z2.basis()(x, k));
                    rhs[std::size_t(x)] = rhs_top[std::size_t(x)];
                }
                // residue rows: residue(l1.rep - B1 y1) = 0
                for (int k = 0; k < r1; ++k) {
                    RatVec col = mul(pd.sigma_residue, to_rat(z1.basis_vector(k)));
                    for (int x = 0; x < rrows; ++x) m(d + x, k) = col[std::size_t(x)];
                }
                RatVec rrhs = mul(pd.sigma_residue, l1.rep);
                for (int x = 0; x < rrows; ++x) rhs[std::size_t(d + x)] = rrhs[std::size_t(x)];

                // integer solve after clearing denominators
                Int den = 1;
                for (int x = 0; x < rows; ++x) {
                    for (int k = 0; k < r1 + r2; ++k) den = lcm(den, denominator(m(x, k)));
                    den = lcm(den, denominator(rhs[std::size_t(x)]));
                }
                IntMat mi(rows, r1 + r2);
                auto ci = IntVec(std::size_t(rows));
                for (int x = 0; x < rows; ++x) {
                    for (int k = 0; k < r1 + r2; ++k) mi(x, k) = numerator(m(x, k) * Rat(den));
                    ci[std::size_t(x)] = numerator(rhs[std::size_t(x)] * Rat(den));
                }
                auto sol = integer_combination(mi, ci);
                if (!sol) continue;  // no common representative
                RatVec x0 = l1.rep;
                for (int k = 0; k < r1; ++k) {
                    IntVec bvec = z1.basis_vector(k);
                    for (int x = 0; x < d; ++x)
                        x0[std::size_t(x)] -= Rat((*sol)[std::size_t(k)] * bvec[std::size_t(x)]);
                }
                for (const RatVec& shift : pd.common_shifts) {
                    RatVec cand = vec_add(x0, shift);
                    EClass cls{pd.sigma, cand, pd.sigma_lattice};
                    bool in_sigma = false;
                    for (const EClass& es : e_sigma)
                        if (eclass_equal(cls, es)) in_sigma = true;
                    if (!in_sigma) {
                        result.exceptional = true;
                        if (!result.witness)
                            result.witness = ExceptionalWitness{t1, t2, cand};
                    }
                }
            }
        }
        if (result.exceptional) break;
    }

    // cross-check against the rank formula
    DimensionBreakdown bd = dim_breakdown(cfg, beta, tri_, *engine_, budget);
    bool by_rank = bd.total > volume_;
    if (by_rank != result.exceptional)
        throw InternalInconsistency("exceptionality test disagrees with the rank formula");
    return result;
}

ExceptionalResult is_exceptional(const Configuration& cfg, const Parameter& beta, long budget) {
    ExceptionalTester tester(cfg);
    return tester.test(beta, budget);
}

std::vector<IntVec> saturation_layer(const Configuration& cfg, int degree) {
    const int d = cfg.dim();
    // facet inequalities of the cone
    std::vector<RatVec> normals;
    for (const Face& f : cone_faces(cfg)) {
        if (f.span_dim != d - 1) continue;
        RatMat rows(int(f.members.size()), d);
        for (int r = 0; r < int(f.members.size()); ++r)
            for (int c = 0; c < d; ++c) rows(r, c) = Rat(cfg.matrix()(c, f.members[std::size_t(r)]));
        auto ker = rational_kernel(rows);
        if (ker.size() != 1) throw InternalInconsistency("facet normal not unique");
        RatVec nrm = ker[0];
        bool nonneg = true;
        for (int j = 0; j < cfg.npoints(); ++j)
            if (dot(nrm, cfg.column_rat(j)) < 0) nonneg = false;
        if (!nonneg)
            for (Rat& q : nrm) q = -q;
        normals.push_back(nrm);
    }
    if (d == 1) normals.push_back(cfg.homogeneity());
    Polyhedron p(d);
    for (const RatVec& nrm : normals) p.add_ge(nrm, Rat(0));
    p.add_eq(cfg.homogeneity(), Rat(degree));
    std::vector<IntVec> out;
    for (const IntVec& x : integer_points(p, 2000000)) {
        if (cfg.za().contains(to_rat(x))) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Parameter> exceptional_sweep(const Configuration& cfg, int degree_lo, int degree_hi,
                                         long budget) {
    ExceptionalTester tester(cfg);
    std::vector<IntVec> candidates;
    for (int k = std::max(0, degree_lo); k <= degree_hi; ++k)
        for (IntVec& x : saturation_layer(cfg, k)) candidates.push_back(std::move(x));
    std::vector<char> hits(candidates.size(), 0);
    parallel_for(long(candidates.size()), [&](long i) {
        hits[std::size_t(i)] = tester.test(to_rat(candidates[std::size_t(i)]), budget).exceptional;
    });
    std::vector<Parameter> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (hits[i]) out.push_back(to_rat(candidates[i]));
    std::sort(out.begin(), out.end());
    return out;
}

CMResult is_cohen_macaulay(const Configuration& cfg, long search_bound) {
    std::vector<int> verts = hull_vertices(cfg);
    if (int(verts.size()) != cfg.dim()) throw NotSimplex("conv(A) is not a simplex");

    CMResult result;
    SemigroupTable table(cfg);
    int bound = int(search_bound);
    for (int k = 0; k <= bound; ++k) {
        for (const IntVec& x : saturation_layer(cfg, k))
            if (!table.contains(x)) result.holes.push_back(x);
    }
    bool stabilized = true;
    for (const IntVec& h : result.holes) {
        Rat deg = cfg.h_degree(to_rat(h));
        if (deg >= bound - 1) stabilized = false;
    }

    // all disjoint-support pairs of vertex shift vectors with entries <= bound
    std::vector<std::map<int, Int>> shift_vectors;
    {
        std::vector<std::map<int, Int>> acc{{}};
        for (int v : verts) {
            std::vector<std::map<int, Int>> next;
            for (const auto& base : acc)
                for (long e = 0; e <= search_bound; ++e) {
                    auto m = base;
                    if (e > 0) m[v] = e;
                    next.push_back(std::move(m));
                }
            acc = std::move(next);
        }
        shift_vectors = std::move(acc);
    }
    auto disjoint = [](const std::map<int, Int>& a, const std::map<int, Int>& b) {
        for (const auto& [k, v] : a)
            if (b.count(k)) return false;
        return true;
    };
    auto shifted = [&](const IntVec& beta, const std::map<int, Int>& m) {
        IntVec x = beta;
        for (const auto& [col, e] : m) {
            IntVec a = cfg.column(col);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += e * a[i];
        }
        return x;
    };

    for (const IntVec& hole : result.holes) {
        std::vector<const std::map<int, Int>*> good;
        for (const auto& m : shift_vectors) {
            if (m.empty()) continue;
            if (table.contains(shifted(hole, m))) good.push_back(&m);
        }
        for (std::size_t i = 0; i < good.size() && !result.witness; ++i)
            for (std::size_t j = i + 1; j < good.size() && !result.witness; ++j)
                if (disjoint(*good[i], *good[j]))
                    result.witness = CMWitness{hole, *good[i], *good[j]};
        if (result.witness) break;
    }

    if (result.witness) result.status = CMStatus::NotCohenMacaulay;
    else if (stabilized) result.status = CMStatus::CohenMacaulay;
    else result.status = CMStatus::Inconclusive;
    return result;
}

}  // namespace gkz
