#include "gkz/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gkz/errors.hpp"

namespace gkz {

namespace {

void rec_subsets(int n, int k, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - (k - int(cur.size())); ++i) {
        cur.push_back(i);
        rec_subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

Rat falling(const Rat& x, const Int& t) {
    Rat p = 1;
    for (Int k = 0; k < t; ++k) p *= (x - Rat(k));
    return p;
}

Rat bracket(const RatVec& v, const IntVec& t) {
    Rat p = 1;
    for (std::size_t i = 0; i < v.size(); ++i) p *= falling(v[i], t[i]);
    return p;
}

}  // namespace

Triangulation oracle_lower_hull(const Configuration& cfg, const RatVec& w) {
    const int d = cfg.dim(), n = cfg.npoints();
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    rec_subsets(n, d, 0, cur, subsets);

    std::vector<std::vector<int>> cells;
    for (const auto& idx : subsets) {
        RatMat at(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) at(r, c) = Rat(cfg.matrix()(c, idx[std::size_t(r)]));
        if (rank(at) != d) continue;
        auto wi = RatVec(std::size_t(d));
        for (int r = 0; r < d; ++r) wi[std::size_t(r)] = w[std::size_t(idx[std::size_t(r)])];
        RatVec c = *solve(at, wi);
        bool cell = true;
        for (int j = 0; j < n; ++j) {
            if (std::binary_search(idx.begin(), idx.end(), j)) continue;
            Rat slack = w[std::size_t(j)] - dot(c, cfg.column_rat(j));
            if (slack == 0) {
                bool supporting = true;
                for (int k = 0; k < n; ++k) {
                    if (std::binary_search(idx.begin(), idx.end(), k)) continue;
                    if (w[std::size_t(k)] - dot(c, cfg.column_rat(k)) < 0) supporting = false;
                }
                if (supporting)
                    throw NonGenericWeight("oracle: extra point on a lower-hull face");
            }
            if (slack <= 0) cell = false;
        }
        if (cell) cells.push_back(idx);
    }

    Triangulation t;
    t.weight = w;
    for (const auto& idx : cells) t.maximal_cells.push_back(make_simplex_face(cfg, idx));
    std::sort(t.maximal_cells.begin(), t.maximal_cells.end(), face_less);

    std::set<std::vector<int>> vertex_sets;
    vertex_sets.insert({});
    for (const Face& cell : t.maximal_cells) {
        int k = int(cell.vertices.size());
        for (int mask = 1; mask < (1 << k); ++mask) {
            std::vector<int> sub;
            for (int b = 0; b < k; ++b)
                if (mask & (1 << b)) sub.push_back(cell.vertices[std::size_t(b)]);
            vertex_sets.insert(sub);
        }
    }
    for (const auto& verts : vertex_sets) t.face_poset.push_back(make_simplex_face(cfg, verts));
    std::sort(t.face_poset.begin(), t.face_poset.end(), face_less);
    return t;
}

std::vector<EClass> oracle_e_tau(const Configuration& cfg, const Face& tau, const Parameter& beta,
                                 int degree_bound) {
    Lattice ztau = member_lattice(cfg, tau);
    SemigroupTable table(cfg);
    std::vector<EClass> classes;
    auto push_class = [&](const RatVec& rep) {
        EClass cls{tau, rep, ztau};
        for (const EClass& c : classes)
            if (eclass_equal(c, cls)) return;
        classes.push_back(cls);
    };

    // shift box over the lattice basis; shifts stay inside one class, so a
    // unit box already covers every class the definition can produce
    std::vector<IntVec> shifts;
    int r = ztau.lattice_rank();
    auto coeff = IntVec(std::size_t(r), Int(0));
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == r) {
            IntVec z(std::size_t(cfg.dim()), Int(0));
            for (int k = 0; k < r; ++k) {
                IntVec b = ztau.basis_vector(k);
                for (int i = 0; i < cfg.dim(); ++i) z[std::size_t(i)] += coeff[std::size_t(k)] * b[std::size_t(i)];
            }
            shifts.push_back(std::move(z));
            return;
        }
        for (long c = -1; c <= 1; ++c) {
            coeff[std::size_t(pos)] = c;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);

    for (int k = 0; k <= degree_bound; ++k) {
        for (const IntVec& gamma : table.layer(k)) {
            for (const IntVec& z : shifts) {
                RatVec rep(std::size_t(cfg.dim()));
                for (int i = 0; i < cfg.dim(); ++i)
                    rep[std::size_t(i)] = beta[std::size_t(i)] - Rat(gamma[std::size_t(i)]) - Rat(z[std::size_t(i)]);
                if (!ztau.span_contains(rep)) continue;
                push_class(rep);
            }
        }
    }
    std::sort(classes.begin(), classes.end(), eclass_less);
    return classes;
}

bool oracle_series_check(const Configuration& cfg, const TruncatedSeries& s) {
    KernelLattice l = kernel_lattice(cfg);
    const RatVec& v = s.base.v;

    // propagation steps: a small basis box plus every difference of support
    // vectors, so each term is one recurrence hop away from the unit term
    std::set<IntVec> step_set;
    int r = l.kernel_rank();
    auto coeff = IntVec(std::size_t(r), Int(0));
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == r) {
            IntVec u(std::size_t(cfg.npoints()), Int(0));
            for (int k = 0; k < r; ++k) {
                for (int i = 0; i < cfg.npoints(); ++i)
                    u[std::size_t(i)] += coeff[std::size_t(k)] * l.l.basis()(i, k);
            }
            if (!is_zero_vec(u)) step_set.insert(std::move(u));
            return;
        }
        for (long c = -2; c <= 2; ++c) {
            coeff[std::size_t(pos)] = c;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    for (const auto& [u1, c1] : s.terms)
        for (const auto& [u2, c2] : s.terms) {
            IntVec diff(u1.size());
            for (std::size_t i = 0; i < u1.size(); ++i) diff[i] = u1[i] - u2[i];
            if (!is_zero_vec(diff)) step_set.insert(std::move(diff));
        }
    std::vector<IntVec> steps(step_set.begin(), step_set.end());

    std::map<IntVec, Rat> expected;
    for (const auto& [u, c] : s.terms) expected[u] = c;
    std::map<IntVec, Rat> derived;
    IntVec zero(std::size_t(cfg.npoints()), Int(0));
    if (!expected.count(zero)) return false;
    derived[zero] = 1;

    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& [u, c_closed] : expected) {
            if (derived.count(u)) continue;
            for (const IntVec& step : steps) {
                IntVec prev(u.size());
                for (std::size_t i = 0; i < u.size(); ++i) prev[i] = u[i] - step[i];
                auto it = derived.find(prev);
                if (it == derived.end()) continue;
                IntVec lp(u.size(), Int(0)), lm(u.size(), Int(0));
                for (std::size_t i = 0; i < u.size(); ++i) {
                    if (step[i] > 0) lp[i] = step[i];
                    if (step[i] < 0) lm[i] = -step[i];
                }
                RatVec vu(v.size()), vprev(v.size());
                for (std::size_t i = 0; i < v.size(); ++i) {
                    vu[i] = v[i] + Rat(u[i]);
                    vprev[i] = v[i] + Rat(prev[i]);
                }
                Rat denom = bracket(vu, lp);
                if (denom == 0) continue;
                derived[u] = it->second * bracket(vprev, lm) / denom;
                progress = true;
                break;
            }
        }
    }
    if (derived.size() != expected.size()) return false;
    for (const auto& [u, c] : expected)
        if (derived.at(u) != c) return false;
    return true;
}

}  // namespace gkz
