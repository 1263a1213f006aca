#include "gkz/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gkz/errors.hpp"
#include "gkz/parallel.hpp"
#include "gkz/polytope.hpp"

namespace gkz {

bool face_less(const Face& a, const Face& b) {
    if (a.span_dim != b.span_dim) return a.span_dim < b.span_dim;
    return a.members < b.members;
}

std::string face_label(const Face& f) {
    std::string s = "{";
    for (std::size_t i = 0; i < f.members.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(f.members[i] + 1);
    }
    return s + "}";
}

Configuration Configuration::make(const IntMat& a) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("empty configuration");
    Configuration cfg;
    cfg.a_ = a;
    if (rank(a) != a.rows()) throw RankDeficient("configuration matrix must have full row rank");
    // h with h.a_j = 1 for every column
    RatMat at = to_rat(a).transposed();
    RatVec ones(std::size_t(a.cols()), Rat(1));
    auto h = solve(at, ones);
    if (!h) throw NotHomogeneous("columns do not lie on a common hyperplane off the origin");
    // solve() zero-fills free variables; verify exactly
    for (int j = 0; j < a.cols(); ++j)
        if (dot(*h, to_rat(a.column(j))) != 1)
            throw NotHomogeneous("columns do not lie on a common hyperplane off the origin");
    cfg.h_ = *h;
    std::vector<IntVec> cols;
    for (int j = 0; j < a.cols(); ++j) cols.push_back(a.column(j));
    cfg.za_ = Lattice::from_generators(a.rows(), cols);
    return cfg;
}

Lattice column_lattice(const Configuration& cfg, const std::vector<int>& columns) {
    std::vector<IntVec> cols;
    for (int j : columns) cols.push_back(cfg.column(j));
    return Lattice::from_generators(cfg.dim(), cols);
}

Lattice member_lattice(const Configuration& cfg, const Face& tau) {
    return column_lattice(cfg, tau.members);
}

Lattice vertex_lattice(const Configuration& cfg, const Face& tau) {
    return column_lattice(cfg, tau.vertices);
}

bool simplex_contains(const Configuration& cfg, const std::vector<int>& vertices, int j) {
    // a_j = sum c_i a_i with c_i >= 0; the coefficient sum is 1 automatically
    // because h.a = 1 on every column.
    RatMat m(cfg.dim(), int(vertices.size()));
    for (int k = 0; k < int(vertices.size()); ++k)
        for (int i = 0; i < cfg.dim(); ++i) m(i, k) = Rat(cfg.matrix()(i, vertices[std::size_t(k)]));
    auto x = solve(m, cfg.column_rat(j));
    if (!x) return false;
    for (const Rat& c : *x)
        if (c < 0) return false;
    return true;
}

Face make_simplex_face(const Configuration& cfg, std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    Face f;
    f.kind = Face::Kind::Triangulation;
    f.vertices = vertices;
    f.span_dim = int(vertices.size());
    for (int j = 0; j < cfg.npoints(); ++j)
        if (!vertices.empty() && simplex_contains(cfg, vertices, j)) f.members.push_back(j);
    return f;
}

Face intersect_simplex_faces(const Configuration& cfg, const Face& a, const Face& b) {
    std::vector<int> common;
    std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(),
                          b.vertices.end(), std::back_inserter(common));
    return make_simplex_face(cfg, common);
}

namespace {

// Enumerates size-k subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (int(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - int(cur.size())); ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Sign of an eps-polynomial c[0] + c[1] eps + ...: the sign of the first
// nonzero coefficient; 0 when identically zero.
int lex_sign(const RatVec& c) {
    for (const Rat& q : c) {
        if (q > 0) return 1;
        if (q < 0) return -1;
    }
    return 0;
}

struct CandidateVerdict {
    bool is_cell = false;
    bool equality_certificate = false;  // supporting hyperplane through an extra point
};

struct ScanOutcome {
    std::vector<std::vector<int>> cells;  // vertex index sets
    bool generic = true;
};

ScanOutcome scan_candidate_cells(const Configuration& cfg, const RatVec& w, bool perturb,
                                 bool parallel) {
    const int d = cfg.dim(), n = cfg.npoints();
    auto candidates = subsets_of_size(n, d);
    std::vector<CandidateVerdict> verdicts(candidates.size());

    auto probe = [&](long idx) {
        const std::vector<int>& I = candidates[std::size_t(idx)];
        RatMat at(d, d);  // rows: a_i^T for i in I
        for (int r = 0; r < d; ++r)
            for (int cidx = 0; cidx < d; ++cidx)
                at(r, cidx) = Rat(cfg.matrix()(cidx, I[std::size_t(r)]));
        if (rank(at) != d) return;  // dependent columns, not a simplex
        auto wi = RatVec(std::size_t(d));
        for (int r = 0; r < d; ++r) wi[std::size_t(r)] = w[std::size_t(I[std::size_t(r)])];
        RatVec c0 = *solve(at, wi);
        std::vector<RatVec> gamma;  // rows of the inverse, for the eps terms
        if (perturb) {
            for (int r = 0; r < d; ++r) {
                RatVec e(std::size_t(d), Rat(0));
                e[std::size_t(r)] = 1;
                gamma.push_back(*solve(at, e));
            }
        }
        CandidateVerdict v;
        bool all_positive = true, any_zero = false, any_negative = false;
        for (int j = 0; j < n && all_positive; ++j) {
            if (std::binary_search(I.begin(), I.end(), j)) continue;
            RatVec aj = cfg.column_rat(j);
            Rat s0 = w[std::size_t(j)] - dot(c0, aj);
            int sign;
            if (!perturb) {
                sign = s0 > 0 ? 1 : (s0 < 0 ? -1 : 0);
            } else {
                RatVec poly(std::size_t(n) + 1, Rat(0));
                poly[0] = s0;
                poly[std::size_t(j) + 1] += 1;
                for (int r = 0; r < d; ++r)
                    poly[std::size_t(I[std::size_t(r)]) + 1] -= dot(gamma[std::size_t(r)], aj);
                sign = lex_sign(poly);
            }
            if (sign <= 0) all_positive = false;
            if (sign == 0) any_zero = true;
            if (sign < 0) any_negative = true;
        }
        if (all_positive) v.is_cell = true;
        else if (any_zero && !any_negative) v.equality_certificate = true;
        verdicts[std::size_t(idx)] = v;
    };

    if (parallel) parallel_for(long(candidates.size()), probe);
    else serial_for(long(candidates.size()), probe);

    ScanOutcome out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (verdicts[i].equality_certificate) out.generic = false;
        if (verdicts[i].is_cell) out.cells.push_back(candidates[i]);
    }
    return out;
}

}  // namespace

bool is_generic_weight(const Configuration& cfg, const RatVec& w) {
    if (int(w.size()) != cfg.npoints()) throw std::invalid_argument("weight length mismatch");
    ScanOutcome out = scan_candidate_cells(cfg, w, false, true);
    if (!out.generic) return false;
    // every point must land in some cell; a miss means a non-simplicial hull face
    std::vector<bool> covered(std::size_t(cfg.npoints()), false);
    for (const auto& cell : out.cells) {
        Face f = make_simplex_face(cfg, cell);
        for (int j : f.members) covered[std::size_t(j)] = true;
    }
    for (bool b : covered)
        if (!b) return false;
    return true;
}

Triangulation regular_triangulation(const Configuration& cfg, const RatVec& w,
                                    const TriangulationOptions& options) {
    if (int(w.size()) != cfg.npoints()) throw std::invalid_argument("weight length mismatch");
    ScanOutcome out = scan_candidate_cells(cfg, w, options.perturb, options.parallel);
    if (!options.perturb && !out.generic)
        throw NonGenericWeight("weight lifts extra points onto a lower-hull face");

    Triangulation t;
    t.weight = w;
    t.perturbed = options.perturb;
    for (const auto& cell : out.cells) t.maximal_cells.push_back(make_simplex_face(cfg, cell));
    std::sort(t.maximal_cells.begin(), t.maximal_cells.end(), face_less);

    // close the cells under taking vertex subsets; the empty face is always present
    std::map<std::vector<int>, Face> faces;
    faces[{}] = Face{{}, {}, 0, Face::Kind::Triangulation};
    for (const Face& cell : t.maximal_cells) {
        int k = int(cell.vertices.size());
        for (int mask = 1; mask < (1 << k); ++mask) {
            std::vector<int> sub;
            for (int b = 0; b < k; ++b)
                if (mask & (1 << b)) sub.push_back(cell.vertices[std::size_t(b)]);
            if (!faces.count(sub)) faces[sub] = make_simplex_face(cfg, sub);
        }
    }
    for (auto& [verts, face] : faces) t.face_poset.push_back(face);
    std::sort(t.face_poset.begin(), t.face_poset.end(), face_less);
    return t;
}

std::vector<Face> facets(const Face& tau, const Triangulation& t) {
    std::vector<Face> out;
    if (tau.empty()) return out;
    if (tau.vertices.size() == 1) {
        for (const Face& f : t.face_poset)
            if (f.empty()) { out.push_back(f); return out; }
        throw InternalInconsistency("face poset lacks the empty face");
    }
    for (std::size_t drop = 0; drop < tau.vertices.size(); ++drop) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < tau.vertices.size(); ++i)
            if (i != drop) sub.push_back(tau.vertices[i]);
        bool found = false;
        for (const Face& f : t.face_poset)
            if (f.vertices == sub) {
                out.push_back(f);
                found = true;
                break;
            }
        if (!found) throw InternalInconsistency("facet missing from face poset");
    }
    std::sort(out.begin(), out.end(), face_less);
    return out;
}

Int normalized_volume(const Configuration& cfg, const Face& tau) {
    if (tau.empty()) return 1;
    Lattice vert = vertex_lattice(cfg, tau);
    if (vert.lattice_rank() != int(tau.vertices.size()))
        throw std::invalid_argument("normalized_volume: dependent vertex columns");
    auto idx = lattice_index(vert, member_lattice(cfg, tau));
    if (!idx) throw InternalInconsistency("normalized_volume: vertex lattice rank drop");
    return *idx;
}

std::vector<Face> cone_faces(const Configuration& cfg) {
    const int d = cfg.dim(), n = cfg.npoints();
    std::set<std::vector<int>> member_sets;

    // supporting hyperplanes through (d-1)-subsets of columns
    for (const auto& s : subsets_of_size(n, d - 1)) {
        RatMat rows(int(s.size()), d);
        for (int r = 0; r < int(s.size()); ++r)
            for (int c = 0; c < d; ++c) rows(r, c) = Rat(cfg.matrix()(c, s[std::size_t(r)]));
        if (rank(rows) != d - 1) continue;
        auto kernel = rational_kernel(rows);
        if (kernel.size() != 1) continue;
        RatVec normal = kernel[0];
        bool nonneg = true, nonpos = true;
        for (int j = 0; j < n; ++j) {
            Rat v = dot(normal, cfg.column_rat(j));
            if (v < 0) nonneg = false;
            if (v > 0) nonpos = false;
        }
        if (!nonneg && !nonpos) continue;
        if (nonpos)
            for (Rat& q : normal) q = -q;
        std::vector<int> members;
        for (int j = 0; j < n; ++j)
            if (dot(normal, cfg.column_rat(j)) == 0) members.push_back(j);
        member_sets.insert(members);
    }
    member_sets.insert(std::vector<int>{});  // the {0} face; the cone is pointed
    {
        auto all = std::vector<int>(std::size_t(n));
        for (int j = 0; j < n; ++j) all[std::size_t(j)] = j;
        member_sets.insert(all);
    }
    // close under intersection
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> sets(member_sets.begin(), member_sets.end());
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                std::vector<int> inter;
                std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(),
                                      sets[j].end(), std::back_inserter(inter));
                if (member_sets.insert(inter).second) grew = true;
            }
    }

    std::vector<Face> out;
    for (const auto& members : member_sets) {
        Face f;
        f.kind = Face::Kind::Cone;
        f.members = members;
        if (!members.empty()) {
            RatMat cols(d, int(members.size()));
            for (int k = 0; k < int(members.size()); ++k)
                for (int i = 0; i < d; ++i) cols(i, k) = Rat(cfg.matrix()(i, members[std::size_t(k)]));
            f.span_dim = rank(cols);
        }
        // extreme points of conv(member points); on the h = 1 slice these are
        // exactly the extreme-ray generators of the face
        for (int j : members) {
            std::vector<int> others;
            for (int k : members)
                if (k != j) others.push_back(k);
            if (others.empty()) { f.vertices.push_back(j); continue; }
            // a_j = sum x_k a_k, x >= 0 (coefficients sum to 1 via h)
            Polyhedron sys(int(others.size()));
            for (int i = 0; i < d; ++i) {
                RatVec row(others.size());
                for (std::size_t k = 0; k < others.size(); ++k)
                    row[k] = Rat(cfg.matrix()(i, others[k]));
                sys.add_eq(row, Rat(cfg.matrix()(i, j)));
            }
            for (std::size_t k = 0; k < others.size(); ++k) {
                RatVec row(others.size(), Rat(0));
                row[k] = 1;
                sys.add_ge(row, Rat(0));
            }
            if (!rational_feasible(sys)) f.vertices.push_back(j);
        }
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), face_less);
    return out;
}

}  // namespace gkz
