#include "gkz/series.hpp"

#include <algorithm>
#include <map>

#include "gkz/errors.hpp"
#include "gkz/formulas.hpp"
#include "gkz/polytope.hpp"

namespace gkz {

namespace {

bool is_negative_integer(const Rat& q) { return is_integer(q) && q < 0; }
bool is_natural(const Rat& q) { return is_integer(q) && q >= 0; }

std::vector<int> negative_support(const RatVec& v) {
    std::vector<int> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (is_negative_integer(v[i])) s.push_back(int(i));
    return s;
}

// falling factorial x (x-1) ... (x-t+1)
Rat falling(const Rat& x, const Int& t) {
    Rat p = 1;
    for (Int k = 0; k < t; ++k) p *= (x - Rat(k));
    return p;
}

IntVec positive_part(const IntVec& u) {
    IntVec p(u.size(), Int(0));
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > 0) p[i] = u[i];
    return p;
}

IntVec negative_part(const IntVec& u) {
    IntVec p(u.size(), Int(0));
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] < 0) p[i] = -u[i];
    return p;
}

Rat bracket(const RatVec& v, const IntVec& t) {
    Rat p = 1;
    for (std::size_t i = 0; i < v.size(); ++i) p *= falling(v[i], t[i]);
    return p;
}

// Polyhedron over the kernel coordinates cutting out N_v (and extra rows).
Polyhedron n_v_polyhedron(const RatVec& v, const KernelLattice& l) {
    int r = l.kernel_rank();
    Polyhedron p(r);
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!is_integer(v[j])) continue;
        auto row = RatVec(std::size_t(r));
        for (int k = 0; k < r; ++k) row[std::size_t(k)] = Rat(l.l.basis()(int(j), k));
        if (is_negative_integer(v[j]))
            p.add_le(row, -v[j] - 1);  // u_j < -v_j over integers
        else
            p.add_ge(row, -v[j]);  // u_j >= -v_j
    }
    return p;
}

IntVec kernel_point(const KernelLattice& l, const IntVec& k) {
    IntVec u(std::size_t(l.ambient()), Int(0));
    for (int j = 0; j < l.kernel_rank(); ++j)
        for (int i = 0; i < l.ambient(); ++i) u[std::size_t(i)] += l.l.basis()(i, j) * k[std::size_t(j)];
    return u;
}

}  // namespace

KernelLattice kernel_lattice(const Configuration& cfg) {
    IntMat k = integer_kernel(cfg.matrix());
    KernelLattice out{Lattice::from_generators(cfg.npoints(), k)};
    if (out.kernel_rank() != cfg.npoints() - cfg.dim())
        throw InternalInconsistency("kernel lattice rank mismatch");
    return out;
}

Exponent analyze_exponent(const Configuration& cfg, const RatVec& v) {
    if (int(v.size()) != cfg.npoints()) throw std::invalid_argument("exponent length mismatch");
    RatVec av = mul_rat(cfg.matrix(), v);
    Exponent e;
    e.v = v;
    std::vector<int> iv;  // { j : v_j not in N }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_negative_integer(v[i])) {
            e.nsupp.push_back(int(i));
            iv.push_back(int(i));
        } else if (is_natural(v[i])) {
            e.psupp.push_back(int(i));
        } else {
            iv.push_back(int(i));
        }
    }
    e.face = make_simplex_face(cfg, iv);
    if (int(e.face.vertices.size()) != int(iv.size()))
        throw InternalInconsistency("exponent support columns are dependent");
    RatVec rep(std::size_t(cfg.dim()), Rat(0));
    for (int j : e.face.members)
        for (int i = 0; i < cfg.dim(); ++i)
            rep[std::size_t(i)] += v[std::size_t(j)] * Rat(cfg.matrix()(i, j));
    e.klass = EClass{e.face, rep, member_lattice(cfg, e.face)};
    return e;
}

std::optional<RatVec> shrink_negative_support(const Configuration& cfg, const RatVec& v,
                                              long budget) {
    std::vector<int> ns = negative_support(v);
    const int n = cfg.npoints(), d = cfg.dim();
    for (int drop : ns) {
        // keep set M: integer coordinates outside nsupp, plus the dropped index
        std::vector<int> keep, t_cols;
        for (int j = 0; j < n; ++j) {
            bool in_ns = std::binary_search(ns.begin(), ns.end(), j);
            if (!is_integer(v[std::size_t(j)]) || (in_ns && j != drop))
                t_cols.push_back(j);
            else
                keep.push_back(j);
        }
        IntVec target(std::size_t(d), Int(0));
        for (int j : keep) {
            Int vj = numerator(v[std::size_t(j)]);
            for (int i = 0; i < d; ++i) target[std::size_t(i)] += vj * cfg.matrix()(i, j);
        }
        LocalizedMonoid monoid(cfg, t_cols);
        auto witness = monoid.member_witness(target, budget);
        if (!witness) continue;
        RatVec out = v;
        for (int j : keep) out[std::size_t(j)] = 0;
        for (auto& [col, c] : *witness) {
            if (std::binary_search(t_cols.begin(), t_cols.end(), col))
                out[std::size_t(col)] = v[std::size_t(col)] + Rat(c);
            else
                out[std::size_t(col)] = Rat(c);
        }
        return out;
    }
    return std::nullopt;
}

bool has_minimal_negative_support(const Configuration& cfg, const RatVec& v, long budget) {
    return !shrink_negative_support(cfg, v, budget).has_value();
}

RatVec minimal_support_repair(const Configuration& cfg, const RatVec& v, long budget) {
    RatVec cur = v;
    while (auto next = shrink_negative_support(cfg, cur, budget)) cur = *next;
    return cur;
}

bool in_n_v(const RatVec& v, const IntVec& u) {
    if (v.size() != u.size()) throw std::invalid_argument("in_n_v: length mismatch");
    RatVec shifted(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) shifted[i] = v[i] + Rat(u[i]);
    return negative_support(v) == negative_support(shifted);
}

RatVec canonicalize_exponent(const RatVec& v, const RatVec& w, const KernelLattice& l,
                             long budget) {
    Polyhedron p = n_v_polyhedron(v, l);
    auto wrow = RatVec(std::size_t(l.kernel_rank()));
    for (int k = 0; k < l.kernel_rank(); ++k) {
        Rat s = 0;
        for (int i = 0; i < l.ambient(); ++i) s += w[std::size_t(i)] * Rat(l.l.basis()(i, k));
        wrow[std::size_t(k)] = s;
    }
    // the candidate may sit far above the optimum, so enumerate thin slabs
    // around the exact LP minimum instead of everything below zero (u = 0 is
    // always feasible, so the optimum lies in [lp_min, 0])
    auto floor_level = lp_min(p, wrow);
    if (!floor_level) throw NonGenericWeight("weight is not positive on the characteristic cone");
    Rat level = *floor_level;
    Rat step = 1;
    std::vector<IntVec> pts;
    while (true) {
        Polyhedron slab = p;
        slab.add_le(wrow, level);
        try {
            pts = integer_points(slab, budget * 1024 + 4096);
        } catch (const UnboundedPolytope&) {
            throw NonGenericWeight("weight is not positive on the characteristic cone");
        }
        if (!pts.empty()) break;
        if (level >= 0)
            throw InternalInconsistency("canonicalize_exponent: N_v lost the origin");
        level = std::min(Rat(0), Rat(level + step));
        step *= 2;
    }
    std::optional<Rat> best;
    IntVec best_k;
    bool tie = false;
    for (const IntVec& k : pts) {
        Rat val = 0;
        for (int j = 0; j < l.kernel_rank(); ++j) val += wrow[std::size_t(j)] * Rat(k[std::size_t(j)]);
        if (!best || val < *best) {
            best = val;
            best_k = k;
            tie = false;
        } else if (val == *best && !(k == best_k)) {
            tie = true;
        }
    }
    if (tie) throw NonGenericWeight("weight has a tie on N_v");
    IntVec u = kernel_point(l, best_k);
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + Rat(u[i]);
    return out;
}

std::vector<Exponent> exponents_for(const Configuration& cfg, const Face& tau,
                                    const EClass& lambda, const Parameter& beta,
                                    const RatVec& w, long budget) {
    KernelLattice l = kernel_lattice(cfg);
    std::vector<Exponent> out;
    for (RatVec vk : exp_class_candidates(cfg, tau, lambda, beta, budget)) {
        vk = minimal_support_repair(cfg, vk, budget);
        vk = canonicalize_exponent(vk, w, l, budget);
        out.push_back(analyze_exponent(cfg, vk));
    }
    if (Int(out.size()) != normalized_volume(cfg, tau))
        throw InternalInconsistency("exponents_for produced a wrong class count");
    std::sort(out.begin(), out.end(),
              [](const Exponent& a, const Exponent& b) { return a.v < b.v; });
    return out;
}

std::vector<Exponent> minex(const Configuration& cfg, const Parameter& beta, const RatVec& w,
                            long budget) {
    Triangulation t = regular_triangulation(cfg, w);
    EtauEngine engine(cfg);
    engine.prepare(t.face_poset);

    std::vector<Exponent> out;
    for (const Face& tau : t.face_poset) {
        for (const EClass& lambda : engine.e_tau(tau, beta, budget)) {
            for (Exponent& e : exponents_for(cfg, tau, lambda, beta, w, budget)) {
                // attribute to its own pair (tau_v, lambda_v) only
                if (!(e.face.members == tau.members)) continue;
                if (!eclass_equal(e.klass, lambda)) continue;
                out.push_back(std::move(e));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
        if (a.face.members != b.face.members) return a.face.members < b.face.members;
        return a.v < b.v;
    });
    // Lambda is injective: no two exponents share (tau_v, class mod L)
    KernelLattice l = kernel_lattice(cfg);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (!(out[i].face == out[j].face)) continue;
            if (l.l.contains(vec_sub(out[i].v, out[j].v)))
                throw InternalInconsistency("minex: duplicate (face, class) pair");
        }
    DimensionBreakdown formula = dim_log_free(cfg, beta, t, budget);
    if (formula.total != Int(out.size()))
        throw InternalInconsistency("minex count disagrees with the dimension formula");
    return out;
}

TruncatedSeries phi_series(const Configuration& cfg, const Exponent& base, const RatVec& w,
                           const Rat& order, long budget) {
    KernelLattice l = kernel_lattice(cfg);
    Polyhedron nv = n_v_polyhedron(base.v, l);
    bool poly = is_bounded(nv);

    RatVec wrow(std::size_t(l.kernel_rank()));
    for (int k = 0; k < l.kernel_rank(); ++k) {
        Rat s = 0;
        for (int i = 0; i < l.ambient(); ++i) s += w[std::size_t(i)] * Rat(l.l.basis()(i, k));
        wrow[std::size_t(k)] = s;
    }
    Polyhedron cut = nv;
    cut.add_le(wrow, order);
    std::vector<IntVec> pts;
    try {
        pts = integer_points(cut, budget * 1024 + 4096);
    } catch (const UnboundedPolytope&) {
        throw NonGenericWeight("series support is unbounded under the truncation order");
    }

    TruncatedSeries s;
    s.base = base;
    s.w = w;
    s.order = order;
    s.polynomial = poly;
    for (const IntVec& k : pts) {
        IntVec u = kernel_point(l, k);
        Rat num = bracket(base.v, negative_part(u));
        RatVec vu(base.v.size());
        for (std::size_t i = 0; i < vu.size(); ++i) vu[i] = base.v[i] + Rat(u[i]);
        Rat den = bracket(vu, positive_part(u));
        if (den == 0)
            throw ZeroDenominator("phi_series: vanishing denominator, base is not valid");
        s.terms.emplace_back(u, num / den);
    }
    auto weight_of = [&](const IntVec& u) {
        Rat s2 = 0;
        for (std::size_t i = 0; i < u.size(); ++i) s2 += w[i] * Rat(u[i]);
        return s2;
    };
    std::sort(s.terms.begin(), s.terms.end(), [&](const auto& a, const auto& b) {
        Rat wa = weight_of(a.first), wb = weight_of(b.first);
        if (wa != wb) return wa < wb;
        return a.first < b.first;
    });
    if (s.terms.empty() || !is_zero_vec(s.terms.front().first) || s.terms.front().second != 1)
        throw InternalInconsistency("phi_series: missing unit constant term");
    return s;
}

AnnihilationReport verify_annihilation(const Configuration& cfg, const TruncatedSeries& s,
                                       const Parameter& beta, long degree_bound, long budget) {
    AnnihilationReport report;
    const RatVec& v = s.base.v;

    // Euler operators: every term must satisfy A(v+u) = beta exactly
    report.euler_exact = true;
    for (const auto& [u, c] : s.terms) {
        RatVec vu(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) vu[i] = v[i] + Rat(u[i]);
        RatVec av = mul_rat(cfg.matrix(), vu);
        if (!(av == beta)) report.euler_exact = false;
    }

    // box operators: lattice vectors with coordinate norm <= degree_bound
    KernelLattice l = kernel_lattice(cfg);
    Polyhedron box(l.kernel_rank());
    for (int j = 0; j < cfg.npoints(); ++j) {
        RatVec row(std::size_t(l.kernel_rank()));
        for (int k = 0; k < l.kernel_rank(); ++k) row[std::size_t(k)] = Rat(l.l.basis()(j, k));
        box.add_le(row, Rat(degree_bound));
        box.add_ge(row, Rat(-degree_bound));
    }
    std::vector<IntVec> ops;
    for (const IntVec& k : integer_points(box, budget * 1024 + 4096)) {
        IntVec u = kernel_point(l, k);
        if (is_zero_vec(u)) continue;
        bool positive_lead = false;
        for (const Int& x : u) {
            if (x != 0) {
                positive_lead = x > 0;
                break;
            }
        }
        if (positive_lead) ops.push_back(u);
    }
    std::sort(ops.begin(), ops.end());

    std::map<IntVec, Rat> coeff;
    for (const auto& [u, c] : s.terms) coeff[u] = c;
    auto weight_of = [&](const IntVec& u) {
        Rat t = 0;
        for (std::size_t i = 0; i < u.size(); ++i) t += s.w[i] * Rat(u[i]);
        return t;
    };

    for (const IntVec& op : ops) {
        IntVec lp = positive_part(op), lm = negative_part(op);
        Rat wcap = s.order - std::max({weight_of(lp), weight_of(lm), Rat(0)});
        AnnihilationReport::BoxCheck check;
        check.op = op;
        check.checked_up_to = wcap;
        check.vanished = true;
        std::set<IntVec> exponents;  // offsets g with x^{v+g} present
        for (const auto& [u, c] : s.terms) {
            IntVec g1(u.size()), g2(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) {
                g1[i] = u[i] - lp[i];
                g2[i] = u[i] - lm[i];
            }
            exponents.insert(g1);
            exponents.insert(g2);
        }
        for (const IntVec& g : exponents) {
            if (weight_of(g) > wcap) continue;  // beyond the guaranteed horizon
            IntVec u1(g.size()), u2(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) {
                u1[i] = g[i] + lp[i];
                u2[i] = g[i] + lm[i];
            }
            RatVec vg1(v.size()), vg2(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                vg1[i] = v[i] + Rat(u1[i]);
                vg2[i] = v[i] + Rat(u2[i]);
            }
            auto it1 = coeff.find(u1);
            auto it2 = coeff.find(u2);
            Rat c1 = it1 == coeff.end() ? Rat(0) : it1->second;
            Rat c2 = it2 == coeff.end() ? Rat(0) : it2->second;
            Rat value = c1 * bracket(vg1, lp) - c2 * bracket(vg2, lm);
            if (value != 0) check.vanished = false;
        }
        report.boxes.push_back(std::move(check));
    }
    return report;
}

}  // namespace gkz
