#include "gkz/params.hpp"

#include <algorithm>
#include <deque>

#include "gkz/errors.hpp"
#include "gkz/parallel.hpp"
#include "gkz/polytope.hpp"

namespace gkz {

namespace {

// Complement-basis projector onto Q^d / span(columns).
struct SpanProjector {
    RatMat solver;  // [span basis | completion], invertible
    int span_rank = 0;
    int dim = 0;

    RatVec project(const RatVec& x) const {
        if (span_rank == dim) return RatVec{};
        auto y = solve(solver, x);
        if (!y) throw InternalInconsistency("span projector solve failed");
        return RatVec(y->begin() + span_rank, y->end());
    }
};

SpanProjector make_projector(const Configuration& cfg, const std::vector<int>& columns) {
    int d = cfg.dim();
    std::vector<RatVec> basis;
    auto try_add = [&](const RatVec& v) {
        std::vector<RatVec> trial = basis;
        trial.push_back(v);
        RatMat m(d, int(trial.size()));
        for (int j = 0; j < int(trial.size()); ++j)
            for (int i = 0; i < d; ++i) m(i, j) = trial[std::size_t(j)][std::size_t(i)];
        if (rank(m) == int(trial.size())) basis.push_back(v);
    };
    for (int j : columns) try_add(cfg.column_rat(j));
    int s = int(basis.size());
    for (int i = 0; i < d && int(basis.size()) < d; ++i) {
        RatVec e(std::size_t(d), Rat(0));
        e[std::size_t(i)] = 1;
        try_add(e);
    }
    SpanProjector p;
    p.dim = d;
    p.span_rank = s;
    p.solver = RatMat(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) p.solver(i, j) = basis[std::size_t(j)][std::size_t(i)];
    return p;
}

Int lcm_denominators(const RatVec& v) {
    Int l = 1;
    for (const Rat& q : v) l = lcm(l, denominator(q));
    return l;
}

}  // namespace

bool eclass_equal(const EClass& a, const EClass& b) {
    if (!(a.face == b.face)) return false;
    return a.modulus.contains(vec_sub(a.rep, b.rep));
}

bool eclass_less(const EClass& a, const EClass& b) {
    if (a.face.members != b.face.members) return a.face.members < b.face.members;
    return a.rep < b.rep;
}

LocalizedMonoid::LocalizedMonoid(const Configuration& cfg, std::vector<int> t_columns)
    : cfg_(&cfg), t_(std::move(t_columns)) {
    std::sort(t_.begin(), t_.end());
    const int d = cfg.dim(), n = cfg.npoints();

    std::vector<int> complement;
    for (int j = 0; j < n; ++j)
        if (!std::binary_search(t_.begin(), t_.end(), j)) complement.push_back(j);

    // units: generators whose projection mod span(T) lies in the lineality of
    // the projected cone, i.e. -q_j is a nonnegative combination of the q_k
    SpanProjector pt = make_projector(cfg, t_);
    std::map<int, RatVec> q;
    for (int j : complement) q[j] = pt.project(cfg.column_rat(j));
    std::map<int, RatVec> unit_certificates;
    for (int j : complement) {
        if (pt.span_rank == d) {  // everything projects to zero
            unit_certificates[j] = RatVec(complement.size(), Rat(0));
            continue;
        }
        Polyhedron sys(int(complement.size()));
        for (int row = 0; row < d - pt.span_rank; ++row) {
            RatVec coeff(complement.size());
            for (std::size_t k = 0; k < complement.size(); ++k)
                coeff[k] = q[complement[k]][std::size_t(row)];
            sys.add_eq(coeff, -q[j][std::size_t(row)]);
        }
        for (std::size_t k = 0; k < complement.size(); ++k) {
            RatVec coeff(complement.size(), Rat(0));
            coeff[k] = 1;
            sys.add_ge(coeff, Rat(0));
        }
        auto cert = rational_point(sys);
        if (cert) unit_certificates[j] = *cert;
    }
    for (auto& [j, cert] : unit_certificates) units_.push_back(j);
    for (int j : complement)
        if (!unit_certificates.count(j)) remaining_.push_back(j);

    // explicit inverse of each unit: -a_u as an integer combination that is
    // nonnegative off T
    IntMat gt(d, int(t_.size()));
    for (int k = 0; k < int(t_.size()); ++k) gt.set_column(k, cfg.column(t_[std::size_t(k)]));
    unit_inverse_.resize(units_.size());
    for (std::size_t ui = 0; ui < units_.size(); ++ui) {
        int j = units_[ui];
        const RatVec& cert = unit_certificates[j];
        Int m = lcm_denominators(cert);
        IntVec theta(std::size_t(d), Int(0));
        std::map<int, Int> theta_coeff;  // on the complement columns
        theta_coeff[j] = m;
        for (std::size_t k = 0; k < complement.size(); ++k) {
            Int p = numerator(Rat(m) * cert[k]);
            if (p != 0) theta_coeff[complement[k]] += p;
        }
        for (auto& [col, coeff] : theta_coeff) {
            IntVec a = cfg.column(col);
            for (int i = 0; i < d; ++i) theta[std::size_t(i)] += coeff * a[std::size_t(i)];
        }
        // order of theta modulo the lattice of the T columns
        Int r = 1;
        if (!is_zero_vec(theta)) {
            Lattice zt = column_lattice(cfg, t_);
            auto x = solve(to_rat(zt.basis()), to_rat(theta));
            if (!x) throw InternalInconsistency("unit certificate leaves the span of T");
            r = lcm_denominators(*x);
        }
        IntVec rtheta(theta.size());
        for (std::size_t i = 0; i < theta.size(); ++i) rtheta[i] = r * theta[i];
        auto w = integer_combination(gt, rtheta);
        if (!w) throw InternalInconsistency("unit order computation failed");
        std::map<int, Int>& inv = unit_inverse_[ui];
        for (auto& [col, coeff] : theta_coeff) inv[col] += r * coeff;
        inv[j] -= 1;
        for (std::size_t k = 0; k < t_.size(); ++k) {
            if ((*w)[k] != 0) inv[t_[k]] -= (*w)[k];
        }
        // sanity: the identity really evaluates to -a_j
        IntVec check(std::size_t(d), Int(0));
        for (auto& [col, coeff] : inv) {
            IntVec a = cfg.column(col);
            for (int i = 0; i < d; ++i) check[std::size_t(i)] += coeff * a[std::size_t(i)];
        }
        IntVec expect = cfg.column(j);
        for (int i = 0; i < d; ++i)
            if (check[std::size_t(i)] != -expect[std::size_t(i)])
                throw InternalInconsistency("unit inverse identity failed");
    }

    // the state lattice: T columns plus unit columns
    std::vector<int> lam_cols = t_;
    lam_cols.insert(lam_cols.end(), units_.begin(), units_.end());
    lambda_generators_ = IntMat(d, int(lam_cols.size()));
    for (int k = 0; k < int(lam_cols.size()); ++k)
        lambda_generators_.set_column(k, cfg.column(lam_cols[std::size_t(k)]));
    lambda_ = Lattice::from_generators(d, lambda_generators_);
    gamma_ = std::make_unique<QuotientGroup>(Lattice::from_generators(d, IntMat::identity(d)),
                                             lambda_);

    SpanProjector pl = make_projector(cfg, lam_cols);
    span_solver_ = pl.solver;
    span_rank_ = pl.span_rank;

    if (!remaining_.empty()) {
        int qdim = d - span_rank_;
        if (qdim == 0) throw InternalInconsistency("remaining generator inside the unit span");
        Polyhedron sys(qdim);
        for (int j : remaining_) {
            RatVec qj = project_mod_span(cfg.column_rat(j));
            sys.add_ge(qj, Rat(1));
        }
        auto phi = rational_point(sys);
        if (!phi)
            throw InternalInconsistency("no positive covector on the localized generators");
        phi_ = *phi;
        for (int j : remaining_) phi_gen_.push_back(dot(phi_, project_mod_span(cfg.column_rat(j))));
    }
}

RatVec LocalizedMonoid::project_mod_span(const RatVec& x) const {
    if (span_rank_ == cfg_->dim()) return RatVec{};
    auto y = solve(span_solver_, x);
    if (!y) throw InternalInconsistency("localized monoid projector failed");
    return RatVec(y->begin() + span_rank_, y->end());
}

std::optional<std::map<int, Int>> LocalizedMonoid::decompose_in_lambda(const IntVec& rho) const {
    auto c = integer_combination(lambda_generators_, rho);
    if (!c) return std::nullopt;
    std::map<int, Int> out;
    std::size_t nt = t_.size();
    for (std::size_t k = 0; k < nt; ++k)
        if ((*c)[k] != 0) out[t_[k]] += (*c)[k];
    for (std::size_t ui = 0; ui < units_.size(); ++ui) {
        Int z = (*c)[nt + ui];
        if (z == 0) continue;
        if (z > 0) {
            out[units_[ui]] += z;
        } else {
            for (const auto& [col, coeff] : unit_inverse_[ui]) out[col] += (-z) * coeff;
        }
    }
    return out;
}

std::optional<std::map<int, Int>> LocalizedMonoid::member_witness(const IntVec& gamma,
                                                                  long budget) const {
    RatVec g = to_rat(gamma);
    IntVec start = gamma_->project(g);
    IntVec target = gamma_->zero_key();

    struct Node {
        IntVec parent;
        int gen = -1;  // index into remaining_
    };
    std::map<IntVec, Node> seen;
    std::map<IntVec, Rat> level;
    std::deque<IntVec> queue;
    seen[start] = Node{};
    level[start] = remaining_.empty() ? Rat(0) : dot(phi_, project_mod_span(g));
    if (!remaining_.empty() && level[start] < 0) return std::nullopt;
    queue.push_back(start);

    std::vector<IntVec> gen_key;
    for (int j : remaining_) gen_key.push_back(gamma_->project(cfg_->column_rat(j)));

    const long node_cap = budget * 1024 + 4096;
    long pops = 0;
    bool found = (start == target);
    while (!queue.empty() && !found) {
        IntVec key = queue.front();
        queue.pop_front();
        if (++pops > node_cap) throw BudgetExceeded("localized membership search budget hit");
        Rat base = level[key];
        for (std::size_t gi = 0; gi < remaining_.size(); ++gi) {
            Rat child_level = base - phi_gen_[gi];
            if (child_level < 0) continue;
            IntVec child = gamma_->add(key, gamma_->negate(gen_key[gi]));
            if (seen.count(child)) continue;
            seen[child] = Node{key, int(gi)};
            level[child] = child_level;
            if (child == target) {
                found = true;
                break;
            }
            queue.push_back(child);
        }
    }
    if (!found && !(start == target)) return std::nullopt;

    // path coefficients
    std::map<int, Int> coeffs;
    IntVec cur = target;
    IntVec used_sum(gamma.size(), Int(0));
    while (!(cur == start)) {
        const Node& node = seen[cur];
        int j = remaining_[std::size_t(node.gen)];
        coeffs[j] += 1;
        IntVec a = cfg_->column(j);
        for (std::size_t i = 0; i < used_sum.size(); ++i) used_sum[i] += a[i];
        cur = node.parent;
    }
    IntVec rho(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) rho[i] = gamma[i] - used_sum[i];
    auto lam = decompose_in_lambda(rho);
    if (!lam) throw InternalInconsistency("localized membership residual not in the state lattice");
    for (auto& [col, c] : *lam) coeffs[col] += c;

    // verify the witness exactly
    IntVec total(gamma.size(), Int(0));
    for (auto& [col, c] : coeffs) {
        if (c < 0 && !std::binary_search(t_.begin(), t_.end(), col))
            throw InternalInconsistency("localized witness negative off T");
        IntVec a = cfg_->column(col);
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += c * a[i];
    }
    if (!(total == gamma)) throw InternalInconsistency("localized witness does not reproduce input");
    return coeffs;
}

bool LocalizedMonoid::contains(const IntVec& gamma, long budget) const {
    return member_witness(gamma, budget).has_value();
}

namespace {

std::vector<EClass> e_tau_impl(const Configuration& cfg, const Face& tau, const Parameter& beta,
                               const LocalizedMonoid& monoid, long budget) {
    const int d = cfg.dim();
    if (int(beta.size()) != d) throw std::invalid_argument("parameter dimension mismatch");
    SpanProjector proj = make_projector(cfg, tau.members);

    // x0 in span(tau) with beta - x0 in ZA, via q(beta) in q(ZA)
    RatVec x0;
    Lattice sz;  // ZA cap span(tau)
    if (proj.span_rank == d) {
        x0 = beta;
        sz = cfg.za();
    } else {
        int qdim = d - proj.span_rank;
        std::vector<RatVec> qgens;
        for (int i = 0; i < cfg.za().lattice_rank(); ++i)
            qgens.push_back(proj.project(to_rat(cfg.za().basis_vector(i))));
        RatVec qbeta = proj.project(beta);
        Int den = lcm_denominators(qbeta);
        for (const RatVec& v : qgens) den = lcm(den, lcm_denominators(v));
        IntMat gens(qdim, int(qgens.size()));
        for (int j = 0; j < int(qgens.size()); ++j)
            for (int i = 0; i < qdim; ++i)
                gens(i, j) = numerator(qgens[std::size_t(j)][std::size_t(i)] * Rat(den));
        auto tgt = IntVec(std::size_t(qdim));
        for (int i = 0; i < qdim; ++i)
            tgt[std::size_t(i)] = numerator(qbeta[std::size_t(i)] * Rat(den));
        auto comb = integer_combination(gens, tgt);
        if (!comb) return {};  // beta misses span(tau) + ZA entirely
        RatVec z(std::size_t(d), Rat(0));
        for (int i = 0; i < cfg.za().lattice_rank(); ++i) {
            IntVec b = cfg.za().basis_vector(i);
            for (int k = 0; k < d; ++k)
                z[std::size_t(k)] += Rat((*comb)[std::size_t(i)] * b[std::size_t(k)]);
        }
        x0 = vec_sub(beta, z);

        IntMat ker = integer_kernel(gens);
        std::vector<IntVec> sz_gens;
        for (int j = 0; j < ker.cols(); ++j) {
            IntVec v(std::size_t(d), Int(0));
            for (int i = 0; i < cfg.za().lattice_rank(); ++i) {
                IntVec b = cfg.za().basis_vector(i);
                for (int k = 0; k < d; ++k) v[std::size_t(k)] += ker(i, j) * b[std::size_t(k)];
            }
            sz_gens.push_back(std::move(v));
        }
        sz = Lattice::from_generators(d, sz_gens);
    }
    Lattice ztau = member_lattice(cfg, tau);
    QuotientGroup group(sz, ztau);

    std::vector<EClass> out;
    for (const IntVec& key : group.enumerate_keys()) {
        RatVec t = group.representative(key);
        RatVec rep = vec_add(x0, t);
        RatVec bp = vec_sub(beta, rep);
        if (!is_integer_vec(bp))
            throw InternalInconsistency("candidate class representative not integral");
        if (monoid.contains(to_int(bp), budget)) out.push_back(EClass{tau, rep, ztau});
    }
    std::sort(out.begin(), out.end(), eclass_less);
    return out;
}

}  // namespace

std::vector<EClass> e_tau(const Configuration& cfg, const Face& tau, const Parameter& beta,
                          long budget) {
    LocalizedMonoid monoid(cfg, tau.members);
    return e_tau_impl(cfg, tau, beta, monoid, budget);
}

EClass natural_map(const Configuration& cfg, const EClass& lambda, const Face& tau) {
    Lattice ztau = member_lattice(cfg, tau);
    if (int(lambda.rep.size()) != cfg.dim())
        throw std::invalid_argument("natural_map: dimension mismatch");
    if (!ztau.span_contains(lambda.rep))
        throw SpanMismatch("natural_map: representative outside the target face span");
    return EClass{tau, lambda.rep, ztau};
}

std::vector<Face> minface(const Configuration& cfg, const Parameter& beta, long budget) {
    std::vector<Face> faces = cone_faces(cfg);
    EtauEngine engine(cfg);
    engine.prepare(faces);
    std::vector<char> nonempty(faces.size(), 0);
    parallel_for(long(faces.size()), [&](long i) {
        nonempty[std::size_t(i)] = !engine.e_tau(faces[std::size_t(i)], beta, budget).empty();
    });
    std::vector<Face> out;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        if (!nonempty[i]) continue;
        bool minimal = true;
        for (std::size_t j = 0; j < faces.size(); ++j) {
            if (i == j || !nonempty[j]) continue;
            if (faces[j].members != faces[i].members &&
                std::includes(faces[i].members.begin(), faces[i].members.end(),
                              faces[j].members.begin(), faces[j].members.end()))
                minimal = false;
        }
        if (minimal) out.push_back(faces[i]);
    }
    std::sort(out.begin(), out.end(), face_less);
    return out;
}

Fingerprint fingerprint(const Configuration& cfg, const Parameter& beta, long budget) {
    std::vector<Face> faces = cone_faces(cfg);
    EtauEngine engine(cfg);
    engine.prepare(faces);
    Fingerprint fp;
    fp.entries.resize(faces.size());
    parallel_for(long(faces.size()), [&](long i) {
        fp.entries[std::size_t(i)] = {faces[std::size_t(i)],
                                      engine.e_tau(faces[std::size_t(i)], beta, budget)};
    });
    return fp;
}

std::vector<Face> fingerprint_diff(const Fingerprint& a, const Fingerprint& b) {
    std::vector<Face> diff;
    if (a.entries.size() != b.entries.size())
        throw std::invalid_argument("fingerprints over different configurations");
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto& [fa, ca] = a.entries[i];
        const auto& [fb, cb] = b.entries[i];
        if (!(fa == fb)) throw std::invalid_argument("fingerprints over different face lattices");
        bool same = ca.size() == cb.size();
        if (same) {
            for (const EClass& x : ca) {
                bool matched = false;
                for (const EClass& y : cb) matched = matched || eclass_equal(x, y);
                if (!matched) same = false;
            }
        }
        if (!same) diff.push_back(fa);
    }
    return diff;
}

bool fingerprint_equal(const Fingerprint& a, const Fingerprint& b) {
    return fingerprint_diff(a, b).empty();
}

std::vector<RatVec> exp_class_candidates(const Configuration& cfg, const Face& tau,
                                         const EClass& lambda, const Parameter& beta,
                                         const LocalizedMonoid& monoid, long budget) {
    const int d = cfg.dim(), n = cfg.npoints();
    RatVec diff = vec_sub(beta, lambda.rep);
    if (!is_integer_vec(diff))
        throw std::invalid_argument("exp_class_candidates: beta - lambda not integral");
    auto witness = monoid.member_witness(to_int(diff), budget);
    if (!witness)
        throw std::invalid_argument("exp_class_candidates: lambda is not in E_tau(beta)");

    // base vector: witness coefficients off the face, the class representative
    // rebased onto the vertex columns
    const std::vector<int>& vert_idx = tau.vertices;
    RatMat vert(d, int(vert_idx.size()));
    for (int k = 0; k < int(vert_idx.size()); ++k)
        for (int i = 0; i < d; ++i) vert(i, k) = Rat(cfg.matrix()(i, vert_idx[std::size_t(k)]));

    RatVec target = lambda.rep;
    RatVec v0(std::size_t(n), Rat(0));
    for (auto& [col, c] : *witness) {
        if (std::binary_search(tau.members.begin(), tau.members.end(), col)) {
            for (int i = 0; i < d; ++i) target[std::size_t(i)] += Rat(c * cfg.matrix()(i, col));
        } else {
            v0[std::size_t(col)] = Rat(c);
        }
    }
    if (!vert_idx.empty()) {
        auto c = solve(vert, target);
        if (!c) throw InternalInconsistency("exp_class_candidates: class leaves the face span");
        for (int k = 0; k < int(vert_idx.size()); ++k)
            v0[std::size_t(vert_idx[std::size_t(k)])] = (*c)[std::size_t(k)];
    } else if (!is_zero_vec(target)) {
        throw InternalInconsistency("exp_class_candidates: nonzero class on the empty face");
    }
    if (!(mul_rat(cfg.matrix(), v0) == beta))
        throw InternalInconsistency("exp_class_candidates: base vector misses beta");

    // one representative per class of Z(A cap tau) / sum of vertex columns
    QuotientGroup classes(member_lattice(cfg, tau), vertex_lattice(cfg, tau));
    IntMat member_cols(d, int(tau.members.size()));
    for (int k = 0; k < int(tau.members.size()); ++k)
        member_cols.set_column(k, cfg.column(tau.members[std::size_t(k)]));

    // integral relations m_j a_j in sum_I Z a_i, used to push non-vertex member
    // coefficients into N without changing the class
    std::map<int, Int> relation;
    for (int col : tau.members) {
        if (std::binary_search(vert_idx.begin(), vert_idx.end(), col)) continue;
        auto c = solve(vert, cfg.column_rat(col));
        if (!c) throw InternalInconsistency("member column escapes the vertex span");
        Int m = 1;
        for (const Rat& q : *c) {
            if (q < 0) throw InternalInconsistency("member column outside the simplex");
            m = lcm(m, denominator(q));
        }
        relation[col] = m;
    }

    std::vector<RatVec> out;
    for (const IntVec& key : classes.enumerate_keys()) {
        RatVec t = classes.representative(key);
        auto z = integer_combination(member_cols, to_int(t));
        if (!z) throw InternalInconsistency("class representative not in the member lattice");
        for (int k = 0; k < int(tau.members.size()); ++k) {
            int col = tau.members[std::size_t(k)];
            if (std::binary_search(vert_idx.begin(), vert_idx.end(), col)) continue;
            Int& zk = (*z)[std::size_t(k)];
            if (zk >= 0) continue;
            const Int& m = relation.at(col);
            Int steps = (-zk + m - 1) / m;
            zk += steps * m;
        }
        // kernel shift: z on the non-vertex members, balanced on the vertices
        RatVec shift(std::size_t(n), Rat(0));
        RatVec balance(std::size_t(d), Rat(0));
        for (int k = 0; k < int(tau.members.size()); ++k) {
            int col = tau.members[std::size_t(k)];
            if (std::binary_search(vert_idx.begin(), vert_idx.end(), col)) continue;
            shift[std::size_t(col)] = Rat((*z)[std::size_t(k)]);
            for (int i = 0; i < d; ++i)
                balance[std::size_t(i)] += Rat((*z)[std::size_t(k)] * cfg.matrix()(i, col));
        }
        if (!vert_idx.empty()) {
            auto b = solve(vert, balance);
            if (!b) throw InternalInconsistency("class shift leaves the face span");
            for (int k = 0; k < int(vert_idx.size()); ++k)
                shift[std::size_t(vert_idx[std::size_t(k)])] -= (*b)[std::size_t(k)];
        }
        out.push_back(vec_add(v0, shift));
    }
    if (Int(out.size()) != normalized_volume(cfg, tau))
        throw InternalInconsistency("exp_class_candidates produced a wrong class count");
    return out;
}

std::vector<RatVec> exp_class_candidates(const Configuration& cfg, const Face& tau,
                                         const EClass& lambda, const Parameter& beta,
                                         long budget) {
    LocalizedMonoid monoid(cfg, tau.members);
    return exp_class_candidates(cfg, tau, lambda, beta, monoid, budget);
}

const std::set<IntVec>& SemigroupTable::layer(int k) {
    while (int(layers_.size()) <= k) {
        const std::set<IntVec>& prev = layers_.back();
        std::set<IntVec> next;
        for (const IntVec& x : prev)
            for (int j = 0; j < cfg_->npoints(); ++j) {
                IntVec y = x;
                IntVec a = cfg_->column(j);
                for (std::size_t i = 0; i < y.size(); ++i) y[i] += a[i];
                next.insert(std::move(y));
            }
        layers_.push_back(std::move(next));
    }
    return layers_[std::size_t(k)];
}

bool SemigroupTable::contains(const IntVec& gamma) {
    Rat deg = cfg_->h_degree(to_rat(gamma));
    if (!is_integer(deg) || deg < 0) return false;
    int k = int(numerator(deg));
    return layer(k).count(gamma) > 0;
}

bool semigroup_member(const Configuration& cfg, const RatVec& gamma) {
    if (int(gamma.size()) != cfg.dim()) throw std::invalid_argument("dimension mismatch");
    if (!is_integer_vec(gamma)) return false;
    SemigroupTable table(cfg);
    return table.contains(to_int(gamma));
}

const LocalizedMonoid& EtauEngine::monoid_for(const std::vector<int>& members) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(members);
    if (it == cache_.end())
        it = cache_.emplace(members, std::make_unique<LocalizedMonoid>(*cfg_, members)).first;
    return *it->second;
}

void EtauEngine::prepare(const std::vector<Face>& faces) const {
    for (const Face& f : faces) (void)monoid_for(f.members);
}

std::vector<EClass> EtauEngine::e_tau(const Face& tau, const Parameter& beta, long budget) const {
    return e_tau_impl(*cfg_, tau, beta, monoid_for(tau.members), budget);
}

}  // namespace gkz
