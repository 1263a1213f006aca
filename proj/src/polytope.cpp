#include "gkz/polytope.hpp"

#include <algorithm>
#include <set>

namespace gkz {

void Polyhedron::add_le(const RatVec& c, const Rat& b) {
    if (int(c.size()) != dim_) throw std::invalid_argument("Polyhedron: row dimension mismatch");
    rows_.push_back(c);
    rhs_.push_back(b);
}

void Polyhedron::add_ge(const RatVec& c, const Rat& b) {
    RatVec n(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) n[i] = -c[i];
    add_le(n, -b);
}

void Polyhedron::add_eq(const RatVec& c, const Rat& b) {
    add_le(c, b);
    add_ge(c, b);
}

namespace {

struct System {
    // rows over variables 0..nvars-1, row.back() is the rhs
    std::vector<RatVec> rows;
    bool infeasible = false;
};

RatVec normalize_row(RatVec r) {
    // scale so the first nonzero coefficient has absolute value 1 (dedup aid)
    Rat lead = 0;
    for (const Rat& q : r)
        if (q != 0) { lead = abs(q); break; }
    if (lead != 0)
        for (Rat& q : r) q /= lead;
    return r;
}

void push_row(System& s, RatVec row, int nvars) {
    bool all_zero = true;
    for (int j = 0; j < nvars; ++j)
        if (row[std::size_t(j)] != 0) { all_zero = false; break; }
    if (all_zero) {
        if (row[std::size_t(nvars)] < 0) s.infeasible = true;
        return;
    }
    s.rows.push_back(normalize_row(std::move(row)));
}

// Eliminates variable k (0-based), producing a system over variables 0..k-1.
System eliminate(const System& s, int k) {
    System out;
    out.infeasible = s.infeasible;
    std::vector<const RatVec*> uppers, lowers;
    for (const RatVec& r : s.rows) {
        const Rat& ck = r[std::size_t(k)];
        if (ck > 0) uppers.push_back(&r);
        else if (ck < 0) lowers.push_back(&r);
        else {
            RatVec kept(std::size_t(k) + 1);
            for (int j = 0; j < k; ++j) kept[std::size_t(j)] = r[std::size_t(j)];
            kept[std::size_t(k)] = r[std::size_t(k) + 1];  // rhs moves up
            push_row(out, std::move(kept), k);
        }
    }
    for (const RatVec* u : uppers)
        for (const RatVec* l : lowers) {
            const Rat cu = (*u)[std::size_t(k)];
            const Rat cl = (*l)[std::size_t(k)];
            // combined row: cu * l' - cl * u' over coefficients and rhs alike
            RatVec row(std::size_t(k) + 1);
            for (int j = 0; j < k; ++j)
                row[std::size_t(j)] = cu * (*l)[std::size_t(j)] - cl * (*u)[std::size_t(j)];
            row[std::size_t(k)] = cu * (*l)[std::size_t(k) + 1] - cl * (*u)[std::size_t(k) + 1];
            push_row(out, std::move(row), k);
        }
    // dedup
    std::set<RatVec> seen;
    std::vector<RatVec> unique_rows;
    for (RatVec& r : out.rows)
        if (seen.insert(r).second) unique_rows.push_back(std::move(r));
    out.rows = std::move(unique_rows);
    return out;
}

// cascade[i] is a system over variables 0..i-1 (cascade[0] has only feasibility rows)
std::vector<System> build_cascade(const Polyhedron& p) {
    int n = p.dim();
    std::vector<System> cascade(std::size_t(n) + 1);
    System full;
    for (std::size_t i = 0; i < p.rows().size(); ++i) {
        RatVec row = p.rows()[i];
        row.push_back(p.rhs()[i]);
        push_row(full, std::move(row), n);
    }
    cascade[std::size_t(n)] = std::move(full);
    for (int k = n; k > 0; --k)
        cascade[std::size_t(k) - 1] = eliminate(cascade[std::size_t(k)], k - 1);
    return cascade;
}

struct Interval {
    std::optional<Rat> lo, hi;
    bool empty = false;
};

// Bounds for variable k given prefix values x_0..x_{k-1}.
Interval interval_at(const System& s, int k, const RatVec& prefix) {
    Interval iv;
    if (s.infeasible) { iv.empty = true; return iv; }
    for (const RatVec& r : s.rows) {
        const Rat& ck = r[std::size_t(k)];
        Rat rest = r[std::size_t(k) + 1];
        for (int j = 0; j < k; ++j) rest -= r[std::size_t(j)] * prefix[std::size_t(j)];
        if (ck > 0) {
            Rat b = rest / ck;
            if (!iv.hi || b < *iv.hi) iv.hi = b;
        } else if (ck < 0) {
            Rat b = rest / ck;
            if (!iv.lo || b > *iv.lo) iv.lo = b;
        } else if (rest < 0) {
            iv.empty = true;
            return iv;
        }
    }
    if (iv.lo && iv.hi && *iv.lo > *iv.hi) iv.empty = true;
    return iv;
}

Int ceil_rat(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int f = n / d;
    if (f * d < n) f += 1;
    return f;
}

Int floor_rat(const Rat& q) {
    Int n = numerator(q), d = denominator(q);
    Int f = n / d;
    if (f * d > n) f -= 1;
    return f;
}

}  // namespace

bool rational_feasible(const Polyhedron& p) {
    auto cascade = build_cascade(p);
    return !cascade[0].infeasible;
}

std::optional<RatVec> rational_point(const Polyhedron& p) {
    auto cascade = build_cascade(p);
    if (cascade[0].infeasible) return std::nullopt;
    RatVec x;
    for (int k = 0; k < p.dim(); ++k) {
        Interval iv = interval_at(cascade[std::size_t(k) + 1], k, x);
        if (iv.empty) return std::nullopt;  // cannot happen after FM, kept as a guard
        Rat v;
        if (iv.lo && iv.hi) v = (*iv.lo + *iv.hi) / 2;
        else if (iv.lo) v = *iv.lo + 1;
        else if (iv.hi) v = *iv.hi - 1;
        else v = 0;
        x.push_back(v);
    }
    return x;
}

std::vector<IntVec> integer_points(const Polyhedron& p, long long max_points) {
    auto cascade = build_cascade(p);
    std::vector<IntVec> out;
    if (cascade[0].infeasible) return out;
    int n = p.dim();
    if (n == 0) {
        out.push_back(IntVec{});
        return out;
    }
    RatVec prefix;
    auto point = IntVec(std::size_t(n));
    long long visited = 0;

    auto rec = [&](auto&& self, int k) -> void {
        Interval iv = interval_at(cascade[std::size_t(k) + 1], k, prefix);
        if (iv.empty) return;
        if (!iv.lo || !iv.hi)
            throw UnboundedPolytope("integer_points: unbounded direction in enumeration");
        Int lo = ceil_rat(*iv.lo), hi = floor_rat(*iv.hi);
        for (Int v = lo; v <= hi; ++v) {
            if (++visited > max_points * 4 + 64)
                throw BudgetExceeded("integer_points: node budget exceeded");
            point[std::size_t(k)] = v;
            prefix.push_back(Rat(v));
            if (k + 1 == n) {
                out.push_back(point);
                if (static_cast<long long>(out.size()) > max_points)
                    throw BudgetExceeded("integer_points: point budget exceeded");
            } else {
                self(self, k + 1);
            }
            prefix.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Rat> lp_min(const Polyhedron& p, const RatVec& c) {
    // objective as an extra leading variable s with s >= c.x; the projection
    // of the lifted polyhedron onto s is [min, infinity)
    Polyhedron lifted(p.dim() + 1);
    for (std::size_t i = 0; i < p.rows().size(); ++i) {
        RatVec row(std::size_t(p.dim()) + 1, Rat(0));
        for (int j = 0; j < p.dim(); ++j) row[std::size_t(j) + 1] = p.rows()[i][std::size_t(j)];
        lifted.add_le(row, p.rhs()[i]);
    }
    RatVec obj(std::size_t(p.dim()) + 1, Rat(0));
    obj[0] = -1;
    for (int j = 0; j < p.dim(); ++j) obj[std::size_t(j) + 1] = c[std::size_t(j)];
    lifted.add_le(obj, Rat(0));  // c.x <= s

    auto cascade = build_cascade(lifted);
    if (cascade[0].infeasible) throw std::invalid_argument("lp_min: empty polyhedron");
    Interval iv = interval_at(cascade[1], 0, RatVec{});
    if (iv.empty) throw std::invalid_argument("lp_min: empty polyhedron");
    if (!iv.lo) return std::nullopt;
    return *iv.lo;
}

bool is_bounded(const Polyhedron& p) {
    // bounded iff the recession cone { a x <= 0 } is {0}
    Polyhedron rec(p.dim());
    for (std::size_t i = 0; i < p.rows().size(); ++i) rec.add_le(p.rows()[i], Rat(0));
    auto cascade = build_cascade(rec);
    // walk the zero point; any open interval signals a recession direction
    RatVec prefix;
    auto walk = [&](auto&& self, int k) -> bool {
        if (k == p.dim()) return true;
        Interval iv = interval_at(cascade[std::size_t(k) + 1], k, prefix);
        if (iv.empty) throw InternalInconsistency("recession cone lost the origin");
        if (!iv.lo || !iv.hi || *iv.lo < 0 || *iv.hi > 0) return false;
        prefix.push_back(Rat(0));
        bool b = self(self, k + 1);
        prefix.pop_back();
        return b;
    };
    return walk(walk, 0);
}

}  // namespace gkz
