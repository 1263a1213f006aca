#pragma once

#include <optional>
#include <vector>

#include "gkz/errors.hpp"
#include "gkz/matrix.hpp"

namespace gkz {

struct UnboundedPolytope : Error { using Error::Error; };

// Rational polyhedron { x : a x <= b }, handled by exact Fourier-Motzkin
// elimination. Sized for desk-scale systems (few variables, tens of rows).
class Polyhedron {
public:
    Polyhedron(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    void add_le(const RatVec& c, const Rat& b);            // c.x <= b
    void add_ge(const RatVec& c, const Rat& b);            // c.x >= b
    void add_eq(const RatVec& c, const Rat& b);            // c.x == b

    const std::vector<RatVec>& rows() const { return rows_; }
    const RatVec& rhs() const { return rhs_; }

private:
    int dim_;
    std::vector<RatVec> rows_;
    RatVec rhs_;
};

bool rational_feasible(const Polyhedron& p);

// A feasible rational point, or nullopt. Deterministic choice.
std::optional<RatVec> rational_point(const Polyhedron& p);

// All integer points. Throws UnboundedPolytope when an enumeration node has an
// infinite integer interval, BudgetExceeded past max_points.
std::vector<IntVec> integer_points(const Polyhedron& p, long long max_points);

// True iff the polyhedron has trivial recession cone.
bool is_bounded(const Polyhedron& p);

// Exact rational minimum of c.x over the polyhedron; nullopt when the
// objective is unbounded below. Requires a nonempty polyhedron.
std::optional<Rat> lp_min(const Polyhedron& p, const RatVec& c);

}  // namespace gkz
