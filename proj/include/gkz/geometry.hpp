#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkz/lattice.hpp"
#include "gkz/matrix.hpp"

namespace gkz {

// A face of a regular triangulation or of the cone spanned by the columns.
// members lists every column index lying in the face; vertices lists the
// simplex vertices (triangulation) or extreme-ray generators (cone). Indices
// are 0-based internally. The empty face (members = {}) stands for {0}.
struct Face {
    enum class Kind { Triangulation, Cone };

    std::vector<int> members;   // sorted
    std::vector<int> vertices;  // sorted, subset of members
    int span_dim = 0;           // dimension of the linear span of the members
    Kind kind = Kind::Triangulation;

    bool empty() const { return members.empty(); }
    bool operator==(const Face& o) const { return members == o.members; }
};

// Canonical order: by span dimension, then members lexicographically.
bool face_less(const Face& a, const Face& b);

std::string face_label(const Face& f);  // "{1,3}" with 1-based indices

// The point configuration: d x n integer matrix of rank d whose columns lie on
// a common hyperplane h.a_j = 1 off the origin.
class Configuration {
public:
    static Configuration make(const IntMat& a);

    int dim() const { return a_.rows(); }
    int npoints() const { return a_.cols(); }
    const IntMat& matrix() const { return a_; }
    IntVec column(int j) const { return a_.column(j); }
    RatVec column_rat(int j) const { return to_rat(a_.column(j)); }
    const RatVec& homogeneity() const { return h_; }
    const Lattice& za() const { return za_; }

    Rat h_degree(const RatVec& gamma) const { return dot(h_, gamma); }

private:
    Configuration() = default;
    IntMat a_;
    RatVec h_;
    Lattice za_;
};

inline Configuration make_configuration(const IntMat& a) { return Configuration::make(a); }

struct Triangulation {
    RatVec weight;
    bool perturbed = false;
    std::vector<Face> maximal_cells;  // canonical order
    std::vector<Face> face_poset;     // all faces incl. the empty face, canonical order
};

struct TriangulationOptions {
    bool perturb = false;   // refine non-generic w by a symbolic lexicographic tiebreaker
    bool parallel = true;   // run the candidate-cell scan across workers
};

// The regular triangulation determined by w. Throws NonGenericWeight when the
// lifted lower hull is not simplicial, unless options.perturb is set.
Triangulation regular_triangulation(const Configuration& cfg, const RatVec& w,
                                    const TriangulationOptions& options = {});

bool is_generic_weight(const Configuration& cfg, const RatVec& w);

// All faces of the cone spanned by the columns, including {0} and the cone itself.
std::vector<Face> cone_faces(const Configuration& cfg);

// The group index [Z(A cap tau) : sum over vertices of Z a_i]; vol({}) = 1.
Int normalized_volume(const Configuration& cfg, const Face& tau);

// One-codimensional faces of tau within the triangulation poset.
// facets(vertex) = { empty face }, facets(empty) = {}.
std::vector<Face> facets(const Face& tau, const Triangulation& t);

// --- shared geometric helpers ---

// Z(A cap tau): lattice generated by the member columns.
Lattice member_lattice(const Configuration& cfg, const Face& tau);
// Lattice generated by the vertex columns.
Lattice vertex_lattice(const Configuration& cfg, const Face& tau);
// Lattice generated by an arbitrary column subset.
Lattice column_lattice(const Configuration& cfg, const std::vector<int>& columns);

// a_j in conv(a_i : i in vertices)? Vertices must be independent columns.
bool simplex_contains(const Configuration& cfg, const std::vector<int>& vertices, int j);

// Face of the triangulation spanned by the given (independent) vertex columns,
// with members recomputed geometrically.
Face make_simplex_face(const Configuration& cfg, std::vector<int> vertices);

// Geometric intersection of two faces of a common simplex.
Face intersect_simplex_faces(const Configuration& cfg, const Face& a, const Face& b);

}  // namespace gkz
