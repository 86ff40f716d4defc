#pragma once

#include "nilpot/bch.hpp"
#include "nilpot/qlinalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

namespace nilpot {

// Row space in reduced echelon form over basis coordinates: rows ordered by
// pivot (= leading index in the (degree, lex) basis order), leading
// coefficient 1, pivot coordinates cleared from the other rows.
struct Echelon {
    std::vector<LieElement> rows;

    int rank() const { return int(rows.size()); }
    std::vector<int> pivots() const;
    bool contains(const LieElement &v) const;
};

// v minus its projection onto the row space; zero iff v is in the span.
LieElement echelon_reduce(const Echelon &e, LieElement v);
// Returns true when the rank grew.
bool echelon_insert(Echelon &e, LieElement v);
bool same_row_space(const Echelon &a, const Echelon &b);

struct IdealSubspace {
    std::shared_ptr<const BchContext> ctx;
    Echelon span;

    int rank() const { return span.rank(); }
};

// Smallest subspace containing the generators and closed under bracketing
// with every basis element.
IdealSubspace ideal_closure(std::shared_ptr<const BchContext> ctx,
                            const std::vector<LieElement> &generators);

// Smallest ideal containing every substitution instance of the laws (which
// may live over a different rank) and closed under the endomorphism test-set:
// generator -> 0, another generator, sum of two distinct generators, or a
// basis element of degree >= 2, iterated to a fixpoint.
IdealSubspace verbal_closure(std::shared_ptr<const BchContext> ctx,
                             const std::vector<LieElement> &laws);

// True iff the verbal closure of the ideal's rows has the same row space.
bool is_fully_invariant(const IdealSubspace &ideal);

// Candidate images used by the verbal-closure test-set for a given context.
std::vector<LieElement> substitution_test_set(const BchContext &ctx);

struct QuotientAlgebra {
    std::shared_ptr<const BchContext> ctx;
    IdealSubspace ideal;
    std::vector<int> adapted;           // non-pivot ambient indices, ascending
    std::vector<int> adapted_pos;       // ambient index -> dense position, -1 for pivots
    std::shared_ptr<const GroupLaw> law;

    int dim() const { return int(adapted.size()); }
    int class_bound() const { return ctx->basis.c; }

    // Representatives are ambient LieElements supported on adapted indices.
    LieElement reduce(const LieElement &v) const;
    LieElement bracket_q(const LieElement &u, const LieElement &v) const;
    LieElement generator_image(int g) const; // reduce(x_g)

    std::vector<Rat> dense(const LieElement &v) const;
    LieElement from_dense(const std::vector<Rat> &coords) const;
};

QuotientAlgebra make_quotient(std::shared_ptr<const BchContext> ctx, IdealSubspace ideal);

// gamma_1 > gamma_2 > ... > gamma_{c+1} = 0 of the quotient, as echelon
// subspaces in quotient coordinates. Works for non-graded quotients.
std::vector<Echelon> lcs(const QuotientAlgebra &q);

struct GradedAlgebra {
    std::vector<std::vector<LieElement>> reps; // [t-1]: representatives of gamma_t/gamma_{t+1}
    // ((i,a),(j,b)) -> coordinates of [rep_a^i, rep_b^j] over reps[i+j-1]
    std::map<std::tuple<int, int, int, int>, std::vector<Rat>> sc;

    std::vector<int> dims() const;
};

// Associated graded algebra by the lower central series, bracket induced by
// the Lie bracket (grad^(l)).
GradedAlgebra associated_graded(const QuotientAlgebra &q);

// Same components, bracket induced by the group commutator of (L, o)
// (grad^(g) of the full BCH group).
GradedAlgebra group_graded(const QuotientAlgebra &q);

// Coordinates of target over basis_vecs modulo the given row space; nullopt
// when target is not in the span.
std::optional<std::vector<Rat>> express_in(const std::vector<LieElement> &basis_vecs,
                                           const Echelon &modulo, const LieElement &target,
                                           const HallBasis &basis);

// A finite-dimensional Lie algebra given by its multiplication table; the
// common codomain for generator-defined homomorphisms.
struct TableAlgebra {
    int dim = 0;
    std::vector<std::vector<SparseVec>> table; // [i][j] for i < j; antisymmetry on lookup

    SparseVec bracket_units(int i, int j) const;
    SparseVec bracket(const SparseVec &u, const SparseVec &v) const;
};

TableAlgebra as_table(const QuotientAlgebra &q);
TableAlgebra as_table(const GradedAlgebra &g);

struct HomResult {
    bool well_defined = false;
    bool injective = false;
    bool surjective = false;
    QMatrix matrix; // codomain.dim x domain.dim, only meaningful when well_defined
    bool is_isomorphism() const { return well_defined && injective && surjective; }
};

// The Lie-algebra map determined by generator images, checked for
// well-definedness on the domain's ideal rows.
HomResult hom_from_generators(const QuotientAlgebra &domain, const TableAlgebra &codomain,
                              const std::vector<SparseVec> &images);

// Evaluate an element of a free algebra in the codomain with the given
// generator images (the homomorphism extension).
SparseVec evaluate_in_table(const TableAlgebra &codomain, const std::vector<SparseVec> &images,
                            const LieElement &u);

// Span closure of gens under the quotient bracket.
Echelon generated_subalgebra(const QuotientAlgebra &q, const std::vector<LieElement> &gens);

} // namespace nilpot
