#pragma once

#include "nilpot/structure.hpp"
#include "nilpot/tensor.hpp"

#include <functional>
#include <memory>

namespace nilpot {

// Free nilpotent algebra with its multiplication table and the lift of each
// basis element into the truncated tensor algebra (bracket -> ab - ba).
struct BchContext {
    HallBasis basis;
    StructureTable table;
    std::vector<TensorElement> lifts; // one per basis element

    int dim() const { return basis.dim(); }
};

std::shared_ptr<const BchContext> make_bch_context(int n, int c,
                                                   TableEngine engine = TableEngine::Auto);
std::shared_ptr<const BchContext> make_bch_context(HallBasis basis, StructureTable table);

TensorElement lift_to_tensor(const BchContext &ctx, const LieElement &u);

// Dynkin idempotent applied degreewise: each word g1..gm contributes
// [g1,...,gm]/m (left-normed), re-expanded in the Hall basis. Inverts lift on
// Lie elements. Requires zero scalar part.
LieElement dynkin_to_lie(const BchContext &ctx, const TensorElement &t);

// u o v = dynkin_to_lie(tlog(texp(lift u) texp(lift v))). Group law of (L, o).
LieElement bch(const BchContext &ctx, const LieElement &u, const LieElement &v);

// Group commutator (-u) o (-v) o u o v, by composing bch.
LieElement gcomm(const BchContext &ctx, const LieElement &u, const LieElement &v);

// Integer powers in (L, o): the one-parameter subgroup gives k*u.
LieElement gpow(const BchContext &ctx, const LieElement &u, const Int &k);

// The universal BCH and group-commutator series, as elements of L_{2,c} in
// the generators X=x1, Y=x2. Derived from texp/tlog, never from a hard-coded
// coefficient table. Evaluating their bracketing trees over any class-<=c
// bracket reproduces the group law there.
struct GroupLaw {
    std::shared_ptr<const BchContext> free2; // rank-2 context of the same class
    LieElement bch_series;
    LieElement gcomm_series;
};

std::shared_ptr<const GroupLaw> make_group_law(int c);

// Evaluate a series from law.free2 with X -> u, Y -> v under an arbitrary
// bilinear bracket (e.g. a quotient algebra's reduced bracket).
using BracketFn = std::function<LieElement(const LieElement &, const LieElement &)>;

LieElement evaluate_series(const GroupLaw &law, const LieElement &series, const LieElement &u,
                           const LieElement &v, const BracketFn &br);

} // namespace nilpot
