#include "nilpot/bch.hpp"

#include <stdexcept>

namespace nilpot {

std::shared_ptr<const BchContext> make_bch_context(HallBasis basis, StructureTable table)
{
    auto ctx = std::make_shared<BchContext>();
    ctx->basis = std::move(basis);
    ctx->table = std::move(table);
    ctx->table.basis = &ctx->basis; // rebind after move
    const HallBasis &b = ctx->basis;
    ctx->lifts.resize(b.dim());
    for (int i = 0; i < b.dim(); ++i) {
        const BasisElement &e = b.elements[i];
        if (e.degree == 1)
            ctx->lifts[i] = tensor_word(b.n, b.c, e.word);
        else
            ctx->lifts[i] = tensor_sub(tensor_mul(ctx->lifts[e.left], ctx->lifts[e.right]),
                                       tensor_mul(ctx->lifts[e.right], ctx->lifts[e.left]));
    }
    return ctx;
}

std::shared_ptr<const BchContext> make_bch_context(int n, int c, TableEngine engine)
{
    HallBasis basis = build_basis(n, c);
    StructureTable table = build_structure_table(basis, engine);
    return make_bch_context(std::move(basis), std::move(table));
}

TensorElement lift_to_tensor(const BchContext &ctx, const LieElement &u)
{
    if (u.basis != &ctx.basis)
        throw std::invalid_argument("lift_to_tensor: element from a different context");
    TensorElement t = tensor_zero(ctx.basis.n, ctx.basis.c);
    for (const auto &[i, q] : u.terms)
        t = tensor_add(t, tensor_scale(q, ctx.lifts[i]));
    return t;
}

LieElement dynkin_to_lie(const BchContext &ctx, const TensorElement &t)
{
    if (t.scalar_part() != 0)
        throw std::invalid_argument("dynkin_to_lie: nonzero scalar part");
    const HallBasis &b = ctx.basis;
    LieElement out = lie_zero(b);
    for (const auto &[w, q] : t.terms) {
        // word g1..gm -> [g1,g2,...,gm] / m, left-normed
        LieElement e = lie_generator(b, w[0] - '0');
        for (size_t k = 1; k < w.size(); ++k)
            e = bracket(ctx.table, e, lie_generator(b, w[k] - '0'));
        out = add(out, scale(q / rat(long(w.size())), e));
    }
    return out;
}

LieElement bch(const BchContext &ctx, const LieElement &u, const LieElement &v)
{
    if (u.basis != &ctx.basis || v.basis != &ctx.basis)
        throw std::invalid_argument("bch: context mismatch");
    TensorElement prod = tensor_mul(texp(lift_to_tensor(ctx, u)), texp(lift_to_tensor(ctx, v)));
    return dynkin_to_lie(ctx, tlog(prod));
}

LieElement gcomm(const BchContext &ctx, const LieElement &u, const LieElement &v)
{
    return bch(ctx, bch(ctx, bch(ctx, negate(u), negate(v)), u), v);
}

LieElement gpow(const BchContext &ctx, const LieElement &u, const Int &k)
{
    (void)ctx;
    return scale(rat(k), u);
}

std::shared_ptr<const GroupLaw> make_group_law(int c)
{
    auto law = std::make_shared<GroupLaw>();
    law->free2 = make_bch_context(2, c, TableEngine::SerialRewrite);
    const BchContext &ctx = *law->free2;
    LieElement x = lie_generator(ctx.basis, 1);
    LieElement y = lie_generator(ctx.basis, 2);
    law->bch_series = bch(ctx, x, y);
    law->gcomm_series = gcomm(ctx, x, y);
    return law;
}

LieElement evaluate_series(const GroupLaw &law, const LieElement &series, const LieElement &u,
                           const LieElement &v, const BracketFn &br)
{
    const HallBasis &b2 = law.free2->basis;
    std::vector<LieElement> vals(b2.dim());
    std::vector<bool> have(b2.dim(), false);
    LieElement out{u.basis, {}};
    for (const auto &[i, q] : series.terms) {
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int k = stack.back();
            if (have[k]) {
                stack.pop_back();
                continue;
            }
            const BasisElement &e = b2.elements[k];
            if (e.degree == 1) {
                vals[k] = e.word[0] == '1' ? u : v;
                have[k] = true;
                stack.pop_back();
            } else if (have[e.left] && have[e.right]) {
                vals[k] = br(vals[e.left], vals[e.right]);
                have[k] = true;
                stack.pop_back();
            } else {
                if (!have[e.left])
                    stack.push_back(e.left);
                if (!have[e.right])
                    stack.push_back(e.right);
            }
        }
        out = add(out, scale(q, vals[i]));
    }
    return out;
}

} // namespace nilpot
