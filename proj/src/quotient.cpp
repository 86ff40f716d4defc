#include "nilpot/quotient.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilpot {

std::vector<int> Echelon::pivots() const
{
    std::vector<int> p;
    p.reserve(rows.size());
    for (const auto &r : rows)
        p.push_back(r.leading_index());
    return p;
}

LieElement echelon_reduce(const Echelon &e, LieElement v)
{
    for (const auto &r : e.rows) {
        Rat c = v.coeff(r.leading_index());
        if (c != 0)
            v = sub(v, scale(c, r));
    }
    return v;
}

bool Echelon::contains(const LieElement &v) const { return echelon_reduce(*this, v).is_zero(); }

bool echelon_insert(Echelon &e, LieElement v)
{
    v = echelon_reduce(e, v);
    if (v.is_zero())
        return false;
    Rat lead = v.terms.front().second;
    if (lead != 1)
        v = scale(rat(1) / lead, v);
    int p = v.leading_index();
    auto it = std::lower_bound(e.rows.begin(), e.rows.end(), p,
                               [](const LieElement &r, int piv) { return r.leading_index() < piv; });
    it = e.rows.insert(it, std::move(v));
    const LieElement &nv = *it;
    for (auto &r : e.rows) {
        if (&r == &nv)
            continue;
        Rat c = r.coeff(p);
        if (c != 0)
            r = sub(r, scale(c, nv));
    }
    return true;
}

bool same_row_space(const Echelon &a, const Echelon &b)
{
    if (a.rank() != b.rank())
        return false;
    for (size_t i = 0; i < a.rows.size(); ++i)
        if (!(a.rows[i] == b.rows[i]))
            return false;
    return true;
}

IdealSubspace ideal_closure(std::shared_ptr<const BchContext> ctx,
                            const std::vector<LieElement> &generators)
{
    IdealSubspace ideal{ctx, {}};
    std::deque<LieElement> work(generators.begin(), generators.end());
    while (!work.empty()) {
        LieElement v = std::move(work.front());
        work.pop_front();
        if (!echelon_insert(ideal.span, v))
            continue;
        // re-close under bracketing with all basis elements
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto &row : std::vector<LieElement>(ideal.span.rows))
                for (int k = 0; k < ctx->basis.dim(); ++k) {
                    LieElement w = bracket(ctx->table, row, lie_basis_elem(ctx->basis, k));
                    if (!w.is_zero() && echelon_insert(ideal.span, w))
                        grew = true;
                }
        }
    }
    return ideal;
}

std::vector<LieElement> substitution_test_set(const BchContext &ctx)
{
    const HallBasis &b = ctx.basis;
    std::vector<LieElement> cands;
    cands.push_back(lie_zero(b));
    for (int g = 1; g <= b.n; ++g)
        cands.push_back(lie_generator(b, g));
    for (int g = 1; g <= b.n; ++g)
        for (int h = g + 1; h <= b.n; ++h)
            cands.push_back(add(lie_generator(b, g), lie_generator(b, h)));
    for (int i = b.degree_begin(2); i < b.dim(); ++i)
        cands.push_back(lie_basis_elem(b, i));
    return cands;
}

namespace {

// Enumerates tuples in C^k in lexicographic order, applying fn to each;
// fn returning false stops the enumeration.
template <typename F>
void for_each_tuple(int k, int base, F &&fn)
{
    std::vector<int> idx(k, 0);
    while (true) {
        if (!fn(idx))
            return;
        int pos = k - 1;
        while (pos >= 0 && ++idx[pos] == base) {
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0)
            return;
    }
}

bool laws_have_linear_part(const std::vector<LieElement> &laws)
{
    for (const auto &l : laws)
        for (const auto &[i, q] : l.terms)
            if (l.basis->degree_of(i) == 1)
                return true;
    return false;
}

} // namespace

IdealSubspace verbal_closure(std::shared_ptr<const BchContext> ctx,
                             const std::vector<LieElement> &laws)
{
    const HallBasis &b = ctx->basis;
    IdealSubspace ideal{ctx, {}};
    if (laws.empty())
        return ideal;

    // Every substitution instance of a law without linear part lies in
    // gamma_2; the closure can stop as soon as it reaches that cap.
    const bool linear = laws_have_linear_part(laws);
    const int cap_rank = linear ? b.dim() : b.dim() - b.degree_end(1);

    std::vector<LieElement> cands = substitution_test_set(*ctx);
    const int base = int(cands.size());

    auto adjoin = [&](const LieElement &v) {
        if (v.is_zero() || ideal.span.contains(v))
            return;
        IdealSubspace grown = ideal_closure(ctx, {v});
        for (const auto &r : ideal.span.rows)
            echelon_insert(grown.span, r);
        // ideal_closure of the union: re-close once more over the merged span
        ideal = ideal_closure(ctx, grown.span.rows);
    };

    // identity instances first: the laws themselves (when over the same rank)
    for (const auto &law : laws)
        if (law.basis->n <= b.n && law.basis == &b)
            adjoin(law);

    for (const auto &law : laws) {
        if (ideal.rank() >= cap_rank)
            break;
        const int k = law.basis->n;
        std::vector<LieElement> images(k, lie_zero(b));
        for_each_tuple(k, base, [&](const std::vector<int> &idx) {
            for (int j = 0; j < k; ++j)
                images[j] = cands[idx[j]];
            adjoin(substitute(ctx->table, images, law));
            return ideal.rank() < cap_rank;
        });
    }

    // close under the endomorphism test-set of the ambient algebra
    while (ideal.rank() < cap_rank) {
        bool grew = false;
        std::vector<LieElement> rows = ideal.span.rows;
        std::vector<LieElement> images(b.n, lie_zero(b));
        for_each_tuple(b.n, base, [&](const std::vector<int> &idx) {
            for (int j = 0; j < b.n; ++j)
                images[j] = cands[idx[j]];
            for (const auto &row : rows) {
                LieElement v = substitute(ctx->table, images, row);
                if (!ideal.span.contains(v)) {
                    adjoin(v);
                    grew = true;
                }
            }
            return ideal.rank() < cap_rank;
        });
        if (!grew)
            break;
    }
    return ideal;
}

bool is_fully_invariant(const IdealSubspace &ideal)
{
    IdealSubspace v = verbal_closure(ideal.ctx, ideal.span.rows);
    return same_row_space(v.span, ideal.span);
}

QuotientAlgebra make_quotient(std::shared_ptr<const BchContext> ctx, IdealSubspace ideal)
{
    QuotientAlgebra q;
    q.ctx = ctx;
    q.ideal = std::move(ideal);
    q.adapted_pos.assign(ctx->basis.dim(), -1);
    std::vector<bool> is_pivot(ctx->basis.dim(), false);
    for (int p : q.ideal.span.pivots())
        is_pivot[p] = true;
    for (int i = 0; i < ctx->basis.dim(); ++i)
        if (!is_pivot[i]) {
            q.adapted_pos[i] = int(q.adapted.size());
            q.adapted.push_back(i);
        }
    q.law = make_group_law(ctx->basis.c);
    return q;
}

LieElement QuotientAlgebra::reduce(const LieElement &v) const
{
    return echelon_reduce(ideal.span, v);
}

LieElement QuotientAlgebra::bracket_q(const LieElement &u, const LieElement &v) const
{
    return reduce(bracket(ctx->table, u, v));
}

LieElement QuotientAlgebra::generator_image(int g) const
{
    return reduce(lie_generator(ctx->basis, g));
}

std::vector<Rat> QuotientAlgebra::dense(const LieElement &v) const
{
    std::vector<Rat> out(adapted.size());
    for (const auto &[i, q] : v.terms) {
        if (adapted_pos[i] < 0)
            throw std::invalid_argument("dense: element not reduced");
        out[adapted_pos[i]] = q;
    }
    return out;
}

LieElement QuotientAlgebra::from_dense(const std::vector<Rat> &coords) const
{
    LieElement v = lie_zero(ctx->basis);
    for (size_t k = 0; k < coords.size(); ++k)
        if (coords[k] != 0)
            v.terms.emplace_back(adapted[k], coords[k]);
    return v;
}

std::vector<Echelon> lcs(const QuotientAlgebra &q)
{
    const int c = q.class_bound();
    std::vector<Echelon> chain;
    Echelon g1;
    for (int i : q.adapted)
        echelon_insert(g1, lie_basis_elem(q.ctx->basis, i));
    chain.push_back(std::move(g1));
    for (int t = 1; t <= c; ++t) {
        Echelon next;
        for (const auto &r : chain.back().rows)
            for (int i : q.adapted) {
                LieElement w = q.bracket_q(r, lie_basis_elem(q.ctx->basis, i));
                if (!w.is_zero())
                    echelon_insert(next, w);
            }
        chain.push_back(std::move(next));
    }
    if (!chain.back().rows.empty())
        throw std::logic_error("lcs: gamma_{c+1} nonzero in a class-c quotient");
    return chain;
}

std::vector<int> GradedAlgebra::dims() const
{
    std::vector<int> d;
    for (const auto &r : reps)
        d.push_back(int(r.size()));
    while (!d.empty() && d.back() == 0)
        d.pop_back();
    return d;
}

std::optional<std::vector<Rat>> express_in(const std::vector<LieElement> &basis_vecs,
                                           const Echelon &modulo, const LieElement &target,
                                           const HallBasis &basis)
{
    // Solve target = sum lambda_k basis_vecs[k] (mod modulo) by RREF on the
    // augmented column system.
    std::vector<LieElement> red;
    red.reserve(basis_vecs.size());
    for (const auto &v : basis_vecs)
        red.push_back(echelon_reduce(modulo, v));
    LieElement t = echelon_reduce(modulo, target);

    QMatrix m(basis.dim(), int(red.size()) + 1);
    for (size_t k = 0; k < red.size(); ++k)
        for (const auto &[i, c] : red[k].terms)
            m.at(i, int(k)) = c;
    for (const auto &[i, c] : t.terms)
        m.at(i, int(red.size())) = c;

    auto [r, piv] = rref(m);
    std::vector<Rat> sol(red.size());
    for (size_t k = 0; k < piv.size(); ++k) {
        if (piv[k] == int(red.size()))
            return std::nullopt; // inconsistent
        sol[piv[k]] = r.at(int(k), int(red.size()));
    }
    // uniqueness expected: representatives independent modulo the subspace
    if (int(piv.size()) != int(red.size()))
        throw std::logic_error("express_in: representatives are dependent");
    return sol;
}

namespace {

GradedAlgebra graded_core(const QuotientAlgebra &q, const BracketFn &br)
{
    std::vector<Echelon> chain = lcs(q);
    GradedAlgebra g;
    const int c = q.class_bound();
    g.reps.resize(c);
    for (int t = 1; t <= c; ++t) {
        std::vector<int> next_pivots = chain[t].pivots();
        for (const auto &row : chain[t - 1].rows) {
            bool in_next = std::binary_search(next_pivots.begin(), next_pivots.end(),
                                              row.leading_index());
            if (!in_next)
                g.reps[t - 1].push_back(row);
        }
    }
    for (int i = 1; i <= c; ++i)
        for (int j = i; j <= c; ++j) {
            if (i + j > c) {
                // bracket lands in gamma_{i+j} = 0
                continue;
            }
            for (size_t a = 0; a < g.reps[i - 1].size(); ++a)
                for (size_t b = 0; b < g.reps[j - 1].size(); ++b) {
                    LieElement w = br(g.reps[i - 1][a], g.reps[j - 1][b]);
                    auto coords = express_in(g.reps[i + j - 1], chain[i + j], w, q.ctx->basis);
                    if (!coords)
                        throw std::logic_error("graded bracket escaped its component");
                    g.sc[{i, int(a), j, int(b)}] = *coords;
                }
        }
    return g;
}

} // namespace

GradedAlgebra associated_graded(const QuotientAlgebra &q)
{
    return graded_core(q, [&](const LieElement &u, const LieElement &v) {
        return q.bracket_q(u, v);
    });
}

GradedAlgebra group_graded(const QuotientAlgebra &q)
{
    BracketFn br = [&](const LieElement &u, const LieElement &v) { return q.bracket_q(u, v); };
    return graded_core(q, [&, br](const LieElement &u, const LieElement &v) {
        return evaluate_series(*q.law, q.law->gcomm_series, u, v, br);
    });
}

SparseVec TableAlgebra::bracket_units(int i, int j) const
{
    if (i == j)
        return {};
    if (i < j)
        return table[i][j];
    SparseVec r = table[j][i];
    for (auto &[x, q] : r)
        q = -q;
    return r;
}

SparseVec TableAlgebra::bracket(const SparseVec &u, const SparseVec &v) const
{
    std::map<int, Rat> acc;
    for (const auto &[i, p] : u)
        for (const auto &[j, q] : v) {
            Rat pq = p * q;
            for (const auto &[x, c] : bracket_units(i, j)) {
                auto [it, ins] = acc.try_emplace(x, pq * c);
                if (!ins) {
                    it->second += pq * c;
                    if (it->second == 0)
                        acc.erase(it);
                }
            }
        }
    SparseVec out;
    out.reserve(acc.size());
    for (const auto &[i, q] : acc)
        out.emplace_back(i, q);
    return out;
}

TableAlgebra as_table(const QuotientAlgebra &q)
{
    TableAlgebra t;
    t.dim = q.dim();
    t.table.assign(t.dim, std::vector<SparseVec>(t.dim));
    for (int a = 0; a < t.dim; ++a)
        for (int b = a + 1; b < t.dim; ++b) {
            LieElement w = q.bracket_q(lie_basis_elem(q.ctx->basis, q.adapted[a]),
                                       lie_basis_elem(q.ctx->basis, q.adapted[b]));
            SparseVec sv;
            for (const auto &[i, c] : w.terms)
                sv.emplace_back(q.adapted_pos[i], c);
            t.table[a][b] = std::move(sv);
        }
    return t;
}

TableAlgebra as_table(const GradedAlgebra &g)
{
    std::vector<int> offset(g.reps.size() + 1, 0);
    for (size_t t = 0; t < g.reps.size(); ++t)
        offset[t + 1] = offset[t] + int(g.reps[t].size());
    TableAlgebra t;
    t.dim = offset.back();
    t.table.assign(t.dim, std::vector<SparseVec>(t.dim));
    for (const auto &[key, coords] : g.sc) {
        auto [i, a, j, b] = key;
        int u = offset[i - 1] + a;
        int v = offset[j - 1] + b;
        SparseVec sv;
        for (size_t k = 0; k < coords.size(); ++k)
            if (coords[k] != 0)
                sv.emplace_back(offset[i + j - 1] + int(k), coords[k]);
        if (u < v)
            t.table[u][v] = std::move(sv);
        else if (u > v) {
            for (auto &[x, c] : sv)
                c = -c;
            t.table[v][u] = std::move(sv);
        }
    }
    return t;
}

SparseVec evaluate_in_table(const TableAlgebra &codomain, const std::vector<SparseVec> &images,
                            const LieElement &u)
{
    const HallBasis &src = *u.basis;
    if (int(images.size()) != src.n)
        throw std::invalid_argument("evaluate_in_table: one image per generator required");
    std::vector<SparseVec> vals(src.dim());
    std::vector<bool> have(src.dim(), false);
    std::map<int, Rat> acc;
    for (const auto &[i, q] : u.terms) {
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int k = stack.back();
            if (have[k]) {
                stack.pop_back();
                continue;
            }
            const BasisElement &e = src.elements[k];
            if (e.degree == 1) {
                vals[k] = images[e.word[0] - '1'];
                have[k] = true;
                stack.pop_back();
            } else if (have[e.left] && have[e.right]) {
                vals[k] = codomain.bracket(vals[e.left], vals[e.right]);
                have[k] = true;
                stack.pop_back();
            } else {
                if (!have[e.left])
                    stack.push_back(e.left);
                if (!have[e.right])
                    stack.push_back(e.right);
            }
        }
        for (const auto &[x, c] : vals[i]) {
            auto [it, ins] = acc.try_emplace(x, q * c);
            if (!ins) {
                it->second += q * c;
                if (it->second == 0)
                    acc.erase(it);
            }
        }
    }
    SparseVec out;
    for (const auto &[x, c] : acc)
        out.emplace_back(x, c);
    return out;
}

HomResult hom_from_generators(const QuotientAlgebra &domain, const TableAlgebra &codomain,
                              const std::vector<SparseVec> &images)
{
    HomResult res;
    for (const auto &row : domain.ideal.span.rows)
        if (!evaluate_in_table(codomain, images, row).empty())
            return res; // not well defined
    res.well_defined = true;

    res.matrix = QMatrix(codomain.dim, domain.dim());
    for (int k = 0; k < domain.dim(); ++k) {
        LieElement e = lie_basis_elem(domain.ctx->basis, domain.adapted[k]);
        for (const auto &[x, c] : evaluate_in_table(codomain, images, e))
            res.matrix.at(x, k) = c;
    }
    int rank = int(rref(res.matrix).pivot_columns.size());
    res.injective = rank == domain.dim();
    res.surjective = rank == codomain.dim;
    return res;
}

Echelon generated_subalgebra(const QuotientAlgebra &q, const std::vector<LieElement> &gens)
{
    Echelon span;
    for (const auto &g : gens)
        echelon_insert(span, q.reduce(g));
    bool grew = true;
    int rounds = 0;
    while (grew) {
        if (++rounds > q.class_bound() + 1)
            throw std::logic_error("generated_subalgebra: fixpoint overran the class bound");
        grew = false;
        std::vector<LieElement> rows = span.rows;
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = a + 1; b < rows.size(); ++b) {
                LieElement w = q.bracket_q(rows[a], rows[b]);
                if (!w.is_zero() && echelon_insert(span, w))
                    grew = true;
            }
    }
    return span;
}

} // namespace nilpot
